#pragma once

#include <stdexcept>
#include <string>

namespace qh {

enum class ErrorKind {
    Parse,       // malformed literal, flag or config line
    Range,       // parameter outside its admissible range (sigma < 0, t <= 0, ...)
    Regime,      // operation requires a regime the parameters are not in
    Hypothesis,  // closed form requested for a point that violates its hypothesis
    Pole,        // division by zero, singular matrix, non-finite float
    Irrational,  // exact mode needs a square root that is not rational
};

/// Exit status used by the command-line front end for each error kind.
constexpr int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Parse: return 2;
        case ErrorKind::Range: return 3;
        case ErrorKind::Irrational: return 3;
        case ErrorKind::Regime: return 4;
        case ErrorKind::Hypothesis: return 4;
        case ErrorKind::Pole: return 5;
    }
    return 1;
}

constexpr const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Range: return "range";
        case ErrorKind::Regime: return "regime";
        case ErrorKind::Hypothesis: return "hypothesis";
        case ErrorKind::Pole: return "pole";
        case ErrorKind::Irrational: return "irrational";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace qh
