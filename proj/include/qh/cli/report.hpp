#pragma once

// Classification reports and their serialized forms.

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qh/closed_forms.hpp"

namespace qh::cli {

enum class KnownProcess { QWiener, Poisson, GeneralizedChebyshevSupported };

std::string_view to_string(KnownProcess k);

struct ClassificationReport {
    nlohmann::ordered_json params;  // scalars as "p/q" strings (exact) or numbers (float)
    Mode mode = Mode::Exact;
    Regime regime = Regime::StrictAdmissible;
    SpecialCase special_case = SpecialCase::None;
    bool favard_ok = false;
    std::optional<std::size_t> favard_first_failure;
    bool bounded = false;
    std::string determinacy = "unknown";  // "determinate" | "unknown" | "n/a" (Favard fails)
    double sup_b = 0.0;
    double sup_c_hat = 0.0;
    nlohmann::ordered_json fixed_point;  // null when absent
    nlohmann::ordered_json chi_limit;    // null when absent
    std::optional<KnownProcess> known_process;
    std::vector<std::string> notes;
};

/// Scalar as JSON: "p/q" for rationals, a number for finite doubles.
nlohmann::ordered_json scalar_json(const Rational& x);
nlohmann::ordered_json scalar_json(double x);

template <Field T>
nlohmann::ordered_json params_json(const QHParams<T>& p) {
    return {{"sigma", scalar_json(p.sigma)},
            {"tau", scalar_json(p.tau)},
            {"theta", scalar_json(p.theta)},
            {"eta", scalar_json(p.eta)},
            {"q", scalar_json(p.q)}};
}

template <Field T>
std::optional<KnownProcess> known_process(const QHParams<T>& p, SpecialCase c, bool favard_ok);

/// Throws qh::Error for out-of-range parameters; other failures along the way
/// (poles in the oscillatory band, irrational roots) become notes.
template <Field T>
ClassificationReport classify(const QHParams<T>& p, std::size_t n_max);

nlohmann::ordered_json to_json(const ClassificationReport& r);

/// CSV header and row; params are flattened to the five named columns.
std::string csv_header();
std::string csv_row(const ClassificationReport& r);
std::string csv_error_row(const nlohmann::ordered_json& params, const std::string& error);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string& s);

/// JSON value rendered as a bare CSV cell (strings unquoted, null empty).
std::string csv_cell(const nlohmann::ordered_json& v);

}  // namespace qh::cli
