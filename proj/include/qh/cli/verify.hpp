#pragma once

// Cross-validation suites run by `verify`. Each suite draws deterministic
// rational parameter points from the seed and checks one family of
// identities, collecting counts and the first counterexample.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qh::cli {

/// Deliberate corruption used to confirm the suites can fail.
enum class Fault {
    None,
    PerturbBeta2,  // beta_2 <- 2 in every reconstructed bundle
    PerturbChi2,   // chi_2 <- chi_2 + 1 in every solved table
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    std::size_t n_max = 32;
    std::size_t points = 20;  // per suite (per case for closed-forms)
    Fault fault = Fault::None;
};

struct SuiteResult {
    std::string name;
    std::size_t passed = 0;
    std::size_t total = 0;
    std::optional<std::string> first_counterexample;
    std::optional<std::string> max_residual;  // exact text, when the suite measures one

    bool ok() const { return passed == total; }
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"closed-forms", "residuals", "favard", "symmetry",
                                                "appendix"};
    return names;
}

/// name is one of suite_names() or "all". Throws ErrorKind::Parse otherwise.
std::vector<SuiteResult> run_verify(const std::string& name, const VerifyOptions& opt);

void print_results(const std::vector<SuiteResult>& results, std::ostream& out);

}  // namespace qh::cli
