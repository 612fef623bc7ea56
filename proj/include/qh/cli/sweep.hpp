#pragma once

// Parameter grids: each axis is a list "a,b,c" or an inclusive range
// "start:stop:step" of exact rationals. Points are ordered lexicographically
// with sigma outermost and q innermost.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qh/cli/report.hpp"

namespace qh::cli {

/// Empty or all-blank text gives an empty axis. Throws ErrorKind::Parse.
std::vector<Rational> parse_axis(std::string_view spec);

struct Grid {
    // sigma, tau, theta, eta, q
    std::array<std::vector<Rational>, 5> axes;

    std::size_t size() const;
    QHParams<Rational> point(std::size_t index) const;
};

struct SweepRow {
    nlohmann::ordered_json params;
    std::optional<ClassificationReport> report;
    std::string error;  // "kind: message" when the point failed
};

/// Evaluates every grid point; rows come back in grid order whatever the
/// thread count. threads = 0 picks the hardware concurrency.
template <Field T>
std::vector<SweepRow> run_sweep(const Grid& grid, std::size_t n_max, unsigned threads = 0);

}  // namespace qh::cli
