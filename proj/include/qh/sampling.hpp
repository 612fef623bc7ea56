#pragma once

// Deterministic pseudo-random rational parameter points. Draws come from
// std::mt19937_64 reduced by plain modulo, so a seed gives the same points on
// every platform and standard library.

#include <cstdint>
#include <random>

#include "qh/closed_forms.hpp"

namespace qh {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    /// Uniform integer in [lo, hi].
    long integer(long lo, long hi);

    /// Rational with a small denominator in [lo, hi].
    Rational rational(const Rational& lo, const Rational& hi);

    /// sigma, tau in [0, 1], theta, eta in [-2, 2], -1 < q < 1 - 2 sqrt(sigma tau).
    QHParams<Rational> strict_admissible();

    /// A point satisfying the hypothesis of c (c != None). BoundaryQ draws
    /// sigma tau from {1/4, 1/9, 1/16}.
    QHParams<Rational> for_case(SpecialCase c);

    /// Strictly increasing 0 < s < t < u.
    struct Times {
        Rational s, t, u;
    };
    Times times();

private:
    std::mt19937_64 rng_;
};

}  // namespace qh
