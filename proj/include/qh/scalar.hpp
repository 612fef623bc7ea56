#pragma once

// Arithmetic modes. Every numeric routine in the library is a template over
// a field type T, instantiated for exactly two types:
//
//   Rational  - GMP arbitrary-precision rational, all ring operations exact
//   double    - IEEE binary64
//
// The helpers in this header give both types a uniform surface (square
// roots, sign tests, parsing, printing) so the algorithms never branch on
// the mode themselves.

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <optional>
#include <string>
#include <string_view>

#include "qh/errors.hpp"

namespace qh {

using Rational = mpq_class;

template <class T>
concept Field = std::same_as<T, double> || std::same_as<T, Rational>;

enum class Mode { Exact, Float };

template <Field T>
constexpr Mode mode_of() {
    return std::same_as<T, Rational> ? Mode::Exact : Mode::Float;
}

template <Field T>
constexpr bool is_exact_v = std::same_as<T, Rational>;

inline int sign(const Rational& x) { return sgn(x); }
inline int sign(double x) { return (x > 0.0) - (x < 0.0); }

inline Rational abs(const Rational& x) { return Rational(::abs(x)); }
inline double abs(double x) { return std::fabs(x); }

inline double to_double(const Rational& x) { return x.get_d(); }
inline double to_double(double x) { return x; }

template <Field T>
T from_double(double x);
template <>
inline double from_double<double>(double x) { return x; }
template <>
inline Rational from_double<Rational>(double x) { return Rational(x); }

template <Field T>
T from_rational(const Rational& x);
template <>
inline double from_rational<double>(const Rational& x) { return x.get_d(); }
template <>
inline Rational from_rational<Rational>(const Rational& x) { return x; }

/// Exact square root of a non-negative rational, or nullopt when the root is
/// irrational. Negative input also yields nullopt.
std::optional<Rational> exact_sqrt(const Rational& x);

/// Square root in the caller's field. Throws ErrorKind::Irrational in exact
/// mode when the root is not rational, ErrorKind::Range for negative input.
Rational field_sqrt(const Rational& x);
double field_sqrt(double x);

/// Surfaces NaN/inf produced in float mode as a pole error; no-op for Rational.
inline void check_finite(const Rational&, const char*) {}
void check_finite(double x, const char* where);

/// Parses "p/q", an integer, or a decimal ("0.25", "-1e-3"). Decimals are
/// converted exactly, so "0.1" is 1/10. Throws ErrorKind::Parse.
Rational parse_rational(std::string_view text);

template <Field T>
T parse_scalar(std::string_view text);
template <>
inline Rational parse_scalar<Rational>(std::string_view text) { return parse_rational(text); }
template <>
double parse_scalar<double>(std::string_view text);

/// Lossless text form: "p/q" or "p" for rationals, shortest round-trip
/// decimal for doubles.
std::string to_string(const Rational& x);
std::string to_string(double x);

}  // namespace qh
