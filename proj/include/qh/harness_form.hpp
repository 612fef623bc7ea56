#pragma once

// Conditional second-moment form of a quadratic harness,
//   E(X_t^2 | past s, future u) = A x^2 + B x y + C y^2 + D x + E y + F,
// x = X_s, y = X_u, and the coefficient identity it forces on p_{n+2}.
//
// With den = u(1 + sigma s) + tau - q s:
//   A = (u-t)(u(1 + sigma t) + tau - q t) / ((u-s) den)
//   B = (u-t)(t-s)(1+q) / ((u-s) den)
//   C = (t-s)(t(1 + sigma s) + tau - q s) / ((u-s) den)
//   D = (u-t)(t-s)(u eta - theta) / ((u-s) den)
//   E = (u-t)(t-s)(theta - s eta) / ((u-s) den)
//   F = (u-t)(t-s) / den
//
// Only the p_{n+2} identity is evaluated here; the remaining four coefficient
// identities coincide with the equations checked by residuals_system.

#include <cstddef>

#include "qh/system_solver.hpp"

namespace qh {

template <Field T>
struct QFormCoeffs {
    T A{0}, B{0}, C{0}, D{0}, E{0}, F{0};
    T s{0}, t{0}, u{0};
};

/// Throws ErrorKind::Range unless 0 <= s <= t <= u with u > s, and
/// ErrorKind::Pole when den vanishes.
template <Field T>
QFormCoeffs<T> q_form_coeffs(const T& s, const T& t, const T& u, const QHParams<T>& p);

/// a_n(t) a_{n+1}(t) - A a_n(s) a_{n+1}(s) - B a_n(u) a_{n+1}(s) - C a_n(u) a_{n+1}(u)
/// with a_n(t) = alpha_n t + beta_n. Needs n + 1 < bundle.size().
template <Field T>
T identity_residual(const QHParams<T>& p, const SequenceBundle<T>& bundle, std::size_t n,
                    const T& s, const T& t, const T& u);

/// Max over a_n, b_n, c_n of |f(t) - ((u-t) f(s) + (t-s) f(u)) / (u-s)|.
template <Field T>
T affinity_residual(const SequenceBundle<T>& bundle, std::size_t n, const T& s, const T& t,
                    const T& u);

}  // namespace qh
