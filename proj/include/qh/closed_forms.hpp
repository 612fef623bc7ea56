#pragma once

// Closed-form coefficient tables for the parameter slices where the
// recurrence system solves in elementary terms, and the harness that checks
// each one against the general solver.
//
// Detection precedence (first match wins):
//   SigmaTauZero, TauThetaZero, SigmaEtaZero, TauEtaZero, SigmaThetaZero,
//   QSigmaZero, QTauZero, QEqualsMinusSigmaTau, BoundaryQ, None
//
// Low-index values follow the recursion, not the generic formula, where the
// two differ:
//   QSigmaZero / QTauZero      the gamma/delta constant holds from n = 2;
//                              n = 1 carries a single tau (resp. sigma) term.
//   QEqualsMinusSigmaTau       gamma, delta constant from n = 2 with
//                              (gamma_1, delta_1) = (eta + sigma theta, theta + tau eta) / (1 - st);
//                              chi_1 = 1, chi_2 = P / (1 - st)^3, chi_n = P / (1 - st)^4 for
//                              n >= 3, P = (1 - st)^2 + (eta + theta sigma)(theta + eta tau).
//   SigmaTauZero               chi_n = [n]_q + theta eta [n]_q [n-1]_q.

#include <cstddef>
#include <string_view>

#include "qh/system_solver.hpp"

namespace qh {

enum class SpecialCase {
    TauThetaZero,
    SigmaEtaZero,
    TauEtaZero,
    SigmaThetaZero,
    SigmaTauZero,
    QSigmaZero,
    QTauZero,
    QEqualsMinusSigmaTau,
    BoundaryQ,  // q = 1 - 2 sqrt(sigma tau), theta = eta = 0
    None,
};

std::string_view to_string(SpecialCase c);

/// Every case except None, in declaration order.
inline constexpr SpecialCase kAllSpecialCases[] = {
    SpecialCase::TauThetaZero, SpecialCase::SigmaEtaZero,  SpecialCase::TauEtaZero,
    SpecialCase::SigmaThetaZero, SpecialCase::SigmaTauZero, SpecialCase::QSigmaZero,
    SpecialCase::QTauZero,     SpecialCase::QEqualsMinusSigmaTau, SpecialCase::BoundaryQ,
};

template <Field T>
bool satisfies(SpecialCase c, const QHParams<T>& p);

template <Field T>
SpecialCase detect_case(const QHParams<T>& p);

/// Table filled from closed formulas. Throws ErrorKind::Hypothesis when p does
/// not satisfy the case; BoundaryQ in exact mode needs sqrt(sigma tau)
/// rational (ErrorKind::Irrational otherwise).
template <Field T>
CoefficientTable<T> closed_table(SpecialCase c, const QHParams<T>& p, std::size_t n_max);

/// Max |closed - recursion| over lambda, gamma, delta, chi for n <= N.
template <Field T>
T verify_against_recursion(SpecialCase c, const QHParams<T>& p, std::size_t n_max);

/// Right-hand side of the boundary-case chi recursion
///   chi_{n+1} = r_n chi_n + s_n,  s = sqrt(sigma tau),
///   r_n = (1 + 2(n-2)s)(1 + (n-1)s)^2 / ((1 + 2ns)(1 + (n-2)s)^2),
///   s_n = (1 + (n-1)s)^2 / ((1 - s)^2 (1 + 2ns)).
/// Exposed so the closed form can be checked against it term by term.
template <Field T>
T boundary_chi_step(const T& chi_n, std::size_t n, const T& s);

/// Boundary-case closed form for chi_n (n >= 1) in terms of s = sqrt(sigma tau).
template <Field T>
T boundary_chi(std::size_t n, const T& s);

}  // namespace qh
