#pragma once

// Rescaled orthogonal polynomials M_n(y) and their Jacobi coefficients
//   y M_n = M_{n+1} + b_n M_n + c_hat_n M_{n-1},  M_{-1} = 0,  M_0 = 1,
//   b_n(t)     = gamma_n sqrt(t) + delta_n / sqrt(t),
//   c_hat_n(t) = chi_n (1 + sigma lambda_{n-1} t)(1 + tau lambda_{n-1} / t),
// obtained from x p_n = a_n p_{n+1} + b_n p_n + c_n p_{n-1} by the
// substitution x = y sqrt(t) and monic normalization.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qh/system_solver.hpp"

namespace qh {

template <Field T>
struct JacobiData {
    T t{1};
    T sqrt_t{1};
    std::vector<T> b;      // 0..N
    std::vector<T> c_hat;  // 0..N, c_hat[0] = 0
    std::size_t N = 0;
};

/// Coefficients of M_0..M_N, lowest degree first.
template <Field T>
struct PolySeq {
    std::vector<std::vector<T>> coeffs;

    std::size_t size() const { return coeffs.size(); }
    const std::vector<T>& operator[](std::size_t n) const { return coeffs[n]; }
};

struct FavardReason {
    std::size_t n = 0;
    int chi_sign = 0;
    int sigma_lambda_sign = 0;  // sign of sigma lambda_{n-1}
    int tau_lambda_sign = 0;    // sign of tau lambda_{n-1}

    bool ok() const { return chi_sign > 0 && sigma_lambda_sign >= 0 && tau_lambda_sign >= 0; }
};

struct FavardReport {
    bool ok = true;
    std::optional<std::size_t> first_failure;
    std::vector<FavardReason> reasons;  // n = 1..N
};

struct BoundednessReport {
    bool bounded = false;
    double sup_b = 0.0;
    double sup_c_hat = 0.0;
    /// "determinate" when bounded, "unknown" otherwise.
    std::string determinacy;
    std::vector<std::string> notes;
};

/// Relative band used by boundedness_check: the running max over the last
/// quarter of the horizon must stay within this factor of its final value.
inline constexpr double kBoundednessBand = 1e-6;

/// Throws ErrorKind::Range for t <= 0 and, in exact mode, ErrorKind::Irrational
/// when sqrt(t) is not rational.
template <Field T>
JacobiData<T> jacobi_data(const QHParams<T>& p, const CoefficientTable<T>& table, const T& t);

/// c_hat_n(t) in the unfactored form chi_n (1 + sigma l t + tau l / t + sigma tau l^2).
template <Field T>
T c_hat_unfactored(const QHParams<T>& p, const T& chi_n, const T& lambda_prev, const T& t);

template <Field T>
PolySeq<T> m_polynomials(const JacobiData<T>& jd);

/// p_0..p_N in the variable x from the six sequences:
///   p_{n+1} = ((x - b_n(t)) p_n - c_n(t) p_{n-1}) / a_n(t).
/// Throws ErrorKind::Pole when some a_n(t) vanishes.
template <Field T>
PolySeq<T> p_polynomials(const SequenceBundle<T>& bundle, const T& t);

/// M_n(y) = (prod_{j<n} a_j(t)) t^{-n/2} p_n(y sqrt(t)), coefficientwise.
template <Field T>
PolySeq<T> rescale_to_m(const PolySeq<T>& p_seq, const SequenceBundle<T>& bundle, const T& t,
                        const T& sqrt_t);

/// Analytic, t-free positivity certificate for c_hat_n(t) > 0 on t > 0.
template <Field T>
FavardReport favard_check(const QHParams<T>& p, const CoefficientTable<T>& table);

/// The same question answered by sampling c_hat_n(t) on a t grid (float).
template <Field T>
bool favard_sampled(const QHParams<T>& p, const CoefficientTable<T>& table,
                    const std::vector<double>& t_grid);

/// 41 log-spaced points 2^-10 .. 2^10.
std::vector<double> default_favard_grid();

/// k-th moment of the functional orthogonalizing {M_n}: e_0^T J^k e_0 for the
/// truncated Jacobi matrix. Needs jd.N >= k.
template <Field T>
T moments(const JacobiData<T>& jd, std::size_t k);

/// m_0..m_k in one pass.
template <Field T>
std::vector<T> moment_sequence(const JacobiData<T>& jd, std::size_t k);

/// det (m_{i+j})_{i,j=0..k} for k = 0..k_max. Needs 2 k_max moments.
template <Field T>
std::vector<T> hankel_determinants(const std::vector<T>& m, std::size_t k_max);

template <Field T>
T determinant(std::vector<std::vector<T>> a);

/// nullopt when sigma != tau or theta != eta. Otherwise checks gamma_n = delta_n
/// for n <= N and that the Jacobi data at t and 1/t agree for t in {4, 9}.
template <Field T>
std::optional<bool> symmetry_check(const QHParams<T>& p, std::size_t n_max);

/// Numerical proxy for bounded recurrence coefficients (float evaluation).
template <Field T>
BoundednessReport boundedness_check(const CoefficientTable<T>& table, const T& t);

}  // namespace qh
