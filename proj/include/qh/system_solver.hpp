#pragma once

// Solver for the five coupled recurrences on (alpha, beta, gamma, delta,
// epsilon, phi) that the three-term recurrence coefficients
//   a_n(t) = alpha_n t + beta_n,  b_n(t) = gamma_n t + delta_n,  c_n(t) = epsilon_n t + phi_n
// of martingale orthogonal polynomials must satisfy.
//
// Pipeline:
//   lambda_n                    Mobius iteration (lambda_engine)
//   (gamma_n, delta_n)          A_n v_{n+1} = B_n v_n + C_n (theta, eta), v_0 = 0
//   chi_n = beta_{n-1} eps_n    num_n chi_n + Q_n = den_n chi_{n+1}, chi_1 = 1
// where
//   num_n = q + z - z (1 - lambda_{n-1})^2,  den_n = 1 - z (2 lambda_n + q lambda_n^2),
//   Q_n   = 1 + theta gamma_n + tau gamma_n^2 + eta delta_n + sigma delta_n^2 - (1-q) gamma_n delta_n.
//
// The system fixes only alpha/beta, phi/epsilon and chi. SequenceBundle uses
// the gauge beta_n = 1, so alpha_n = sigma lambda_n, epsilon_n = chi_n and
// phi_n = tau lambda_{n-1} chi_n.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "qh/lambda_engine.hpp"
#include "qh/matrix2.hpp"

namespace qh {

template <Field T>
struct QHParams {
    T sigma{0};
    T tau{0};
    T theta{0};
    T eta{0};
    T q{0};

    T sigma_tau() const { return T(sigma * tau); }
    MobiusParams<T> mobius() const { return {q, sigma_tau()}; }
    Vec2<T> mu() const { return {theta, eta}; }

    /// Validates sigma, tau >= 0, q > -1 and q <= 1 + 2 sqrt(sigma tau);
    /// throws ErrorKind::Range otherwise.
    static QHParams make(T sigma, T tau, T theta, T eta, T q);

    template <Field U>
    QHParams<U> as() const {
        return {from_rational_like<U>(sigma), from_rational_like<U>(tau), from_rational_like<U>(theta),
                from_rational_like<U>(eta), from_rational_like<U>(q)};
    }

private:
    template <Field U>
    static U from_rational_like(const T& v) {
        if constexpr (std::same_as<T, U>) {
            return v;
        } else if constexpr (std::same_as<U, double>) {
            return to_double(v);
        } else {
            return from_double<U>(v);
        }
    }
};

template <Field T>
Regime regime_of(const QHParams<T>& p) {
    return regime_classify(p.mobius());
}

template <Field T>
struct StepMatrices {
    Mat2<T> A;
    Mat2<T> B;
    Mat2<T> C;
};

template <Field T>
struct CoefficientTable {
    std::size_t N = 0;
    QHParams<T> params;
    std::vector<T> lambda;  // 0..N
    std::vector<T> gamma;   // 0..N
    std::vector<T> delta;   // 0..N
    std::vector<T> chi;     // 0..N, chi[0] = 0 by convention, chi[1] = 1
};

template <Field T>
struct SequenceBundle {
    // Indices 0..N. epsilon[0] = phi[0] = 0 (c_0 multiplies p_{-1} = 0).
    std::vector<T> alpha, beta, gamma, delta, epsilon, phi;

    std::size_t size() const { return alpha.size(); }
};

/// Max |lhs - rhs| of each of the five recurrences over n = 1..N-1.
template <Field T>
struct SystemResiduals {
    std::array<T, 5> per_equation{};
    /// First (equation, n) with a nonzero residual, if any (exact mode).
    std::optional<std::pair<int, std::size_t>> first_nonzero;

    T max() const {
        T m = per_equation[0];
        for (const T& r : per_equation) {
            if (r > m) {
                m = r;
            }
        }
        return m;
    }
};

template <Field T>
StepMatrices<T> step_matrices(const T& lambda_n, const QHParams<T>& p);

/// (gamma_n, delta_n) for n = 0..N by solving A_n v_{n+1} = B_n v_n + C_n mu.
/// Throws ErrorKind::Pole on a singular A_n or a lambda pole.
template <Field T>
std::vector<Vec2<T>> gamma_delta_sequence(const QHParams<T>& p, std::size_t n_max);

/// Same values from the explicit sum
///   v_{n+1} = sum_{k=0}^{n} (Xi_n ... Xi_{k+1}) w_k,  Xi_k = A_k^{-1} B_k,  w_k = A_k^{-1} C_k mu.
/// O(N^2); used as an independent check on the recursion.
template <Field T>
std::vector<Vec2<T>> gamma_delta_closed_sum(const QHParams<T>& p, std::size_t n_max);

template <Field T>
T quadratic_form_value(const QHParams<T>& p, const T& gamma, const T& delta);

/// kappa_n = num_n / den_n, n = 1..N-1 (index 0 unused).
template <Field T>
std::vector<T> kappa_sequence(const QHParams<T>& p, const std::vector<T>& lambda);

/// chi_0..chi_N from the chi recursion given lambda_0..lambda_N and
/// (gamma, delta)_0..N. Throws ErrorKind::Pole when den_n == 0.
template <Field T>
std::vector<T> chi_sequence(const QHParams<T>& p, const std::vector<T>& lambda,
                            const std::vector<Vec2<T>>& gamma_delta, std::size_t n_max);

/// Runs the whole pipeline. Does not check the regime; poles surface as
/// ErrorKind::Pole.
template <Field T>
CoefficientTable<T> solve_table(const QHParams<T>& p, std::size_t n_max);

/// lim chi_n for theta = eta = 0 in the strict regime:
///   (1 - q + sqrt(disc)) / (2 disc),  disc = (1 - q)^2 - 4 sigma tau,
/// the solution of xi = D xi + c. Throws ErrorKind::Regime outside
/// -1 < q < 1 - 2 sqrt(sigma tau) or when theta, eta are not both zero.
template <Field T>
T chi_limit(const QHParams<T>& p);

template <Field T>
SequenceBundle<T> reconstruct_six_sequences(const QHParams<T>& p, std::size_t n_max);

template <Field T>
SequenceBundle<T> bundle_from_table(const CoefficientTable<T>& table);

template <Field T>
SystemResiduals<T> residuals_system(const SequenceBundle<T>& bundle, const QHParams<T>& p,
                                    std::size_t n_max);

/// D_0..D_N with (gamma_n, delta_n) = D_n (theta, eta): D_0 = 0,
/// D_{n+1} = Xi_n D_n + A_n^{-1} C_n.
template <Field T>
std::vector<Mat2<T>> dn_matrix_sequence(const QHParams<T>& p, std::size_t n_max);

/// 1 + mu^T ((D + D^T)/2 + D^T Delta D) mu with
/// Delta = [[tau, -(1-q)/2], [-(1-q)/2, sigma]]; equals quadratic_form_value
/// at (gamma_n, delta_n) = D_n mu.
template <Field T>
T dn_form_value(const Mat2<T>& dn, const QHParams<T>& p);

}  // namespace qh
