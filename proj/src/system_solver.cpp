#include "qh/system_solver.hpp"

#include <string>

namespace qh {

template <Field T>
QHParams<T> QHParams<T>::make(T sigma, T tau, T theta, T eta, T q) {
    QHParams p{std::move(sigma), std::move(tau), std::move(theta), std::move(eta), std::move(q)};
    if (sign(p.sigma) < 0 || sign(p.tau) < 0) {
        throw Error(ErrorKind::Range, "sigma and tau must be non-negative");
    }
    if (regime_of(p) == Regime::OutOfRange) {
        throw Error(ErrorKind::Range, "q = " + to_string(p.q) +
                                          " outside (-1, 1 + 2 sqrt(sigma tau)] for sigma tau = " +
                                          to_string(p.sigma_tau()));
    }
    return p;
}

template <Field T>
StepMatrices<T> step_matrices(const T& lambda_n, const QHParams<T>& p) {
    const T z = p.sigma_tau();
    const T diag_a = T(1 - z * lambda_n);
    const T growth = T(1 + p.q * lambda_n);
    const T diag_b = T(p.q + z * lambda_n);
    const T shrink = T(1 - lambda_n);
    return {
        {diag_a, T(-p.sigma * growth), T(-p.tau * growth), diag_a},
        {diag_b, T(p.sigma * shrink), T(p.tau * shrink), diag_b},
        {T(p.sigma * lambda_n), T(1), T(1), T(p.tau * lambda_n)},
    };
}

namespace {

template <Field T>
std::vector<T> lambda_or_throw(const QHParams<T>& p, std::size_t n_max) {
    LambdaSeq<T> seq = lambda_sequence(p.mobius(), n_max);
    if (seq.truncated_at) {
        throw Error(ErrorKind::Pole,
                    "lambda sequence hits a pole at n = " + std::to_string(*seq.truncated_at));
    }
    return std::move(seq.values);
}

template <Field T>
void accumulate_max(T& acc, const T& residual) {
    T a = abs(residual);
    if (a > acc) {
        acc = a;
    }
}

}  // namespace

template <Field T>
std::vector<Vec2<T>> gamma_delta_sequence(const QHParams<T>& p, std::size_t n_max) {
    const std::vector<T> lambda = lambda_or_throw(p, n_max);
    std::vector<Vec2<T>> out;
    out.reserve(n_max + 1);
    out.push_back({});
    const Vec2<T> mu = p.mu();
    for (std::size_t n = 0; n < n_max; ++n) {
        const auto m = step_matrices(lambda[n], p);
        out.push_back(solve(m.A, m.B * out.back() + m.C * mu));
    }
    return out;
}

template <Field T>
std::vector<Vec2<T>> gamma_delta_closed_sum(const QHParams<T>& p, std::size_t n_max) {
    const std::vector<T> lambda = lambda_or_throw(p, n_max);
    std::vector<Mat2<T>> xi;
    std::vector<Vec2<T>> w;
    xi.reserve(n_max);
    w.reserve(n_max);
    for (std::size_t k = 0; k < n_max; ++k) {
        const auto m = step_matrices(lambda[k], p);
        xi.push_back(solve(m.A, m.B));
        w.push_back(solve(m.A, m.C * p.mu()));
    }
    std::vector<Vec2<T>> out(n_max + 1);
    for (std::size_t n = 0; n < n_max; ++n) {
        Vec2<T> sum{};
        for (std::size_t k = 0; k <= n; ++k) {
            Mat2<T> prod = Mat2<T>::identity();
            for (std::size_t j = k + 1; j <= n; ++j) {
                prod = xi[j] * prod;
            }
            sum = sum + prod * w[k];
        }
        out[n + 1] = sum;
    }
    return out;
}

template <Field T>
T quadratic_form_value(const QHParams<T>& p, const T& g, const T& d) {
    return T(1 + p.theta * g + p.tau * g * g + p.eta * d + p.sigma * d * d - (1 - p.q) * g * d);
}

template <Field T>
std::vector<T> kappa_sequence(const QHParams<T>& p, const std::vector<T>& lambda) {
    const T z = p.sigma_tau();
    std::vector<T> kappa(lambda.size(), T(0));
    for (std::size_t n = 1; n < lambda.size(); ++n) {
        const T gap = T(1 - lambda[n - 1]);
        const T num = T(p.q + z - z * gap * gap);
        const T den = T(1 - z * (2 * lambda[n] + p.q * lambda[n] * lambda[n]));
        if (sign(den) == 0) {
            throw Error(ErrorKind::Pole, "chi recursion denominator vanishes at n = " + std::to_string(n));
        }
        kappa[n] = T(num / den);
    }
    return kappa;
}

template <Field T>
std::vector<T> chi_sequence(const QHParams<T>& p, const std::vector<T>& lambda,
                            const std::vector<Vec2<T>>& gamma_delta, std::size_t n_max) {
    if (lambda.size() < n_max + 1 || gamma_delta.size() < n_max + 1) {
        throw Error(ErrorKind::Range, "chi_sequence: inputs shorter than the horizon");
    }
    const T z = p.sigma_tau();
    std::vector<T> chi(n_max + 1, T(0));
    if (n_max == 0) {
        return chi;
    }
    chi[1] = T(1);
    for (std::size_t n = 1; n < n_max; ++n) {
        const T gap = T(1 - lambda[n - 1]);
        const T num = T(p.q + z - z * gap * gap);
        const T den = T(1 - z * (2 * lambda[n] + p.q * lambda[n] * lambda[n]));
        if (sign(den) == 0) {
            throw Error(ErrorKind::Pole, "chi recursion denominator vanishes at n = " + std::to_string(n));
        }
        const T form = quadratic_form_value(p, gamma_delta[n].x, gamma_delta[n].y);
        chi[n + 1] = T((num * chi[n] + form) / den);
        check_finite(chi[n + 1], "chi_sequence");
    }
    return chi;
}

template <Field T>
CoefficientTable<T> solve_table(const QHParams<T>& p, std::size_t n_max) {
    CoefficientTable<T> table;
    table.N = n_max;
    table.params = p;
    table.lambda = lambda_or_throw(p, n_max);
    const auto gd = gamma_delta_sequence(p, n_max);
    table.gamma.reserve(n_max + 1);
    table.delta.reserve(n_max + 1);
    for (const auto& v : gd) {
        table.gamma.push_back(v.x);
        table.delta.push_back(v.y);
    }
    table.chi = chi_sequence(p, table.lambda, gd, n_max);
    return table;
}

template <Field T>
T chi_limit(const QHParams<T>& p) {
    if (regime_of(p) != Regime::StrictAdmissible) {
        throw Error(ErrorKind::Regime, "chi limit requires -1 < q < 1 - 2 sqrt(sigma tau)");
    }
    if (sign(p.theta) != 0 || sign(p.eta) != 0) {
        throw Error(ErrorKind::Regime, "chi limit is only available for theta = eta = 0");
    }
    const T one_minus_q = T(1 - p.q);
    const T disc = T(one_minus_q * one_minus_q - 4 * p.sigma_tau());
    return T((one_minus_q + field_sqrt(disc)) / (2 * disc));
}

template <Field T>
SequenceBundle<T> bundle_from_table(const CoefficientTable<T>& table) {
    const std::size_t len = table.N + 1;
    const QHParams<T>& p = table.params;
    SequenceBundle<T> b;
    b.alpha.resize(len);
    b.beta.assign(len, T(1));
    b.gamma = table.gamma;
    b.delta = table.delta;
    b.epsilon.assign(len, T(0));
    b.phi.assign(len, T(0));
    for (std::size_t n = 0; n < len; ++n) {
        b.alpha[n] = T(p.sigma * table.lambda[n]);
        if (n >= 1) {
            b.epsilon[n] = table.chi[n];
            b.phi[n] = T(p.tau * table.lambda[n - 1] * table.chi[n]);
        }
    }
    return b;
}

template <Field T>
SequenceBundle<T> reconstruct_six_sequences(const QHParams<T>& p, std::size_t n_max) {
    return bundle_from_table(solve_table(p, n_max));
}

template <Field T>
SystemResiduals<T> residuals_system(const SequenceBundle<T>& s, const QHParams<T>& p, std::size_t n_max) {
    if (s.size() < n_max + 1) {
        throw Error(ErrorKind::Range, "residuals_system: bundle shorter than the horizon");
    }
    const T& sig = p.sigma;
    const T& tau = p.tau;
    const T& th = p.theta;
    const T& eta = p.eta;
    const T& q = p.q;
    const auto& al = s.alpha;
    const auto& be = s.beta;
    const auto& ga = s.gamma;
    const auto& de = s.delta;
    const auto& ep = s.epsilon;
    const auto& ph = s.phi;

    SystemResiduals<T> out;
    for (auto& r : out.per_equation) {
        r = T(0);
    }
    auto record = [&](int eq, std::size_t n, const T& value) {
        accumulate_max(out.per_equation[static_cast<std::size_t>(eq - 1)], value);
        if (sign(value) != 0 && !out.first_nonzero) {
            out.first_nonzero = std::make_pair(eq, n);
        }
    };

    for (std::size_t n = 0; n + 1 <= n_max; ++n) {
        // n = 0 is included for the two equations that only look forward.
        record(1, n, T(tau * al[n] * al[n + 1] + q * al[n] * be[n + 1] + sig * be[n] * be[n + 1] -
                       al[n + 1] * be[n]));
        record(3, n, T(th * al[n] + eta * be[n] + tau * al[n] * (ga[n] + ga[n + 1]) +
                       sig * be[n] * (de[n] + de[n + 1]) + q * (al[n] * de[n + 1] + be[n] * ga[n]) -
                       (be[n] * ga[n + 1] + al[n] * de[n])));
        if (n == 0) {
            continue;
        }
        record(2, n, T(tau * ep[n - 1] * ep[n] + q * ep[n] * ph[n - 1] + sig * ph[n] * ph[n - 1] -
                       ep[n - 1] * ph[n]));
        record(4, n, T(th * ep[n] + eta * ph[n] + tau * ep[n] * (ga[n] + ga[n - 1]) +
                       sig * ph[n] * (de[n - 1] + de[n]) + q * (ph[n] * ga[n] + de[n - 1] * ep[n]) -
                       (ep[n] * de[n] + ph[n] * ga[n - 1])));
        record(5, n, T(1 + th * ga[n] + eta * de[n] + tau * ga[n] * ga[n] + sig * de[n] * de[n] +
                       tau * (al[n - 1] * ep[n] + al[n] * ep[n + 1]) +
                       sig * (ph[n] * be[n - 1] + be[n] * ph[n + 1]) +
                       q * (ga[n] * de[n] + be[n - 1] * ep[n] + al[n] * ph[n + 1]) -
                       (ga[n] * de[n] + be[n] * ep[n + 1] + ph[n] * al[n - 1])));
    }
    return out;
}

template <Field T>
std::vector<Mat2<T>> dn_matrix_sequence(const QHParams<T>& p, std::size_t n_max) {
    const std::vector<T> lambda = lambda_or_throw(p, n_max);
    std::vector<Mat2<T>> out;
    out.reserve(n_max + 1);
    out.push_back(Mat2<T>::zero());
    for (std::size_t n = 0; n < n_max; ++n) {
        const auto m = step_matrices(lambda[n], p);
        const Mat2<T> xi = solve(m.A, m.B);
        const Mat2<T> drive = solve(m.A, m.C);
        out.push_back(xi * out.back() + drive);
    }
    return out;
}

template <Field T>
T dn_form_value(const Mat2<T>& dn, const QHParams<T>& p) {
    const T off = T(-(1 - p.q) / 2);
    const Mat2<T> delta{p.tau, off, off, p.sigma};
    const Mat2<T> sym = T(T(1) / 2) * (dn + dn.transpose());
    const Mat2<T> form = sym + dn.transpose() * delta * dn;
    const Vec2<T> mu = p.mu();
    return T(1 + dot(mu, form * mu));
}

#define QH_INSTANTIATE(T)                                                                              \
    template struct QHParams<T>;                                                                       \
    template StepMatrices<T> step_matrices<T>(const T&, const QHParams<T>&);                           \
    template std::vector<Vec2<T>> gamma_delta_sequence<T>(const QHParams<T>&, std::size_t);            \
    template std::vector<Vec2<T>> gamma_delta_closed_sum<T>(const QHParams<T>&, std::size_t);          \
    template T quadratic_form_value<T>(const QHParams<T>&, const T&, const T&);                        \
    template std::vector<T> kappa_sequence<T>(const QHParams<T>&, const std::vector<T>&);              \
    template std::vector<T> chi_sequence<T>(const QHParams<T>&, const std::vector<T>&,                 \
                                            const std::vector<Vec2<T>>&, std::size_t);                 \
    template CoefficientTable<T> solve_table<T>(const QHParams<T>&, std::size_t);                      \
    template T chi_limit<T>(const QHParams<T>&);                                                       \
    template SequenceBundle<T> bundle_from_table<T>(const CoefficientTable<T>&);                       \
    template SequenceBundle<T> reconstruct_six_sequences<T>(const QHParams<T>&, std::size_t);          \
    template SystemResiduals<T> residuals_system<T>(const SequenceBundle<T>&, const QHParams<T>&,      \
                                                    std::size_t);                                      \
    template std::vector<Mat2<T>> dn_matrix_sequence<T>(const QHParams<T>&, std::size_t);              \
    template T dn_form_value<T>(const Mat2<T>&, const QHParams<T>&);

QH_INSTANTIATE(double)
QH_INSTANTIATE(Rational)

#undef QH_INSTANTIATE

}  // namespace qh
