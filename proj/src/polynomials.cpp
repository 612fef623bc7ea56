#include "qh/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace qh {

template <Field T>
T c_hat_unfactored(const QHParams<T>& p, const T& chi_n, const T& lambda_prev, const T& t) {
    const T l = lambda_prev;
    return T(chi_n * (1 + p.sigma * l * t + p.tau * l / t + p.sigma_tau() * l * l));
}

template <Field T>
JacobiData<T> jacobi_data(const QHParams<T>& p, const CoefficientTable<T>& table, const T& t) {
    if (sign(t) <= 0) {
        throw Error(ErrorKind::Range, "jacobi_data: t must be positive, got " + to_string(t));
    }
    JacobiData<T> jd;
    jd.t = t;
    jd.sqrt_t = field_sqrt(t);
    jd.N = table.N;
    const std::size_t len = table.N + 1;
    jd.b.resize(len);
    jd.c_hat.assign(len, T(0));
    for (std::size_t n = 0; n < len; ++n) {
        jd.b[n] = T(table.gamma[n] * jd.sqrt_t + table.delta[n] / jd.sqrt_t);
        if (n >= 1) {
            const T& l = table.lambda[n - 1];
            jd.c_hat[n] = T(table.chi[n] * (1 + p.sigma * l * t) * (1 + p.tau * l / t));
        }
    }
    return jd;
}

template <Field T>
PolySeq<T> m_polynomials(const JacobiData<T>& jd) {
    PolySeq<T> out;
    out.coeffs.reserve(jd.N + 1);
    out.coeffs.push_back({T(1)});
    std::vector<T> prev;  // M_{-1} = 0
    for (std::size_t n = 0; n < jd.N; ++n) {
        const std::vector<T>& cur = out.coeffs.back();
        std::vector<T> next(cur.size() + 1, T(0));
        for (std::size_t k = 0; k < cur.size(); ++k) {
            next[k + 1] += cur[k];
            next[k] -= jd.b[n] * cur[k];
        }
        for (std::size_t k = 0; k < prev.size(); ++k) {
            next[k] -= jd.c_hat[n] * prev[k];
        }
        prev = cur;
        out.coeffs.push_back(std::move(next));
    }
    return out;
}

template <Field T>
PolySeq<T> p_polynomials(const SequenceBundle<T>& s, const T& t) {
    PolySeq<T> out;
    const std::size_t len = s.size();
    if (len == 0) {
        return out;
    }
    out.coeffs.push_back({T(1)});
    std::vector<T> prev;
    for (std::size_t n = 0; n + 1 < len; ++n) {
        const T a = T(s.alpha[n] * t + s.beta[n]);
        const T b = T(s.gamma[n] * t + s.delta[n]);
        const T c = T(s.epsilon[n] * t + s.phi[n]);
        if (sign(a) == 0) {
            throw Error(ErrorKind::Pole, "p_polynomials: a_" + std::to_string(n) + "(t) = 0");
        }
        const std::vector<T>& cur = out.coeffs.back();
        std::vector<T> next(cur.size() + 1, T(0));
        for (std::size_t k = 0; k < cur.size(); ++k) {
            next[k + 1] += cur[k];
            next[k] -= b * cur[k];
        }
        for (std::size_t k = 0; k < prev.size(); ++k) {
            next[k] -= c * prev[k];
        }
        for (T& x : next) {
            x /= a;
        }
        prev = cur;
        out.coeffs.push_back(std::move(next));
    }
    return out;
}

template <Field T>
PolySeq<T> rescale_to_m(const PolySeq<T>& p_seq, const SequenceBundle<T>& s, const T& t,
                        const T& sqrt_t) {
    PolySeq<T> out;
    T prod(1);
    for (std::size_t n = 0; n < p_seq.size(); ++n) {
        if (n >= 1) {
            prod *= T(s.alpha[n - 1] * t + s.beta[n - 1]);
        }
        const std::vector<T>& pn = p_seq[n];
        std::vector<T> mn(pn.size());
        // coefficient k picks up prod * sqrt(t)^(k - n)
        T scale = prod;
        for (std::size_t i = 0; i < n; ++i) {
            scale /= sqrt_t;
        }
        for (std::size_t k = 0; k < pn.size(); ++k) {
            mn[k] = T(scale * pn[k]);
            scale *= sqrt_t;
        }
        out.coeffs.push_back(std::move(mn));
    }
    return out;
}

template <Field T>
FavardReport favard_check(const QHParams<T>& p, const CoefficientTable<T>& table) {
    FavardReport r;
    for (std::size_t n = 1; n <= table.N; ++n) {
        FavardReason why;
        why.n = n;
        why.chi_sign = sign(table.chi[n]);
        why.sigma_lambda_sign = sign(T(p.sigma * table.lambda[n - 1]));
        why.tau_lambda_sign = sign(T(p.tau * table.lambda[n - 1]));
        if (!why.ok() && !r.first_failure) {
            r.ok = false;
            r.first_failure = n;
        }
        r.reasons.push_back(why);
    }
    return r;
}

template <Field T>
bool favard_sampled(const QHParams<T>& p, const CoefficientTable<T>& table,
                    const std::vector<double>& t_grid) {
    const QHParams<double> pd = p.template as<double>();
    for (double t : t_grid) {
        for (std::size_t n = 1; n <= table.N; ++n) {
            const double c = c_hat_unfactored(pd, to_double(table.chi[n]),
                                              to_double(table.lambda[n - 1]), t);
            if (!(c > 0.0)) {
                return false;
            }
        }
    }
    return true;
}

std::vector<double> default_favard_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 40; ++i) {
        grid.push_back(std::exp2(-10.0 + 0.5 * i));
    }
    return grid;
}

template <Field T>
std::vector<T> moment_sequence(const JacobiData<T>& jd, std::size_t k) {
    if (jd.N < k) {
        throw Error(ErrorKind::Range, "moments: horizon N = " + std::to_string(jd.N) +
                                          " too short for k = " + std::to_string(k));
    }
    // y^j = sum_m c_m M_m; multiplying by y sends c to
    //   c'_m = c_{m-1} + b_m c_m + c_hat_{m+1} c_{m+1}.
    std::vector<T> c(k + 2, T(0));
    std::vector<T> next(k + 2, T(0));
    c[0] = T(1);
    std::vector<T> out{T(1)};
    for (std::size_t step = 1; step <= k; ++step) {
        for (std::size_t m = 0; m <= k; ++m) {
            T v = T(jd.b[m] * c[m]);
            if (m >= 1) {
                v += c[m - 1];
            }
            if (m + 1 <= k) {
                v += jd.c_hat[m + 1] * c[m + 1];
            }
            next[m] = std::move(v);
        }
        std::swap(c, next);
        out.push_back(c[0]);
    }
    return out;
}

template <Field T>
T moments(const JacobiData<T>& jd, std::size_t k) {
    return moment_sequence(jd, k).back();
}

template <Field T>
T determinant(std::vector<std::vector<T>> a) {
    const std::size_t n = a.size();
    T det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (abs(a[r][col]) > abs(a[piv][col])) {
                piv = r;
            }
        }
        if (sign(a[piv][col]) == 0) {
            return T(0);
        }
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = T(-det);
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const T f = T(a[r][col] / a[col][col]);
            if (sign(f) == 0) {
                continue;
            }
            for (std::size_t c = col; c < n; ++c) {
                a[r][c] -= f * a[col][c];
            }
        }
    }
    return det;
}

template <Field T>
std::vector<T> hankel_determinants(const std::vector<T>& m, std::size_t k_max) {
    if (m.size() < 2 * k_max + 1) {
        throw Error(ErrorKind::Range, "hankel_determinants: need moments up to 2 k_max");
    }
    std::vector<T> out;
    for (std::size_t k = 0; k <= k_max; ++k) {
        std::vector<std::vector<T>> h(k + 1, std::vector<T>(k + 1));
        for (std::size_t i = 0; i <= k; ++i) {
            for (std::size_t j = 0; j <= k; ++j) {
                h[i][j] = m[i + j];
            }
        }
        out.push_back(determinant(std::move(h)));
    }
    return out;
}

template <Field T>
std::optional<bool> symmetry_check(const QHParams<T>& p, std::size_t n_max) {
    if (p.sigma != p.tau || p.theta != p.eta) {
        return std::nullopt;
    }
    const CoefficientTable<T> table = solve_table(p, n_max);
    for (std::size_t n = 0; n <= n_max; ++n) {
        if (table.gamma[n] != table.delta[n]) {
            return false;
        }
    }
    for (long r : {2L, 3L}) {
        const T t(r * r);
        const T inv = T(T(1) / t);
        const JacobiData<T> a = jacobi_data(p, table, t);
        const JacobiData<T> b = jacobi_data(p, table, inv);
        if constexpr (is_exact_v<T>) {
            if (a.b != b.b || a.c_hat != b.c_hat) {
                return false;
            }
        } else {
            for (std::size_t n = 0; n <= n_max; ++n) {
                const double scale = 1.0 + std::max(std::fabs(a.b[n]), std::fabs(a.c_hat[n]));
                if (std::fabs(a.b[n] - b.b[n]) > 1e-12 * scale ||
                    std::fabs(a.c_hat[n] - b.c_hat[n]) > 1e-12 * scale) {
                    return false;
                }
            }
        }
    }
    return true;
}

namespace {

// Running max over the whole horizon is within the band of its value at 3N/4.
bool stabilized(const std::vector<double>& v, double& sup) {
    const std::size_t n = v.size();
    const std::size_t cut = (3 * n) / 4;
    double head = 0.0;
    sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(v[i])) {
            sup = v[i];
            return false;
        }
        sup = std::max(sup, std::fabs(v[i]));
        if (i < cut) {
            head = sup;
        }
    }
    return sup - head <= kBoundednessBand * sup;
}

}  // namespace

template <Field T>
BoundednessReport boundedness_check(const CoefficientTable<T>& table, const T& t) {
    BoundednessReport r;
    const double td = to_double(t);
    if (!(td > 0.0)) {
        throw Error(ErrorKind::Range, "boundedness_check: t must be positive");
    }
    const QHParams<double> p = table.params.template as<double>();
    const double rt = std::sqrt(td);
    std::vector<double> b, c;
    for (std::size_t n = 1; n <= table.N; ++n) {
        b.push_back(to_double(table.gamma[n]) * rt + to_double(table.delta[n]) / rt);
        const double l = to_double(table.lambda[n - 1]);
        c.push_back(to_double(table.chi[n]) * (1 + p.sigma * l * td) * (1 + p.tau * l / td));
    }
    const bool sb = stabilized(b, r.sup_b);
    const bool sc = stabilized(c, r.sup_c_hat);
    r.bounded = table.N >= 4 && sb && sc;
    if (p.q == 1.0 && (p.sigma > 0.0 || p.tau > 0.0)) {
        r.bounded = false;
        r.notes.push_back("q = 1 with sigma or tau positive: moment determinacy not established");
    }
    r.determinacy = r.bounded ? "determinate" : "unknown";
    return r;
}

#define QH_INSTANTIATE(T)                                                                      \
    template T c_hat_unfactored<T>(const QHParams<T>&, const T&, const T&, const T&);          \
    template JacobiData<T> jacobi_data<T>(const QHParams<T>&, const CoefficientTable<T>&,      \
                                          const T&);                                           \
    template PolySeq<T> m_polynomials<T>(const JacobiData<T>&);                                \
    template PolySeq<T> p_polynomials<T>(const SequenceBundle<T>&, const T&);                  \
    template PolySeq<T> rescale_to_m<T>(const PolySeq<T>&, const SequenceBundle<T>&, const T&, \
                                        const T&);                                             \
    template FavardReport favard_check<T>(const QHParams<T>&, const CoefficientTable<T>&);     \
    template bool favard_sampled<T>(const QHParams<T>&, const CoefficientTable<T>&,            \
                                    const std::vector<double>&);                               \
    template std::vector<T> moment_sequence<T>(const JacobiData<T>&, std::size_t);             \
    template T moments<T>(const JacobiData<T>&, std::size_t);                                  \
    template T determinant<T>(std::vector<std::vector<T>>);                                    \
    template std::vector<T> hankel_determinants<T>(const std::vector<T>&, std::size_t);        \
    template std::optional<bool> symmetry_check<T>(const QHParams<T>&, std::size_t);           \
    template BoundednessReport boundedness_check<T>(const CoefficientTable<T>&, const T&);

QH_INSTANTIATE(double)
QH_INSTANTIATE(Rational)

#undef QH_INSTANTIATE

}  // namespace qh
