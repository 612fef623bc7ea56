#include "qh/harness_form.hpp"

#include <string>

namespace qh {

template <Field T>
QFormCoeffs<T> q_form_coeffs(const T& s, const T& t, const T& u, const QHParams<T>& p) {
    if (sign(s) < 0 || t < s || u < t) {
        throw Error(ErrorKind::Range, "q_form_coeffs: need 0 <= s <= t <= u");
    }
    if (u == s) {
        throw Error(ErrorKind::Range, "q_form_coeffs: degenerate interval u = s");
    }
    const T den = T(u * (1 + p.sigma * s) + p.tau - p.q * s);
    if (sign(den) == 0) {
        throw Error(ErrorKind::Pole, "q_form_coeffs: u(1 + sigma s) + tau - q s = 0");
    }
    const T full = T((u - s) * den);
    const T inner = T((u - t) * (t - s));
    QFormCoeffs<T> c;
    c.s = s;
    c.t = t;
    c.u = u;
    c.A = T((u - t) * (u * (1 + p.sigma * t) + p.tau - p.q * t) / full);
    c.B = T(inner * (1 + p.q) / full);
    c.C = T((t - s) * (t * (1 + p.sigma * s) + p.tau - p.q * s) / full);
    c.D = T(inner * (u * p.eta - p.theta) / full);
    c.E = T(inner * (p.theta - s * p.eta) / full);
    c.F = T(inner / den);
    for (const T* v : {&c.A, &c.B, &c.C, &c.D, &c.E, &c.F}) {
        check_finite(*v, "q_form_coeffs");
    }
    return c;
}

template <Field T>
T identity_residual(const QHParams<T>& p, const SequenceBundle<T>& bundle, std::size_t n,
                    const T& s, const T& t, const T& u) {
    if (n + 1 >= bundle.size()) {
        throw Error(ErrorKind::Range, "identity_residual: n = " + std::to_string(n) +
                                          " beyond the bundle horizon");
    }
    const QFormCoeffs<T> c = q_form_coeffs(s, t, u, p);
    auto a = [&](std::size_t k, const T& x) { return T(bundle.alpha[k] * x + bundle.beta[k]); };
    return T(a(n, t) * a(n + 1, t) - c.A * a(n, s) * a(n + 1, s) - c.B * a(n, u) * a(n + 1, s) -
             c.C * a(n, u) * a(n + 1, u));
}

template <Field T>
T affinity_residual(const SequenceBundle<T>& bundle, std::size_t n, const T& s, const T& t,
                    const T& u) {
    if (u == s) {
        throw Error(ErrorKind::Range, "affinity_residual: degenerate interval u = s");
    }
    auto gap = [&](const T& slope, const T& offset) {
        auto f = [&](const T& x) { return T(slope * x + offset); };
        return abs(T(f(t) - ((u - t) * f(s) + (t - s) * f(u)) / (u - s)));
    };
    T worst = gap(bundle.alpha[n], bundle.beta[n]);
    for (T r : {gap(bundle.gamma[n], bundle.delta[n]), gap(bundle.epsilon[n], bundle.phi[n])}) {
        if (r > worst) {
            worst = r;
        }
    }
    return worst;
}

#define QH_INSTANTIATE(T)                                                                    \
    template QFormCoeffs<T> q_form_coeffs<T>(const T&, const T&, const T&, const QHParams<T>&); \
    template T identity_residual<T>(const QHParams<T>&, const SequenceBundle<T>&, std::size_t, \
                                    const T&, const T&, const T&);                           \
    template T affinity_residual<T>(const SequenceBundle<T>&, std::size_t, const T&, const T&, \
                                    const T&);

QH_INSTANTIATE(double)
QH_INSTANTIATE(Rational)

#undef QH_INSTANTIATE

}  // namespace qh
