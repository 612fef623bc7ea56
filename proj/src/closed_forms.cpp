#include "qh/closed_forms.hpp"

#include "qh/qnum.hpp"

namespace qh {

std::string_view to_string(SpecialCase c) {
    switch (c) {
        case SpecialCase::TauThetaZero: return "TauThetaZero";
        case SpecialCase::SigmaEtaZero: return "SigmaEtaZero";
        case SpecialCase::TauEtaZero: return "TauEtaZero";
        case SpecialCase::SigmaThetaZero: return "SigmaThetaZero";
        case SpecialCase::SigmaTauZero: return "SigmaTauZero";
        case SpecialCase::QSigmaZero: return "QSigmaZero";
        case SpecialCase::QTauZero: return "QTauZero";
        case SpecialCase::QEqualsMinusSigmaTau: return "QEqualsMinusSigmaTau";
        case SpecialCase::BoundaryQ: return "BoundaryQ";
        case SpecialCase::None: return "None";
    }
    return "None";
}

template <Field T>
bool satisfies(SpecialCase c, const QHParams<T>& p) {
    auto zero = [](const T& v) { return sign(v) == 0; };
    switch (c) {
        case SpecialCase::TauThetaZero: return zero(p.tau) && zero(p.theta);
        case SpecialCase::SigmaEtaZero: return zero(p.sigma) && zero(p.eta);
        case SpecialCase::TauEtaZero: return zero(p.tau) && zero(p.eta);
        case SpecialCase::SigmaThetaZero: return zero(p.sigma) && zero(p.theta);
        case SpecialCase::SigmaTauZero: return zero(p.sigma) && zero(p.tau);
        case SpecialCase::QSigmaZero: return zero(p.q) && zero(p.sigma);
        case SpecialCase::QTauZero: return zero(p.q) && zero(p.tau);
        case SpecialCase::QEqualsMinusSigmaTau: return zero(T(p.q + p.sigma_tau()));
        case SpecialCase::BoundaryQ:
            return zero(p.theta) && zero(p.eta) && regime_of(p) == Regime::Boundary;
        case SpecialCase::None: return false;
    }
    return false;
}

template <Field T>
SpecialCase detect_case(const QHParams<T>& p) {
    static constexpr SpecialCase precedence[] = {
        SpecialCase::SigmaTauZero,   SpecialCase::TauThetaZero, SpecialCase::SigmaEtaZero,
        SpecialCase::TauEtaZero,     SpecialCase::SigmaThetaZero, SpecialCase::QSigmaZero,
        SpecialCase::QTauZero,       SpecialCase::QEqualsMinusSigmaTau, SpecialCase::BoundaryQ,
    };
    for (SpecialCase c : precedence) {
        if (satisfies(c, p)) {
            return c;
        }
    }
    return SpecialCase::None;
}

template <Field T>
T boundary_chi_step(const T& chi_n, std::size_t n, const T& s) {
    const T k(static_cast<long>(n));
    const T a = T(1 + (k - 1) * s);
    const T b = T(1 + (k - 2) * s);
    const T c = T(1 + 2 * k * s);
    const T one_minus_s = T(1 - s);
    const T ratio = T((1 + 2 * (k - 2) * s) * a * a / (c * b * b));
    return T(ratio * chi_n + a * a / (one_minus_s * one_minus_s * c));
}

template <Field T>
T boundary_chi(std::size_t n, const T& s) {
    if (n == 1) {
        // (1 + (n-3)s) / (1 + 2(n-2)s) cancels to 1 at n = 1; evaluating it
        // literally would give 0/0 at s = 1/2.
        return T(1);
    }
    const T k(static_cast<long>(n));
    const T one_minus_s = T(1 - s);
    const T num = T(k * (1 + (k - 2) * s) * (1 + (k - 2) * s) * (1 + (k - 3) * s));
    const T den = T(one_minus_s * one_minus_s * (1 + 2 * (k - 1) * s) * (1 + 2 * (k - 2) * s));
    return T(num / den);
}

template <Field T>
CoefficientTable<T> closed_table(SpecialCase c, const QHParams<T>& p, std::size_t n_max) {
    if (!satisfies(c, p)) {
        throw Error(ErrorKind::Hypothesis, "parameters do not satisfy the hypothesis of case " +
                                               std::string(to_string(c)));
    }
    CoefficientTable<T> t;
    t.N = n_max;
    t.params = p;
    const std::size_t len = n_max + 1;
    t.lambda.assign(len, T(0));
    t.gamma.assign(len, T(0));
    t.delta.assign(len, T(0));
    t.chi.assign(len, T(0));

    const T& sig = p.sigma;
    const T& tau = p.tau;
    const T& th = p.theta;
    const T& eta = p.eta;
    const T& q = p.q;

    for (std::size_t n = 0; n < len; ++n) {
        const long m = static_cast<long>(n);
        const T qn = q_int<T>(m, q);
        const T qn1 = m >= 1 ? q_int<T>(m - 1, q) : T(0);
        T& lam = t.lambda[n];
        T& ga = t.gamma[n];
        T& de = t.delta[n];
        T& chi = t.chi[n];
        const bool first = n == 1;
        switch (c) {
            case SpecialCase::TauThetaZero:
                lam = qn;
                ga = T(qn * eta);
                chi = n >= 1 ? qn : T(0);
                break;
            case SpecialCase::SigmaEtaZero:
                lam = qn;
                de = T(qn * th);
                chi = n >= 1 ? qn : T(0);
                break;
            case SpecialCase::TauEtaZero:
                lam = qn;
                ga = T(qn * (qn + qn1) * th * sig);
                de = T(qn * th);
                chi = n >= 1 ? T(qn + qn1 * qn1 * qn * th * th * sig) : T(0);
                break;
            case SpecialCase::SigmaThetaZero:
                lam = qn;
                ga = T(qn * eta);
                de = T(qn * (qn1 + qn) * eta * tau);
                chi = n >= 1 ? T(qn + qn1 * qn1 * qn * eta * eta * tau) : T(0);
                break;
            case SpecialCase::SigmaTauZero:
                lam = qn;
                ga = T(qn * eta);
                de = T(qn * th);
                chi = n >= 1 ? T(qn + th * eta * qn * qn1) : T(0);
                break;
            case SpecialCase::QSigmaZero:
                if (n == 0) break;
                lam = T(1);
                ga = eta;
                de = first ? T(th + eta * tau) : T(th + 2 * eta * tau);
                chi = first ? T(1) : T(1 + eta * th + eta * eta * tau);
                break;
            case SpecialCase::QTauZero:
                if (n == 0) break;
                lam = T(1);
                ga = first ? T(eta + sig * th) : T(eta + 2 * sig * th);
                de = th;
                chi = first ? T(1) : T(1 + eta * th + th * th * sig);
                break;
            case SpecialCase::QEqualsMinusSigmaTau: {
                if (n == 0) break;
                const T st = p.sigma_tau();
                const T d = T(1 - st);
                lam = T(1);
                if (first) {
                    ga = T((eta + sig * th) / d);
                    de = T((th + tau * eta) / d);
                    chi = T(1);
                } else {
                    ga = T((eta + 2 * th * sig + eta * st) / (d * d));
                    de = T((th + 2 * eta * tau + th * st) / (d * d));
                    const T big_p = T(d * d + (eta + th * sig) * (th + eta * tau));
                    chi = n == 2 ? T(big_p / (d * d * d)) : T(big_p / (d * d * d * d));
                }
                break;
            }
            case SpecialCase::BoundaryQ: {
                const T s = field_sqrt(p.sigma_tau());
                lam = T(T(m) / (1 + (T(m) - 1) * s));
                chi = n >= 1 ? boundary_chi<T>(n, s) : T(0);
                break;
            }
            case SpecialCase::None:
                break;
        }
    }
    return t;
}

template <Field T>
T verify_against_recursion(SpecialCase c, const QHParams<T>& p, std::size_t n_max) {
    const CoefficientTable<T> closed = closed_table(c, p, n_max);
    const CoefficientTable<T> solved = solve_table(p, n_max);
    T worst(0);
    auto compare = [&worst](const std::vector<T>& a, const std::vector<T>& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            T d = abs(T(a[i] - b[i]));
            if (d > worst) {
                worst = d;
            }
        }
    };
    compare(closed.lambda, solved.lambda);
    compare(closed.gamma, solved.gamma);
    compare(closed.delta, solved.delta);
    compare(closed.chi, solved.chi);
    return worst;
}

#define QH_INSTANTIATE(T)                                                                   \
    template bool satisfies<T>(SpecialCase, const QHParams<T>&);                            \
    template SpecialCase detect_case<T>(const QHParams<T>&);                                \
    template CoefficientTable<T> closed_table<T>(SpecialCase, const QHParams<T>&, std::size_t); \
    template T verify_against_recursion<T>(SpecialCase, const QHParams<T>&, std::size_t);   \
    template T boundary_chi_step<T>(const T&, std::size_t, const T&);                       \
    template T boundary_chi<T>(std::size_t, const T&);

QH_INSTANTIATE(double)
QH_INSTANTIATE(Rational)

#undef QH_INSTANTIATE

}  // namespace qh
