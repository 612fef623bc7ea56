#include "qh/lambda_engine.hpp"

namespace qh {

std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::StrictAdmissible: return "StrictAdmissible";
        case Regime::Boundary: return "Boundary";
        case Regime::Oscillatory: return "Oscillatory";
        case Regime::OutOfRange: return "OutOfRange";
    }
    return "OutOfRange";
}

template <Field T>
T lambda_step(const T& x, const MobiusParams<T>& p) {
    const T den = T(1) - p.z * x;
    if (sign(den) == 0) {
        throw Error(ErrorKind::Pole, "lambda iteration hit the pole 1 - z x = 0");
    }
    T r = (T(1) + p.q * x) / den;
    check_finite(r, "lambda_step");
    return r;
}

template <Field T>
LambdaSeq<T> lambda_sequence(const MobiusParams<T>& p, std::size_t n_max) {
    LambdaSeq<T> seq{{}, p, std::nullopt};
    seq.values.reserve(n_max + 1);
    seq.values.emplace_back(0);
    for (std::size_t n = 0; n < n_max; ++n) {
        const T& x = seq.values.back();
        if (sign(T(T(1) - p.z * x)) == 0) {
            seq.truncated_at = n + 1;
            break;
        }
        seq.values.push_back(lambda_step(x, p));
    }
    return seq;
}

template <Field T>
Regime regime_classify(const MobiusParams<T>& p) {
    if (sign(p.z) < 0 || p.q <= T(-1)) {
        return Regime::OutOfRange;
    }
    const T one_minus_q = T(1) - p.q;
    const T disc = T(one_minus_q * one_minus_q - 4 * p.z);
    // q <= 1 - 2 sqrt(z)  <=>  1 - q >= 0 and (1 - q)^2 >= 4z
    if (sign(one_minus_q) >= 0 && sign(disc) >= 0) {
        return sign(disc) == 0 ? Regime::Boundary : Regime::StrictAdmissible;
    }
    // q <= 1 + 2 sqrt(z)  <=>  q <= 1 or (q - 1)^2 <= 4z
    if (sign(one_minus_q) >= 0 || sign(disc) <= 0) {
        return Regime::Oscillatory;
    }
    return Regime::OutOfRange;
}

template <Field T>
std::optional<T> fixed_point(const MobiusParams<T>& p) {
    const T one_minus_q = T(1) - p.q;
    const T disc = T(one_minus_q * one_minus_q - 4 * p.z);
    if (sign(disc) < 0) {
        return std::nullopt;
    }
    const T den = T(one_minus_q + field_sqrt(disc));
    if (sign(den) == 0) {
        return std::nullopt;
    }
    return T(T(2) / den);
}

template <Field T>
T contraction_constant(const MobiusParams<T>& p) {
    if (regime_classify(p) != Regime::StrictAdmissible) {
        throw Error(ErrorKind::Regime, "contraction constant requires q < 1 - 2 sqrt(z)");
    }
    const T q_plus_z = T(p.q + p.z);
    switch (sign(q_plus_z)) {
        case 0:
            return T(0);
        case 1: {
            const T gap = T(1) - field_sqrt(p.z);
            return T(q_plus_z / (gap * gap));
        }
        default: {
            // sup over x in [0, 1/|q|) of |q + z| / ((1 - zx)(1 - zy)) = |q| y / (1 + q y)
            const T one_minus_q = T(1) - p.q;
            const T root = field_sqrt(T(one_minus_q * one_minus_q - 4 * p.z));
            return T(2 * abs(p.q) / (1 + p.q + root));
        }
    }
}

template <Field T>
T limit_ratio_D(const MobiusParams<T>& p) {
    if (!is_admissible(regime_classify(p))) {
        throw Error(ErrorKind::Regime, "limit ratio D requires q <= 1 - 2 sqrt(z)");
    }
    const T one_minus_q = T(1) - p.q;
    const T root = field_sqrt(T(one_minus_q * one_minus_q - 4 * p.z));
    const T den = T(1 + p.q + root);
    if (sign(den) == 0) {
        throw Error(ErrorKind::Pole, "limit ratio D undefined: 1 + q + sqrt(disc) == 0");
    }
    return T(4 * (p.q + p.z) / (den * den));
}

template <Field T>
std::size_t sign_changes(const LambdaSeq<T>& seq) {
    std::size_t count = 0;
    for (std::size_t n = 0; n + 1 < seq.values.size(); ++n) {
        if (sign(seq.values[n]) * sign(seq.values[n + 1]) < 0) {
            ++count;
        }
    }
    return count;
}

#define QH_INSTANTIATE(T)                                                        \
    template T lambda_step<T>(const T&, const MobiusParams<T>&);                 \
    template LambdaSeq<T> lambda_sequence<T>(const MobiusParams<T>&, std::size_t); \
    template std::optional<T> fixed_point<T>(const MobiusParams<T>&);            \
    template T contraction_constant<T>(const MobiusParams<T>&);                  \
    template T limit_ratio_D<T>(const MobiusParams<T>&);                         \
    template std::size_t sign_changes<T>(const LambdaSeq<T>&);                   \
    template Regime regime_classify<T>(const MobiusParams<T>&);

QH_INSTANTIATE(double)
QH_INSTANTIATE(Rational)

#undef QH_INSTANTIATE

}  // namespace qh
