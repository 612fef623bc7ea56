#include "qh/sampling.hpp"

#include <array>

namespace qh {

namespace {

constexpr std::array<long, 7> kDenominators{1, 2, 3, 4, 5, 6, 8};

}  // namespace

long Sampler::integer(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(rng_() % span);
}

Rational Sampler::rational(const Rational& lo, const Rational& hi) {
    for (;;) {
        const long den = kDenominators[static_cast<std::size_t>(integer(0, kDenominators.size() - 1))];
        mpz_class a = lo.get_num() * den;
        mpz_class b = hi.get_num() * den;
        mpz_class first;
        mpz_class last;
        mpz_cdiv_q(first.get_mpz_t(), a.get_mpz_t(), lo.get_den().get_mpz_t());
        mpz_fdiv_q(last.get_mpz_t(), b.get_mpz_t(), hi.get_den().get_mpz_t());
        if (last < first) {
            continue;
        }
        const long k = integer(first.get_si(), last.get_si());
        Rational r(k, den);
        r.canonicalize();
        return r;
    }
}

QHParams<Rational> Sampler::strict_admissible() {
    for (;;) {
        QHParams<Rational> p;
        p.sigma = rational(0, 1);
        p.tau = rational(0, 1);
        p.theta = rational(-2, 2);
        p.eta = rational(-2, 2);
        p.q = rational(Rational(-15, 16), 1);
        if (regime_of(p) == Regime::StrictAdmissible) {
            return p;
        }
    }
}

QHParams<Rational> Sampler::for_case(SpecialCase c) {
    QHParams<Rational> p;
    auto free_q = [&] { return rational(Rational(-15, 16), 1); };
    auto coef = [&] { return rational(-2, 2); };
    switch (c) {
        case SpecialCase::TauThetaZero:
            p.sigma = rational(0, 1);
            p.eta = coef();
            p.q = free_q();
            break;
        case SpecialCase::SigmaEtaZero:
            p.tau = rational(0, 1);
            p.theta = coef();
            p.q = free_q();
            break;
        case SpecialCase::TauEtaZero:
            p.sigma = rational(0, 1);
            p.theta = coef();
            p.q = free_q();
            break;
        case SpecialCase::SigmaThetaZero:
            p.tau = rational(0, 1);
            p.eta = coef();
            p.q = free_q();
            break;
        case SpecialCase::SigmaTauZero:
            p.theta = coef();
            p.eta = coef();
            p.q = free_q();
            break;
        case SpecialCase::QSigmaZero:
            p.tau = rational(0, 1);
            p.theta = coef();
            p.eta = coef();
            break;
        case SpecialCase::QTauZero:
            p.sigma = rational(0, 1);
            p.theta = coef();
            p.eta = coef();
            break;
        case SpecialCase::QEqualsMinusSigmaTau:
            p.sigma = rational(0, 1);
            p.tau = rational(0, Rational(9, 10));
            p.theta = coef();
            p.eta = coef();
            p.q = Rational(-p.sigma * p.tau);
            break;
        case SpecialCase::BoundaryQ: {
            static constexpr long roots[] = {2, 3, 4};
            const Rational s(1, roots[integer(0, 2)]);
            const Rational ratio = rational(Rational(1, 4), 4);
            p.sigma = Rational(s * ratio);
            p.tau = Rational(s / ratio);
            p.q = Rational(1 - 2 * s);
            break;
        }
        case SpecialCase::None:
            return strict_admissible();
    }
    return p;
}

Sampler::Times Sampler::times() {
    Rational s = rational(Rational(1, 8), 3);
    Rational t = Rational(s + rational(Rational(1, 8), 2));
    Rational u = Rational(t + rational(Rational(1, 8), 2));
    return {s, t, u};
}

}  // namespace qh
