#include <gtest/gtest.h>

#include "qh/qnum.hpp"
#include "test_helpers.hpp"

using namespace qh;
using qh::test::R;

namespace {

Rational pow_q(const Rational& q, long n) {
    Rational r(1);
    for (long i = 0; i < n; ++i) {
        r *= q;
    }
    return r;
}

}  // namespace

TEST(QInt, Examples) {
    EXPECT_EQ(q_int<Rational>(0, R(1, 2)), 0);
    EXPECT_EQ(q_int<Rational>(3, R(1)), 3);
    EXPECT_EQ(q_int<Rational>(3, R(1, 2)), R(7, 4));
    EXPECT_DOUBLE_EQ(q_int<double>(3, 0.5), 1.75);
}

TEST(QInt, MatchesGeometricSumFormula) {
    for (long n = 0; n <= 20; ++n) {
        for (Rational q : {R(-2, 3), R(1, 5), R(3, 2), R(-1)}) {
            Rational closed = (1 - pow_q(q, n)) / (1 - q);
            EXPECT_EQ(q_int<Rational>(n, q), closed) << "n=" << n;
        }
    }
}

TEST(QFactorial, Examples) {
    EXPECT_EQ(q_factorial<Rational>(0, R(1, 3)), 1);
    EXPECT_EQ(q_factorial<Rational>(3, R(1)), 6);
    EXPECT_EQ(q_factorial<Rational>(2, R(1, 2)), R(3, 2));
}

TEST(QBinomial, Examples) {
    EXPECT_EQ(q_binomial<Rational>(4, 2, R(1)), 6);
    EXPECT_EQ(q_binomial<Rational>(2, 5, R(1, 3)), 0);
    EXPECT_EQ(q_binomial<Rational>(3, 1, R(1, 2)), R(7, 4));
}

TEST(QBinomial, SymmetryAndFactorialRatio) {
    for (Rational q : {R(1, 2), R(-1, 3), R(2), R(1)}) {
        for (long n = 0; n <= 12; ++n) {
            for (long k = 0; k <= n; ++k) {
                const Rational b = q_binomial<Rational>(n, k, q);
                EXPECT_EQ(b, q_binomial<Rational>(n, n - k, q));
                const Rational ratio = q_factorial<Rational>(n, q) /
                                       (q_factorial<Rational>(k, q) * q_factorial<Rational>(n - k, q));
                EXPECT_EQ(b, ratio) << n << " " << k;
            }
        }
    }
}
