#pragma once

// q-deformed integers: [n]_q = 1 + q + ... + q^{n-1}, [n]_q! and the
// Gaussian binomial. Nothing divides by 1 - q, so q = 1 collapses to the
// ordinary integers without a special case.

#include <algorithm>
#include <vector>

#include "qh/scalar.hpp"

namespace qh {

template <Field T>
T q_int(long n, const T& q) {
    T sum(0);
    T power(1);
    for (long j = 0; j < n; ++j) {
        sum += power;
        power *= q;
    }
    return sum;
}

template <Field T>
T q_factorial(long n, const T& q) {
    T prod(1);
    T bracket(0);
    T power(1);
    for (long j = 1; j <= n; ++j) {
        bracket += power;  // bracket == [j]_q
        power *= q;
        prod *= bracket;
    }
    return prod;
}

/// Zero outside 0 <= k <= n. Built row by row with the q-Pascal rule
/// [m, i] = [m-1, i-1] + q^i [m-1, i], which needs no division and stays
/// finite where [j]_q vanishes (q = -1).
template <Field T>
T q_binomial(long n, long k, const T& q) {
    if (k < 0 || n < k) {
        return T(0);
    }
    k = std::min(k, n - k);
    const auto width = static_cast<std::size_t>(k) + 1;
    std::vector<T> q_pow(width, T(1));
    for (std::size_t i = 1; i < width; ++i) {
        q_pow[i] = q_pow[i - 1] * q;
    }
    std::vector<T> row(width, T(0));
    row[0] = T(1);
    for (long m = 1; m <= n; ++m) {
        for (std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(m), width - 1); i >= 1; --i) {
            row[i] = row[i - 1] + q_pow[i] * row[i];
        }
    }
    return row[width - 1];
}

}  // namespace qh
