#pragma once

// 2x2 matrices and 2-vectors over a Field. Just enough linear algebra for the
// (gamma, delta) recursion: products, transpose, determinant and a solve.

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>

#include "qh/scalar.hpp"

namespace qh {

template <Field T>
struct Vec2 {
    T x{0};
    T y{0};

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

template <Field T>
struct Mat2 {
    // row-major: [[a, b], [c, d]]
    T a{0};
    T b{0};
    T c{0};
    T d{0};

    static Mat2 identity() { return {T(1), T(0), T(0), T(1)}; }
    static Mat2 zero() { return {}; }

    T det() const { return T(a * d - b * c); }
    Mat2 transpose() const { return {a, c, b, d}; }

    friend bool operator==(const Mat2&, const Mat2&) = default;
};

template <Field T>
Vec2<T> operator+(const Vec2<T>& u, const Vec2<T>& v) {
    return {T(u.x + v.x), T(u.y + v.y)};
}

template <Field T>
Vec2<T> operator-(const Vec2<T>& u, const Vec2<T>& v) {
    return {T(u.x - v.x), T(u.y - v.y)};
}

template <Field T>
T dot(const Vec2<T>& u, const Vec2<T>& v) {
    return T(u.x * v.x + u.y * v.y);
}

template <Field T>
Mat2<T> operator+(const Mat2<T>& m, const Mat2<T>& n) {
    return {T(m.a + n.a), T(m.b + n.b), T(m.c + n.c), T(m.d + n.d)};
}

template <Field T>
Mat2<T> operator*(const T& s, const Mat2<T>& m) {
    return {T(s * m.a), T(s * m.b), T(s * m.c), T(s * m.d)};
}

template <Field T>
Mat2<T> operator*(const Mat2<T>& m, const Mat2<T>& n) {
    return {T(m.a * n.a + m.b * n.c), T(m.a * n.b + m.b * n.d),
            T(m.c * n.a + m.d * n.c), T(m.c * n.b + m.d * n.d)};
}

template <Field T>
Vec2<T> operator*(const Mat2<T>& m, const Vec2<T>& v) {
    return {T(m.a * v.x + m.b * v.y), T(m.c * v.x + m.d * v.y)};
}

/// Solves m * x = rhs. Exact mode uses Cramer's rule (cross-elimination);
/// float mode eliminates with the larger pivot of the first column and
/// scales rows first, since A_n approaches singularity near the regime
/// boundary. Throws ErrorKind::Pole when m is singular.
template <Field T>
Vec2<T> solve(const Mat2<T>& m, const Vec2<T>& rhs) {
    if constexpr (is_exact_v<T>) {
        const T det = m.det();
        if (sign(det) == 0) {
            throw Error(ErrorKind::Pole, "singular 2x2 system");
        }
        return {T((rhs.x * m.d - m.b * rhs.y) / det), T((m.a * rhs.y - m.c * rhs.x) / det)};
    } else {
        std::array<std::array<double, 3>, 2> rows{{{m.a, m.b, rhs.x}, {m.c, m.d, rhs.y}}};
        for (auto& r : rows) {
            const double scale = std::max(std::fabs(r[0]), std::fabs(r[1]));
            if (scale == 0.0) {
                throw Error(ErrorKind::Pole, "singular 2x2 system");
            }
            for (double& e : r) {
                e /= scale;
            }
        }
        if (std::fabs(rows[1][0]) > std::fabs(rows[0][0])) {
            std::swap(rows[0], rows[1]);
        }
        if (rows[0][0] == 0.0) {
            throw Error(ErrorKind::Pole, "singular 2x2 system");
        }
        const double factor = rows[1][0] / rows[0][0];
        const double d22 = rows[1][1] - factor * rows[0][1];
        const double r2 = rows[1][2] - factor * rows[0][2];
        if (d22 == 0.0) {
            throw Error(ErrorKind::Pole, "singular 2x2 system");
        }
        const double y = r2 / d22;
        const double x = (rows[0][2] - rows[0][1] * y) / rows[0][0];
        check_finite(x, "2x2 solve");
        check_finite(y, "2x2 solve");
        return {x, y};
    }
}

/// Solves m * X = rhs column by column.
template <Field T>
Mat2<T> solve(const Mat2<T>& m, const Mat2<T>& rhs) {
    const Vec2<T> c0 = solve(m, Vec2<T>{rhs.a, rhs.c});
    const Vec2<T> c1 = solve(m, Vec2<T>{rhs.b, rhs.d});
    return {c0.x, c1.x, c0.y, c1.y};
}

template <Field T>
T max_abs_entry(const Mat2<T>& m) {
    T r = abs(m.a);
    for (const T* e : {&m.b, &m.c, &m.d}) {
        T v = abs(*e);
        if (v > r) {
            r = v;
        }
    }
    return r;
}

}  // namespace qh
