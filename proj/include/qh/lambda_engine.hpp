#pragma once

// The lambda sequence lambda_{n+1} = (1 + q lambda_n) / (1 - z lambda_n),
// lambda_0 = 0, with z = sigma * tau, and the Mobius map f(x|q,z) driving it.
//
// Regimes in the (q, z) plane, z >= 0:
//   StrictAdmissible  -1 < q < 1 - 2 sqrt(z)    lambda_n >= 0, converges geometrically
//   Boundary          q = 1 - 2 sqrt(z)         lambda_n >= 0, converges (or grows when z = 0, q = 1)
//   Oscillatory       1 - 2 sqrt(z) < q <= 1 + 2 sqrt(z)   no real fixed point, lambda changes sign
//   OutOfRange        everything else (z < 0, q <= -1, q > 1 + 2 sqrt(z))
//
// Boundaries are decided without square roots: q < 1 - 2 sqrt(z) iff
// 1 - q > 0 and (1 - q)^2 > 4z, so rational inputs classify exactly.
//
// The fixed point y(q,z) = 2 / (1 - q + sqrt((1-q)^2 - 4z)) solves
// y (1 - z y) = 1 + q y, i.e. z y^2 - (1 - q) y + 1 = 0.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "qh/scalar.hpp"

namespace qh {

template <Field T>
struct MobiusParams {
    T q;
    T z;  // sigma * tau
};

template <Field T>
struct LambdaSeq {
    std::vector<T> values;  // lambda_0 .. lambda_k
    MobiusParams<T> params;
    /// Index whose value could not be computed because 1 - z lambda_{k} == 0.
    std::optional<std::size_t> truncated_at;
};

enum class Regime { StrictAdmissible, Boundary, Oscillatory, OutOfRange };

std::string_view to_string(Regime r);

/// True for StrictAdmissible and Boundary.
inline bool is_admissible(Regime r) {
    return r == Regime::StrictAdmissible || r == Regime::Boundary;
}

/// f(x|q,z). Throws ErrorKind::Pole when 1 - z x == 0.
template <Field T>
T lambda_step(const T& x, const MobiusParams<T>& p);

/// lambda_0 .. lambda_N; stops early at an exact pole and records it.
template <Field T>
LambdaSeq<T> lambda_sequence(const MobiusParams<T>& p, std::size_t n_max);

/// y(q,z) when (1 - q)^2 >= 4z and the denominator is nonzero; nullopt
/// inside the Oscillatory band and when the fixed point sits at infinity
/// (z = 0, q >= 1). Throws ErrorKind::Irrational in exact mode when the
/// discriminant is not a rational square.
template <Field T>
std::optional<T> fixed_point(const MobiusParams<T>& p);

/// Constant C with |f(x) - y| <= C |x - y| for x in [0, 1/sqrt z) when
/// q + z >= 0 and x in [0, 1/|q|) when q + z < 0:
///   q + z > 0:  (q + z) / (1 - sqrt z)^2
///   q + z = 0:  0 (f is identically 1)
///   q + z < 0:  2|q| / (1 + q + sqrt((1-q)^2 - 4z)),  i.e. |q| y / (1 + q y)
/// Requires StrictAdmissible, else ErrorKind::Regime.
template <Field T>
T contraction_constant(const MobiusParams<T>& p);

/// D(q,z) = 4 (q + z) / (1 + q + sqrt((1-q)^2 - 4z))^2, the limit of the
/// chi-recursion ratio kappa_n. Requires StrictAdmissible or Boundary.
template <Field T>
T limit_ratio_D(const MobiusParams<T>& p);

/// Count of n with lambda_n * lambda_{n+1} < 0.
template <Field T>
std::size_t sign_changes(const LambdaSeq<T>& seq);

template <Field T>
Regime regime_classify(const MobiusParams<T>& p);

}  // namespace qh
