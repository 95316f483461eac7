#pragma once

/// @file theory_exact.hpp
/// @brief Exact rational evaluation of the scaled hitting-time closed forms.
///
/// This is a validation oracle. It follows the integer-scaled algebra
/// (mu^(2 lambda + 1) / (mu^(2 lambda + 1) - sum_alpha {...}^m) and its
/// Poisson analogue) rather than the probability-space path in theory.cpp, so
/// agreement between the two certifies the normalization.

#include <boost/multiprecision/cpp_int.hpp>

#include "bitswap/theory.hpp"

namespace bitswap::theory {

using Rational = boost::multiprecision::cpp_rational;

/// Cost guard for eta_exact_rational.
inline constexpr int kExactMaxMu = 6;
inline constexpr int kExactMaxLambda = 6;
inline constexpr int kExactMaxN = 64;

/// Exact E tau for any query `evaluate` accepts. Throws GuardExceeded when
/// mu > 6, lambda > 6 or n > 64.
[[nodiscard]] Rational eta_exact_rational(const TheoryQuery& q);

[[nodiscard]] double to_double(const Rational& r);

} // namespace bitswap::theory
