#pragma once

#include <qhd/common.hpp>

#include <optional>
#include <vector>

namespace qhd {

using IntMatrix = std::vector<std::vector<BigInt>>;
using RatMatrix = std::vector<std::vector<Rational>>;

auto zero_matrix(std::size_t rows, std::size_t cols) -> IntMatrix;
auto identity_matrix(std::size_t n) -> IntMatrix;
auto transpose(const IntMatrix & m) -> IntMatrix;
auto multiply(const IntMatrix & a, const IntMatrix & b) -> IntMatrix;

/// Fraction-free (Bareiss) elimination with row pivoting.
auto determinant(IntMatrix m) -> BigInt;

/// Leading principal minors D_1..D_k, stopping after the first zero.
auto leading_principal_minors(IntMatrix m) -> std::vector<BigInt>;

/// sign(D_k) = (-1)^k for every k.
auto is_negative_definite(const IntMatrix & m) -> bool;

/// Exact solution of m x = b, or nullopt when m is singular.
auto solve(const IntMatrix & m, const std::vector<Rational> & b) -> std::optional<std::vector<Rational>>;

auto rank(const IntMatrix & m) -> std::size_t;

/// floor(sqrt(n)) for n >= 0.
auto integer_sqrt(const BigInt & n) -> BigInt;
auto is_square(const BigInt & n) -> bool;

} // namespace qhd
