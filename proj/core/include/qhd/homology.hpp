#pragma once

#include <qhd/configuration.hpp>
#include <qhd/lattice.hpp>
#include <qhd/matrix.hpp>

#include <optional>
#include <vector>

namespace qhd {

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ...
struct SmithForm {
    std::vector<BigInt> divisors;
    IntMatrix u;
    IntMatrix v;
    std::size_t rank = 0;
};

auto smith_form(const IntMatrix & a) -> SmithForm;

/// Integer basis of {x : a x = 0}, as columns gathered into rows.
auto integer_kernel(const IntMatrix & a) -> std::vector<std::vector<BigInt>>;

/// LLL-reduced basis (delta = 3/4) for the Euclidean inner product.
auto lll_reduce(std::vector<std::vector<BigInt>> basis) -> std::vector<std::vector<BigInt>>;

struct FiberInvariants {
    long mu = 0;
    /// Rank of the incidence map.
    std::size_t rank = 0;
    /// Elementary divisors > 1 of the cokernel.
    std::vector<BigInt> h1_torsion;
    /// Free rank of the cokernel.
    std::size_t h1_free_rank = 0;
    /// LLL-reduced, first non-zero entry positive.
    std::vector<std::vector<BigInt>> kernel_basis;
    IntMatrix restricted_form;
    std::vector<BigInt> canonical_pairing;
};

/// I maps point space to curve space; the Milnor lattice is its kernel with
/// the negative of the Euclidean product, K = (1, ..., 1).
auto fiber_invariants(const Configuration & config) -> FiberInvariants;

/// Square of the projection of K = (1, ..., 1) onto ker I, in the negative
/// definite ambient lattice.
auto zk_via_projection(const Configuration & config) -> Rational;

/// |det I|^2 == |det Q|. Throws InvalidInput when I is not square or singular.
auto qhd_det_check(const Configuration & config, const IntersectionForm & form) -> bool;

struct CongruenceReport {
    /// Size, determinant and elementary divisors agree.
    bool invariants_match = false;
    /// Whether the bounded search ran (size <= 4 and invariants match).
    bool searched = false;
    /// U with U^T a U = b, when found.
    std::optional<IntMatrix> transform;
};

/// Invariant comparison, then a search over unimodular U with entries of
/// absolute value <= bound for forms of size <= 4.
auto congruence(const IntMatrix & a, const IntMatrix & b, int bound = 3) -> CongruenceReport;

} // namespace qhd
