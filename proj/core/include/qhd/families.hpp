#pragma once

#include <qhd/configuration.hpp>
#include <qhd/graph.hpp>
#include <qhd/sandwich.hpp>

#include <optional>
#include <string>
#include <vector>

namespace qhd {

/// Arithmetic in GF(p^k), elements encoded as integers 0..q-1 (base-p digits
/// of the residue polynomial).
class FiniteField {
public:
    /// Throws Unsupported unless q is a prime power >= 2.
    explicit FiniteField(int q);

    [[nodiscard]] auto order() const noexcept -> int { return _q; }
    [[nodiscard]] auto characteristic() const noexcept -> int { return _p; }
    [[nodiscard]] auto add(int a, int b) const -> int { return _add[a][b]; }
    [[nodiscard]] auto mul(int a, int b) const -> int { return _mul[a][b]; }

private:
    int _q = 0;
    int _p = 0;
    std::vector<std::vector<int>> _add;
    std::vector<std::vector<int>> _mul;
};

/// Points and lines of PG(2, q) as normalized coordinate triples.
auto projective_plane(int q) -> Configuration;

/// The projective plane of order n; for l > 0, the modification through a
/// point x with new points a_1..a_l.
auto fpp_config(int n, int l = 0) -> Configuration;

enum class ClusterExtension { None, Cluster, Star };

/// Cl(k, n) (k < 0 for the complement variant), optionally extended by a set
/// B of size |b|.
auto cl_config(int k, int n, ClusterExtension extension = ClusterExtension::None, int b = 0) -> Configuration;

/// Curves X ∪ {y_i}, or X ∪ (Y \ {y_i}) when the parameter of X is negative,
/// for (X, Y) = (A, B), (B, C), (C, A).
auto t_config(int a, int b, int c) -> Configuration;

struct Reconstruction {
    PlumbingTree tree;
    std::string end;
    /// Vertex carrying each configuration curve, in configuration order.
    std::vector<std::string> curve_vertex;
    /// Presentation with curves in configuration order.
    SandwichPresentation presentation;
};

/// Builds the prefix tree of the curves from their pairwise intersections.
/// Throws InvalidInput when the numbers are not realizable by a tree.
auto reconstruct_graph(const Configuration & config) -> Reconstruction;

/// The configuration with each curve's vertex taken from the reconstruction.
auto with_vertices(Configuration config, const Reconstruction & reconstruction) -> Configuration;

struct NamedConfiguration {
    std::string name;
    Configuration config;
    Reconstruction reconstruction;
};

/// "fpp(2)", "fpp(2)_1", "Cl(2,2)", "Cl(-3,2)+cluster(2)", "Cl(2,2)+star(2)",
/// "t(2,-2,2)".
auto named_configuration(std::string_view name) -> NamedConfiguration;

/// Configurations used across tests and sweeps.
auto catalog_configurations() -> std::vector<NamedConfiguration>;

} // namespace qhd
