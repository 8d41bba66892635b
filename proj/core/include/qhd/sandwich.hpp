#pragma once

#include <qhd/configuration.hpp>
#include <qhd/graph.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qhd {

enum class BranchKind { Smooth, Cusp };

auto to_string(BranchKind kind) -> std::string;

struct PresentationCurve {
    std::string vertex;
    /// l(i): total multiplicity over the cluster.
    int size = 0;
    BranchKind kind = BranchKind::Smooth;
    std::string label;
    /// Long-arm index i of a C curve in a star presentation; -1 otherwise.
    int arm_position = -1;
};

/// Γ with its end vertex and one entry per curvetta. gram[i][i] = l(i);
/// off-diagonal entries are the prescribed intersection numbers.
struct SandwichPresentation {
    PlumbingTree base;
    std::string end_vertex;
    std::vector<PresentationCurve> curves;
    SmallMatrix gram;
    /// m(i), filled when computed from a cluster.
    std::vector<int> minimal_multiplicity;

    [[nodiscard]] auto curve_count(std::string_view vertex) const -> std::size_t;
    [[nodiscard]] auto curves_at(std::string_view vertex) const -> std::vector<std::size_t>;
    [[nodiscard]] auto has_cusps() const -> bool;
};

/// -(deg(v) + e(v)) - [v is the end]
auto required_curve_count(const PlumbingTree & tree, std::size_t v, std::size_t end) -> long;

/// Curves grouped by vertex in tree order. Throws InvalidInput when some
/// required count is negative.
auto presentation_smooth(const PlumbingTree & tree, std::string_view end) -> SandwichPresentation;

/// G_ii = |p(w_i, v)| + 1, G_ij = |p(w_i, v) ∩ p(w_j, v)|, for the curve-to-vertex
/// assignment stored in the presentation.
auto gram_smooth(const SandwichPresentation & presentation) -> SmallMatrix;

/// Throws InvalidInput unless the curve counts match the smooth formula.
void check_smooth_counts(const SandwichPresentation & presentation);

// ---- blowup clusters ------------------------------------------------------

struct ClusterPoint {
    /// Exceptional curve born at this point.
    std::string vertex;
    /// Earlier points (blowup order) whose exceptional curves pass through this one.
    std::vector<std::size_t> proximate_to;
};

struct BlowupCluster {
    /// Blowup order; point 0 is the origin.
    std::vector<ClusterPoint> points;
    /// Terminal point of each curvetta.
    std::vector<std::size_t> curvetta_point;
    std::vector<std::string> curvetta_label;

    /// Throws InvalidInput on violated proximity invariants.
    void validate() const;
    /// The latest point this one is proximate to.
    [[nodiscard]] auto parent(std::size_t p) const -> std::size_t;
};

/// Γ plus one -1 leaf per curve; leaf ids are returned per curve index.
struct TildeGraph {
    PlumbingTree tree;
    std::vector<std::string> leaves;
};

auto tilde_graph(const SandwichPresentation & presentation) -> TildeGraph;

/// Contracts -1 vertices of degree <= 2 (smallest index first) until nothing
/// is left. The curvetta on leaf k terminates at that leaf's point.
auto blowdown_cluster(const PlumbingTree & tilde, const std::vector<std::string> & curvetta_leaves,
    const std::vector<std::string> & labels = {}) -> BlowupCluster;
auto blowdown_cluster(const SandwichPresentation & presentation) -> BlowupCluster;

struct NoetherData {
    /// G_ij = Σ_P m_P(i) m_P(j) off the diagonal, l(i) on it.
    SmallMatrix gram;
    std::vector<int> sizes;
    /// Σ_P m_P(i)^2
    std::vector<int> self_pairing;
    std::vector<int> minimal_multiplicity;
    /// multiplicity[i][P]
    std::vector<std::vector<int>> multiplicity;
};

/// Multiplicities by the proximity equality, intersections by Noether's formula.
/// m(i) sums the multiplicities up to the last point of branch i that is
/// singular, satellite, or shared with another branch.
auto noether_gram(const BlowupCluster & cluster) -> NoetherData;

/// Multiplicity sequence of curvetta i along its branch, origin first.
auto multiplicity_sequence(const BlowupCluster & cluster, std::size_t curvetta) -> std::vector<int>;

// ---- star families --------------------------------------------------------

enum class StarFamily { C6, C3, C2, B2, B4, A3, A4Deg4, B4Deg4, C4Deg4 };

auto to_string(StarFamily family) -> std::string;
auto parse_star_family(std::string_view s) -> StarFamily;
auto all_star_families() -> std::vector<StarFamily>;

struct StarFamilyShape {
    AbcFamily parent;
    /// Degree of the node: 3, or 4 for the vertex-blowup families.
    int degree = 3;
    int l_count = 0;
    int s_count = 0;
    int gamma_count = 0;
    /// Seed arms (0 = a, 1 = b, 2 = c) playing E1, E2, the long arm (degree 3)
    /// or E' (degree 4).
    int e1_arm = 0;
    int e2_arm = 0;
    int third_arm = 0;
};

auto star_shape(StarFamily family) -> StarFamilyShape;

struct StarFamilyInstance {
    StarFamily family = StarFamily::C6;
    /// Vertices on the long arm.
    int n = 1;
    /// cusps[i]: cusp curvettas on long-arm vertex i (0 = node, n = end).
    std::vector<int> cusps;

    /// Smallest i with a cusp.
    [[nodiscard]] auto ell() const -> int;
};

/// Throws InvalidInput unless the instance is well formed with 4+n curves.
void validate_instance(const StarFamilyInstance & instance);

/// The star Γ: E1, E2, node E3, long arm A1..An, and Ep in degree 4.
auto star_graph(const StarFamilyInstance & instance) -> PlumbingTree;

/// Closed-form cusp table entries for each pair of curves; sizes on the diagonal.
auto cusp_table_gram(const SandwichPresentation & presentation) -> SmallMatrix;

/// Curves L, S, G (exceptional cusps), C (cusps by index). The Gram matrix is
/// computed by the cluster engine and must agree with cusp_table_gram where the table
/// has a value; rows involving two G curves come from the cluster alone.
auto star_presentation(const StarFamilyInstance & instance) -> SandwichPresentation;

/// Reads the cusp placement off an abc_generate tree (seed arm ids "a", "b",
/// "c", node "n"); nullopt when the tree is not a star of this family's shape.
auto star_instance_from_tree(StarFamily family, const PlumbingTree & tree) -> std::optional<StarFamilyInstance>;

// ---- Scott configuration and switching ----------------------------------

/// Points: every vertex, then one free point per curve.
auto scott_incidence(const SandwichPresentation & presentation) -> Configuration;

struct SwitchResult {
    SandwichPresentation presentation;
    Configuration config;
};

/// Makes w the end vertex. The chosen curve (index) moves to the old end; every
/// other curve becomes its symmetric difference with the chosen one.
auto switch_end(const SandwichPresentation & presentation, const Configuration & config, std::string_view w,
    std::size_t chosen_curve) -> SwitchResult;

} // namespace qhd
