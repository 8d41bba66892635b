#pragma once

#include <qhd/common.hpp>

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qhd {

struct Vertex {
    std::string id;
    int framing = 0;
};

/// A vertex-framed tree. Framings are arbitrary integers here; call
/// validate_resolution() before treating the tree as a resolution graph.
/// Vertices are kept in insertion order, which is the "canonical id order"
/// used by every deterministic tie-break in the library.
class PlumbingTree {
public:
    PlumbingTree() = default;

    auto add_vertex(std::string id, int framing) -> std::size_t;
    void add_edge(std::size_t a, std::size_t b);
    void add_edge(std::string_view a, std::string_view b);

    [[nodiscard]] auto size() const noexcept -> std::size_t { return _vertices.size(); }
    [[nodiscard]] auto empty() const noexcept -> bool { return _vertices.empty(); }
    [[nodiscard]] auto vertex(std::size_t i) const -> const Vertex & { return _vertices.at(i); }
    [[nodiscard]] auto vertices() const noexcept -> const std::vector<Vertex> & { return _vertices; }
    [[nodiscard]] auto id(std::size_t i) const -> const std::string & { return _vertices.at(i).id; }
    [[nodiscard]] auto framing(std::size_t i) const -> int { return _vertices.at(i).framing; }
    void set_framing(std::size_t i, int framing) { _vertices.at(i).framing = framing; }

    [[nodiscard]] auto find(std::string_view id) const -> std::optional<std::size_t>;
    /// Throws InvalidInput for unknown ids.
    [[nodiscard]] auto index_of(std::string_view id) const -> std::size_t;
    [[nodiscard]] auto contains(std::string_view id) const -> bool { return find(id).has_value(); }

    [[nodiscard]] auto neighbors(std::size_t i) const -> const std::vector<std::size_t> & { return _adjacency.at(i); }
    [[nodiscard]] auto degree(std::size_t i) const -> int { return static_cast<int>(_adjacency.at(i).size()); }
    [[nodiscard]] auto adjacent(std::size_t a, std::size_t b) const -> bool;
    [[nodiscard]] auto edge_count() const noexcept -> std::size_t { return _edge_count; }
    /// Edges as (smaller index, larger index), sorted.
    [[nodiscard]] auto edges() const -> std::vector<std::pair<std::size_t, std::size_t>>;

    [[nodiscard]] auto is_tree() const -> bool;
    /// Throws InvalidInput unless connected, acyclic, with unique ids.
    void validate_tree() const;
    /// validate_tree() plus every framing <= -1.
    void validate_resolution() const;

    friend auto operator==(const PlumbingTree & a, const PlumbingTree & b) -> bool;

private:
    std::vector<Vertex> _vertices;
    std::vector<std::vector<std::size_t>> _adjacency;
    std::unordered_map<std::string, std::size_t> _index;
    std::size_t _edge_count = 0;
};

/// Linear tree v1 - v2 - ... with the given framings.
auto linear_tree(const std::vector<int> & framings, std::string_view prefix = "v") -> PlumbingTree;

struct VertexStats {
    int degree = 0;
    int framing = 0;
    bool is_node = false;
    bool is_leaf = false;
    bool is_large_node = false;
};

auto stats(const PlumbingTree & tree, std::string_view v) -> VertexStats;

/// (sum over v of -e(v) - deg(v)) - 1 - |V|
auto delta(const PlumbingTree & tree) -> long;

auto path_between(const PlumbingTree & tree, std::size_t from, std::size_t to) -> std::vector<std::size_t>;
auto path_between(const PlumbingTree & tree, std::string_view from, std::string_view to) -> std::vector<std::string>;

/// Merges the endpoints of an edge into one vertex carrying the id of `keep`.
auto contract_edge(const PlumbingTree & tree, std::string_view keep, std::string_view other, int new_framing)
    -> PlumbingTree;

/// Hirzebruch-Jung expansion n/d = a1 - 1/(a2 - 1/(...)), every ai >= 2. Needs n > d > 0.
auto hirzebruch_jung(const BigInt & numerator, const BigInt & denominator) -> std::vector<int>;
/// Evaluates a1 - 1/(a2 - ...) exactly.
auto evaluate_continued_fraction(const std::vector<int> & coefficients) -> Rational;

/// Linear graph whose framings are the negated HJ coefficients of p^2/(pq-1).
auto linear_from_fraction(int p, int q) -> PlumbingTree;

/// The star fpp(n) for l = 0; for l > 0 the graph reconstructed from the
/// modified projective-plane configuration.
auto fpp_graph(int n, int l = 0) -> PlumbingTree;

// ---- edge sketches -------------------------------------------------------

struct SketchEdge {
    std::string a;
    std::string b;
    int label = 0;
};

struct EdgeSketch {
    std::vector<Vertex> vertices;
    std::vector<SketchEdge> edges;
};

/// Label k >= 0 becomes a path of k vertices framed -2; label -1 identifies
/// the endpoints into one vertex framed e + f + 2 (merges applied in edge order).
auto expand_sketch(const EdgeSketch & sketch) -> PlumbingTree;

// ---- isomorphism ---------------------------------------------------------

/// Canonical string of the framed tree: rooted at each centroid, children
/// sorted, lexicographic minimum over centroids. Ids are ignored.
auto canonical_form(const PlumbingTree & tree) -> std::string;
auto isomorphic(const PlumbingTree & a, const PlumbingTree & b) -> bool;

// ---- enumeration ---------------------------------------------------------

struct FramingRule {
    /// Allowed framings for leaves (degree 1), degree-2 vertices, and
    /// isolated vertices (degree 0).
    std::vector<int> leaf = {-2};
    std::vector<int> degree_two = {-2};
    std::vector<int> isolated = {-2};
    /// Nodes (degree >= 3): the explicit set when non-empty, otherwise the
    /// single value -deg - node_offset.
    std::vector<int> node;
    std::optional<int> node_offset = 2;
};

struct TreeConstraints {
    std::size_t min_vertices = 1;
    std::size_t max_vertices = 1;
    FramingRule framings;
    std::size_t min_nodes = 0;
    std::size_t max_nodes = static_cast<std::size_t>(-1);
    std::optional<long> delta;
};

/// Allowed framings for a vertex of the given degree.
auto allowed_framings(const FramingRule & rule, int degree) -> std::vector<int>;

/// Unframed free trees on exactly n vertices, one per isomorphism class,
/// in canonical order.
auto free_trees(std::size_t n) -> std::vector<PlumbingTree>;

/// Calls `emit` on every framed tree satisfying the constraints exactly once
/// up to isomorphism, ordered by (vertex count, canonical form). Emission stops
/// when `emit` returns false. `skip` drops that many leading trees (a resumable
/// cursor). Returns the number of trees emitted.
auto enumerate_trees(const TreeConstraints & constraints,
    const std::function<bool(const PlumbingTree &)> & emit, std::size_t skip = 0) -> std::size_t;

auto enumerate_trees(const TreeConstraints & constraints) -> std::vector<PlumbingTree>;

// ---- A/B/C families -----------------------------------------------------

enum class AbcFamily { A, B, C };

enum class BlowupSite { Edge1, Edge2, Edge3, Vertex };

auto abc_triple(AbcFamily family) -> std::array<int, 3>;
auto abc_final_framing(AbcFamily family) -> int;
auto to_string(AbcFamily family) -> std::string;
auto parse_abc_family(std::string_view s) -> AbcFamily;

struct AbcResult {
    PlumbingTree tree;
    /// Id of the vertex that carried -1 before the final framing change.
    std::string changed_vertex;
    /// Tree before the final framing change (still carries the -1 vertex).
    PlumbingTree unchanged;
};

/// Seed: center "n" framed -1 with single-vertex arms "a", "b", "c" framed
/// -a, -b, -c. Each site is relative to the current -1 vertex: EdgeK is its
/// K-th incident edge (neighbors ordered by distance to "n", then insertion
/// order), Vertex blows up the -1 vertex itself. Finally the -1 framing is
/// replaced by -4, -3, -2 for A, B, C.
auto abc_generate(AbcFamily family, const std::vector<BlowupSite> & word) -> AbcResult;

/// Blows down -1 vertices of degree <= 2 until none remain (graph-level
/// inverse of the blowups above). Returns the resulting tree.
auto blow_down_linear_minus_ones(const PlumbingTree & tree) -> PlumbingTree;

} // namespace qhd
