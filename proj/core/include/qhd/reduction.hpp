#pragma once

#include <qhd/configuration.hpp>
#include <qhd/sandwich.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qhd {

/// v <= w <= z in the order rooted at v, which is also where the blowdown
/// ends while the triple is used.
struct ReducingTriple {
    std::string v;
    std::string w;
    std::string z;
    /// v = w of degree < 3 and deg(z) > 2, with two curves on z.
    bool leafred = false;

    friend auto operator==(const ReducingTriple &, const ReducingTriple &) -> bool = default;
};

auto to_string(const ReducingTriple & triple) -> std::string;

/// Every triple satisfying the four conditions, curve counts taken relative
/// to the triple's own v. Ordered by (|p(v, z)|, vertex order of v, w, z).
auto find_triples(const SandwichPresentation & presentation) -> std::vector<ReducingTriple>;

/// The presentation (and configuration) with the blowdown ending at `vertex`,
/// switching on the vertex's first curve when needed.
auto anchor_at(const SandwichPresentation & presentation, const Configuration & config, std::string_view vertex)
    -> SwitchResult;

struct QpqData {
    std::size_t curve_w = 0;
    std::size_t curve_z = 0;
    /// Point index of Q.
    std::size_t q = 0;
    std::vector<std::size_t> p;
    std::vector<std::size_t> q_prime;
};

/// C_w is the first curve on w, C_z the first other curve on z. Needs the
/// blowdown to end at the triple's v.
auto qpq(const SandwichPresentation & presentation, const Configuration & config, const ReducingTriple & triple)
    -> QpqData;

struct SeparatingEdge {
    /// Endpoint nearer the end vertex; the merged vertex keeps its id.
    std::string keep;
    std::string other;
};

/// Splits the vertices by whether their curves (other than C_w, and C_z when
/// w = z) contain Q, and asserts that Q propagates upwards. nullopt when
/// every vertex contains Q (terminal). Throws Inconsistent when Q lies on
/// no other curve or the split is not cut by a single edge.
auto separating_edge(const SandwichPresentation & presentation, const Configuration & config,
    const ReducingTriple & triple, const QpqData & data) -> std::optional<SeparatingEdge>;

struct ReductionStep {
    ReducingTriple triple;
    /// The end was switched to triple.v before the step.
    bool switched = false;
    std::string q;
    std::vector<std::string> p;
    std::vector<std::string> q_prime;
    std::string removed_curve;
    SeparatingEdge edge;
    int merged_framing = 0;
    long delta = 0;
    SandwichPresentation presentation;
    Configuration config;
};

/// One contraction. Throws Terminal when there is no separating edge and
/// Inconsistent when the contracted data fails validation.
auto reduce_step(const SandwichPresentation & presentation, const Configuration & config,
    const ReducingTriple & triple) -> ReductionStep;

struct ReductionTrace {
    SandwichPresentation initial_presentation;
    Configuration initial_config;
    std::vector<ReductionStep> steps;
    long initial_delta = 0;
    long final_delta = 0;

    [[nodiscard]] auto final_presentation() const -> const SandwichPresentation &;
    [[nodiscard]] auto final_config() const -> const Configuration &;
};

/// Repeats the first applicable step (first triple with a separating edge
/// whose contraction validates) until none is left.
auto reduce_fully(const SandwichPresentation & presentation, const Configuration & config) -> ReductionTrace;

struct ReducedReport {
    /// No triple admits a valid step.
    bool reduced = false;
    /// Nodes carry two curves, other vertices at most one, and each component
    /// of Γ minus its nodes carries at most two curves.
    bool structural = false;
    std::size_t triples = 0;
    std::string note;
};

auto is_reduced(const SandwichPresentation & presentation, const Configuration & config) -> ReducedReport;

/// 7s - 2, or 7s + 1 with a degree-4 node.
auto reduced_size_bound(int nodes, bool has_degree_four) -> int;

} // namespace qhd
