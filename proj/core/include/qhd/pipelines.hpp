#pragma once

#include <qhd/graph.hpp>
#include <qhd/json_io.hpp>
#include <qhd/lattice.hpp>
#include <qhd/sandwich.hpp>
#include <qhd/solver.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qhd {

// ---- single graphs -------------------------------------------------------

struct GraphReport {
    bool negative_definite = false;
    BigInt determinant;
    bool square_determinant = false;
    std::optional<Rational> zk_square;
    bool zk_test = false;
    EmbedStatus embedding = EmbedStatus::None;
    std::vector<std::vector<int>> embedding_rows;
    long delta = 0;

    /// Negative definite, square |det|, zk_test and an embedding.
    [[nodiscard]] auto passes() const -> bool;
};

auto check_graph(const PlumbingTree & tree, const EmbedOptions & embed = {}) -> GraphReport;
auto to_json(const GraphReport & report) -> Json;

/// First vertex (in graph order) that is a legal end of a smooth sandwich
/// presentation.
auto first_legal_end(const PlumbingTree & tree) -> std::optional<std::string>;

// ---- tree sweeps ---------------------------------------------------------

/// Applied in this order; a failure skips the remaining filters.
enum class Filter { NegativeDefinite, SquareDeterminant, ZkTest, Embedding, Solver };

auto to_string(Filter filter) -> std::string;
auto parse_filter(std::string_view s) -> Filter;
auto all_filters() -> std::vector<Filter>;

enum class Outcome { Pass, Fail, Unknown, Skipped };

auto to_string(Outcome outcome) -> std::string;

struct SweepSpec {
    TreeConstraints constraints;
    std::vector<Filter> filters = all_filters();
    /// Per-instance solver wall clock; 0 disables it.
    double solver_timeout = 0;
    std::uint64_t solver_node_budget = 0;
    std::uint64_t embed_node_budget = 0;
};

/// {"min_vertices":1,"max_vertices":12,"min_nodes":2,"max_nodes":2,"delta":1,
///  "framings":{"leaf":[-2],"degree_two":[-2,-3],"isolated":[-2],"node":[],"node_offset":2},
///  "filters":["negdef","square_det","zk","embed","solver"],"solver_timeout":60}
auto sweep_spec_from_json(const Json & j) -> SweepSpec;
auto to_json(const SweepSpec & spec) -> Json;

/// Framing constraints for the node-count sweeps: leaves -2, degree two
/// in {-2, -3}, nodes -deg - 2.
auto corollary_spec(std::size_t max_vertices, std::size_t nodes, long delta) -> SweepSpec;

struct SweepRecord {
    std::size_t index = 0;
    PlumbingTree tree;
    long delta = 0;
    std::vector<std::pair<Filter, Outcome>> outcomes;
    GraphReport report;
    std::optional<std::string> end;
    std::optional<Configuration> solution;
    std::optional<SolveStatus> solver_status;
    std::uint64_t solver_nodes = 0;

    [[nodiscard]] auto outcome(Filter filter) const -> Outcome;
    /// Passes every enabled filter.
    [[nodiscard]] auto survivor() const -> bool;
    /// Some filter ended in Unknown.
    [[nodiscard]] auto unknown() const -> bool;
};

auto to_json(const SweepRecord & record) -> Json;

struct SweepSummary {
    std::size_t instances = 0;
    std::size_t survivors = 0;
    std::size_t unknown = 0;
    /// Per filter: passed, failed, unknown.
    std::vector<std::tuple<Filter, std::size_t, std::size_t, std::size_t>> per_filter;

    void add(const SweepRecord & record);
    void add(const Json & record);
};

auto to_json(const SweepSummary & summary) -> Json;

/// Runs every enabled filter on one tree.
auto evaluate(const PlumbingTree & tree, const SweepSpec & spec, std::size_t index = 0) -> SweepRecord;

struct SweepOptions {
    /// Worker threads over independent instances.
    std::size_t jobs = 1;
    /// Instances to skip (resume cursor).
    std::size_t skip = 0;
    /// Stop after this many instances; 0 means no limit.
    std::size_t limit = 0;
};

/// Enumerates per `spec`, evaluates every tree and hands records to `sink`
/// in enumeration order regardless of the worker count.
auto corollary_sweep(const SweepSpec & spec, const SweepOptions & options,
    const std::function<void(const SweepRecord &)> & sink) -> SweepSummary;

/// JSON Lines driver: one record per line. With `resume`, records already in
/// the file are kept, counted into the summary, and enumeration continues
/// after them.
auto corollary_sweep_to_file(const SweepSpec & spec, const std::filesystem::path & out, SweepOptions options,
    bool resume) -> SweepSummary;

// ---- star sweeps ---------------------------------------------------------

/// Blowup words generating the family's members with long arm n: the seed
/// edge (or "vertex, edge_1" in degree 4) followed by edge choices.
auto star_words(StarFamily family, int n) -> std::vector<std::vector<BlowupSite>>;

auto to_string(const std::vector<BlowupSite> & word) -> std::string;

/// Every blowup after the seed step happens next to the leaf.
auto is_leaf_word(StarFamily family, const std::vector<BlowupSite> & word) -> bool;

/// The classification: the leaf member, plus the l = n - 3 member of C3, the
/// two l = n - 4 members of C2, and the C_{l+1} member of B2.
auto admits_by_classification(StarFamily family, const std::vector<BlowupSite> & word,
    const StarFamilyInstance & instance) -> bool;

struct StarSweepRow {
    StarFamily family = StarFamily::C6;
    std::vector<BlowupSite> word;
    StarFamilyInstance instance;
    SolveStatus status = SolveStatus::NoSolution;
    bool expected = false;
    std::uint64_t nodes = 0;
    double seconds = 0;
    std::optional<Configuration> solution;

    /// Found iff expected, and never a timeout.
    [[nodiscard]] auto agrees() const -> bool;
};

auto to_json(const StarSweepRow & row) -> Json;

struct StarSweepResult {
    std::vector<StarSweepRow> rows;

    [[nodiscard]] auto agrees() const -> bool;
    [[nodiscard]] auto timeouts() const -> std::size_t;
};

/// Solves every member with 1 <= n <= n_max.
auto star_sweep(StarFamily family, int n_max, double timeout_seconds = 0, std::size_t jobs = 1) -> StarSweepResult;

} // namespace qhd
