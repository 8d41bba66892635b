#pragma once

#include <qhd/configuration.hpp>
#include <qhd/sandwich.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qhd {

struct ValidationReport {
    bool valid = false;
    long mu = 0;
    std::vector<std::size_t> free_points;
    std::vector<std::string> violations;
};

/// Row totals against l(i), pairings against G_ij, multiplicity patterns
/// (smooth rows 0/1, cusp rows exactly one 2). Throws InvalidInput when the
/// curve count differs from the presentation's.
auto validate(const Configuration & config, const SandwichPresentation & presentation) -> ValidationReport;

enum class EmitMode { First, All, Count };

struct SolveMode {
    /// Exact μ, or any μ >= 0 when unset.
    std::optional<long> mu = 0;
    EmitMode emit = EmitMode::First;
    /// Wall-clock limit; 0 disables it.
    double timeout_seconds = 0;
    /// Search-node cap; 0 disables it.
    std::uint64_t node_budget = 0;
};

enum class SolveStatus { Found, NoSolution, Timeout };

auto to_string(SolveStatus status) -> std::string;

struct SolveResult {
    SolveStatus status = SolveStatus::NoSolution;
    /// Canonical representatives (columns sorted); only the first for EmitMode::First.
    std::vector<Configuration> solutions;
    /// Solutions modulo point relabeling; exact only for All and Count.
    BigInt canonical_count = 0;
    /// Solutions with points labeled 1..N; exact only for All and Count.
    BigInt labeled_count = 0;
    std::uint64_t nodes = 0;
    double seconds = 0;
};

/// Exhaustive backtracking over incidence matrices. Columns are kept in
/// non-increasing lexicographic order, so each solution is produced once per
/// point-relabeling class. In EmitMode::First, interchangeable curves are
/// also ordered, which keeps the search exhaustive for existence.
auto solve(const SandwichPresentation & presentation, const SolveMode & mode) -> SolveResult;

/// N! / Π (multiplicity of each distinct column)!
auto labeled_multiplicity(const Configuration & config) -> BigInt;

} // namespace qhd
