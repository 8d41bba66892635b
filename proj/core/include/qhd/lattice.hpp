#pragma once

#include <qhd/graph.hpp>
#include <qhd/matrix.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qhd {

/// Q_Γ: framings on the diagonal, 1 for each edge.
struct IntersectionForm {
    std::vector<std::string> ids;
    IntMatrix matrix;
    bool negative_definite = false;

    [[nodiscard]] auto size() const noexcept -> std::size_t { return matrix.size(); }
};

auto intersection_matrix(const PlumbingTree & tree) -> IntersectionForm;

struct DeterminantInfo {
    BigInt value;
    bool is_square = false;
    /// sqrt(|value|) when is_square.
    BigInt root;
};

auto determinant(const IntersectionForm & form) -> DeterminantInfo;

struct Anticanonical {
    /// Coordinates of Z_K on the vertex basis, solving Q z = (e_v + 2)_v.
    std::vector<Rational> zk;
    Rational zk_square;
    /// zk_square + n == 0
    bool zk_test = false;
};

/// Throws InvalidInput for a singular form.
auto anticanonical(const IntersectionForm & form) -> Anticanonical;

enum class EmbedStatus { Found, None, BudgetExceeded };

struct EmbedOptions {
    /// Columns beyond n; 0 is the rank-equal embedding.
    std::size_t extra_columns = 0;
    /// Search-node cap; 0 means unlimited.
    std::uint64_t node_budget = 0;
};

struct EmbedResult {
    EmbedStatus status = EmbedStatus::None;
    /// One row per vertex of the form, in form order.
    std::vector<std::vector<int>> rows;
    std::uint64_t nodes = 0;
};

/// Rows x_v with x_v . x_w = -Q_vw and sum(x_v) = e(v) + 2. The search is
/// exhaustive up to permutations of the columns, so None certifies that no
/// such embedding exists.
auto diagonal_embed(const IntersectionForm & form, const EmbedOptions & options = {}) -> EmbedResult;

/// Independent check of both embedding conditions.
auto verify_embedding(const IntersectionForm & form, const std::vector<std::vector<int>> & rows) -> bool;

} // namespace qhd
