#pragma once

#include <qhd/common.hpp>

#include <string>
#include <vector>

namespace qhd {

using SmallMatrix = std::vector<std::vector<long>>;

/// A curve is a multiset over the configuration's points, stored densely.
struct ConfigCurve {
    std::string vertex;
    std::vector<int> row;
};

struct Configuration {
    std::vector<std::string> points;
    std::vector<ConfigCurve> curves;

    /// #points - #curves
    [[nodiscard]] auto mu() const -> long
    {
        return static_cast<long>(points.size()) - static_cast<long>(curves.size());
    }
};

/// I with rows = curves, columns = points.
auto incidence_matrix(const Configuration & config) -> SmallMatrix;

/// Σ_p m_p(A) m_p(B)
auto pairing(const std::vector<int> & a, const std::vector<int> & b) -> long;

/// I Iᵀ
auto pairing_matrix(const Configuration & config) -> SmallMatrix;

/// Points on exactly one curve, with multiplicity 1.
auto free_points(const Configuration & config) -> std::vector<std::size_t>;

/// Drops points that lie on no curve.
auto compact(const Configuration & config) -> Configuration;

} // namespace qhd
