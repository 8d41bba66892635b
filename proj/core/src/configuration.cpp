#include <qhd/configuration.hpp>

namespace qhd {

auto incidence_matrix(const Configuration & config) -> SmallMatrix
{
    SmallMatrix m;
    for (const auto & c : config.curves) {
        require(c.row.size() == config.points.size(), "curve row length differs from the point count");
        m.emplace_back(c.row.begin(), c.row.end());
    }
    return m;
}

auto pairing(const std::vector<int> & a, const std::vector<int> & b) -> long
{
    require(a.size() == b.size(), "pairing of rows with different lengths");
    long s = 0;
    for (std::size_t p = 0; p < a.size(); ++p)
        s += static_cast<long>(a[p]) * b[p];
    return s;
}

auto pairing_matrix(const Configuration & config) -> SmallMatrix
{
    auto n = config.curves.size();
    SmallMatrix g(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            g[i][j] = g[j][i] = pairing(config.curves[i].row, config.curves[j].row);
    return g;
}

auto free_points(const Configuration & config) -> std::vector<std::size_t>
{
    std::vector<std::size_t> result;
    for (std::size_t p = 0; p < config.points.size(); ++p) {
        int curves = 0, total = 0;
        for (const auto & c : config.curves)
            if (c.row[p] > 0) {
                ++curves;
                total += c.row[p];
            }
        if (curves == 1 && total == 1)
            result.push_back(p);
    }
    return result;
}

auto compact(const Configuration & config) -> Configuration
{
    Configuration result;
    std::vector<std::size_t> keep;
    for (std::size_t p = 0; p < config.points.size(); ++p) {
        bool used = false;
        for (const auto & c : config.curves)
            used = used || c.row[p] != 0;
        if (used) {
            keep.push_back(p);
            result.points.push_back(config.points[p]);
        }
    }
    for (const auto & c : config.curves) {
        ConfigCurve d{c.vertex, {}};
        for (auto p : keep)
            d.row.push_back(c.row[p]);
        result.curves.push_back(std::move(d));
    }
    return result;
}

} // namespace qhd
