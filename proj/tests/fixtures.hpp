#pragma once

#include <qhd/configuration.hpp>
#include <qhd/graph.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fixture {

/// Points p1..pN; each curve lists its vertex and the 1-based points it
/// passes through (a repeated point counts twice).
inline auto config(std::size_t points, const std::vector<std::pair<std::string, std::vector<int>>> & curves)
    -> qhd::Configuration
{
    qhd::Configuration c;
    for (std::size_t p = 1; p <= points; ++p)
        c.points.push_back("p" + std::to_string(p));
    for (const auto & [vertex, support] : curves) {
        qhd::ConfigCurve curve{vertex, std::vector<int>(points, 0)};
        for (int p : support)
            ++curve.row[static_cast<std::size_t>(p - 1)];
        c.curves.push_back(curve);
    }
    return c;
}

inline auto triangle() -> qhd::Configuration
{
    return config(3, {{"v1", {1, 2}}, {"v1", {2, 3}}, {"v1", {1, 3}}});
}

/// C_v1 = {1,4}, {2,4}, {3,4}; C_v2 = {1,2,3}.
inline auto apex() -> qhd::Configuration
{
    return config(4, {{"v1", {1, 4}}, {"v1", {2, 4}}, {"v1", {3, 4}}, {"v2", {1, 2, 3}}});
}

/// Point-name sets of the curves sitting on `vertex`.
inline auto curves_on(const qhd::Configuration & c, const std::string & vertex) -> std::multiset<std::set<std::string>>
{
    std::multiset<std::set<std::string>> out;
    for (const auto & curve : c.curves) {
        if (curve.vertex != vertex)
            continue;
        std::set<std::string> s;
        for (std::size_t p = 0; p < curve.row.size(); ++p)
            if (curve.row[p] != 0)
                s.insert(c.points[p]);
        out.insert(s);
    }
    return out;
}

inline auto names(std::initializer_list<int> ps) -> std::set<std::string>
{
    std::set<std::string> s;
    for (int p : ps)
        s.insert("p" + std::to_string(p));
    return s;
}

inline auto corpus(const std::string & file) -> std::string
{
    return std::string(QHD_CORPUS_DIR) + "/" + file;
}

} // namespace fixture
