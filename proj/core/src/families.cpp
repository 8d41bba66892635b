#include <qhd/families.hpp>
#include <qhd/solver.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <regex>

namespace qhd {

namespace {

/// Polynomials over GF(p) as coefficient vectors, lowest degree first.
using Poly = std::vector<int>;

void trim(Poly & f)
{
    while (! f.empty() && f.back() == 0)
        f.pop_back();
}

auto poly_mod(Poly f, const Poly & g, int p) -> Poly
{
    trim(f);
    auto lead_inv = 1;
    while ((lead_inv * g.back()) % p != 1)
        ++lead_inv;
    while (f.size() >= g.size()) {
        auto shift = f.size() - g.size();
        auto factor = (f.back() * lead_inv) % p;
        for (std::size_t i = 0; i < g.size(); ++i)
            f[shift + i] = ((f[shift + i] - factor * g[i]) % p + p) % p;
        trim(f);
    }
    return f;
}

auto from_index(int x, int p, int k) -> Poly
{
    Poly f(static_cast<std::size_t>(k));
    for (auto & c : f) {
        c = x % p;
        x /= p;
    }
    return f;
}

auto to_index(const Poly & f, int p) -> int
{
    int x = 0;
    for (auto i = f.size(); i-- > 0;)
        x = x * p + f[i];
    return x;
}

auto irreducible(int p, int k) -> Poly
{
    // monic degree-k polynomials, constant term first
    auto count = 1;
    for (int i = 0; i < k; ++i)
        count *= p;
    for (int x = 0; x < count; ++x) {
        auto f = from_index(x, p, k);
        f.push_back(1);
        if (f[0] == 0)
            continue;
        bool reducible = false;
        for (int d = 1; d <= k / 2 && ! reducible; ++d) {
            auto dcount = 1;
            for (int i = 0; i < d; ++i)
                dcount *= p;
            for (int y = 0; y < dcount && ! reducible; ++y) {
                auto g = from_index(y, p, d);
                g.push_back(1);
                reducible = poly_mod(f, g, p).empty();
            }
        }
        if (! reducible)
            return f;
    }
    fail(ErrorKind::Inconsistent, "no irreducible polynomial found");
}

} // namespace

FiniteField::FiniteField(int q) :
    _q(q)
{
    if (q < 2)
        fail(ErrorKind::Unsupported, "field order must be at least 2");
    int p = 2;
    while (q % p != 0)
        ++p;
    int k = 0;
    for (int r = q; r > 1; r /= p) {
        if (r % p != 0)
            fail(ErrorKind::Unsupported, "no field of order " + std::to_string(q) + " (not a prime power)");
        ++k;
    }
    _p = p;
    auto modulus = irreducible(p, k);
    _add.assign(q, std::vector<int>(q));
    _mul.assign(q, std::vector<int>(q));
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
            auto fa = from_index(a, p, k);
            auto fb = from_index(b, p, k);
            Poly sum(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i)
                sum[i] = (fa[i] + fb[i]) % p;
            _add[a][b] = to_index(sum, p);
            Poly prod(static_cast<std::size_t>(2 * k), 0);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    prod[i + j] = (prod[i + j] + fa[i] * fb[j]) % p;
            auto r = poly_mod(prod, modulus, p);
            r.resize(static_cast<std::size_t>(k), 0);
            _mul[a][b] = to_index(r, p);
        }
}

auto projective_plane(int q) -> Configuration
{
    FiniteField field(q);
    std::vector<std::array<int, 3>> triples;
    for (int x = 0; x < q; ++x)
        for (int y = 0; y < q; ++y)
            triples.push_back({1, x, y});
    for (int y = 0; y < q; ++y)
        triples.push_back({0, 1, y});
    triples.push_back({0, 0, 1});

    Configuration config;
    for (std::size_t i = 0; i < triples.size(); ++i)
        config.points.push_back("p" + std::to_string(i + 1));
    for (const auto & line : triples) {
        ConfigCurve c{"", std::vector<int>(triples.size(), 0)};
        for (std::size_t i = 0; i < triples.size(); ++i) {
            int s = 0;
            for (int t = 0; t < 3; ++t)
                s = field.add(s, field.mul(line[t], triples[i][t]));
            c.row[i] = s == 0 ? 1 : 0;
        }
        config.curves.push_back(std::move(c));
    }
    return config;
}

auto fpp_config(int n, int l) -> Configuration
{
    require(n >= 2, "fpp needs n >= 2");
    require(l >= 0, "fpp needs l >= 0");
    auto config = projective_plane(n);
    if (l == 0)
        return config;
    // x = the first point; lines through it stay, the others gain a_1..a_l
    constexpr std::size_t x = 0;
    auto base = config.points.size();
    for (int i = 1; i <= l; ++i)
        config.points.push_back("a" + std::to_string(i));
    for (auto & c : config.curves) {
        auto through = c.row[x] != 0;
        c.row.resize(config.points.size(), through ? 0 : 1);
    }
    for (int i = 0; i < l; ++i) {
        ConfigCurve c{"", std::vector<int>(config.points.size(), 0)};
        c.row[x] = 1;
        c.row[base + static_cast<std::size_t>(i)] = 1;
        config.curves.push_back(std::move(c));
    }
    return config;
}

auto cl_config(int k, int n, ClusterExtension extension, int b) -> Configuration
{
    require(k <= -2 || k >= 2, "Cl(k, n) needs |k| >= 2");
    require(n >= 1, "Cl(k, n) needs n >= 1");
    auto clusters = std::abs(k);
    Configuration config;
    for (int i = 1; i <= clusters; ++i)
        for (int j = 1; j <= n; ++j)
            config.points.push_back("a" + std::to_string(i) + "." + std::to_string(j));
    auto index = [n](int i, int j) { return static_cast<std::size_t>((i - 1) * n + (j - 1)); };
    for (int i = 1; i <= clusters; ++i)
        for (int j = 1; j <= n; ++j) {
            ConfigCurve c{"", std::vector<int>(config.points.size(), 0)};
            for (int l = 1; l <= clusters; ++l)
                for (int m = 1; m <= n; ++m) {
                    bool in = l != i || (k > 0 ? m == j : m != j);
                    c.row[index(l, m)] = in ? 1 : 0;
                }
            config.curves.push_back(std::move(c));
        }

    if (extension == ClusterExtension::None) {
        require(b == 0, "extension size given without an extension");
        return config;
    }
    auto a_count = config.points.size();
    if (extension == ClusterExtension::Cluster) {
        require(b != 0, "cluster extension needs b != 0");
        if (k > 0)
            require(b >= n && n > 1, "cluster extension with k > 0 needs b >= n > 1");
        auto size = static_cast<std::size_t>(std::abs(b));
        for (std::size_t i = 1; i <= size; ++i)
            config.points.push_back("b" + std::to_string(i));
        for (auto & c : config.curves)
            c.row.resize(config.points.size(), 1);
        for (std::size_t i = 0; i < size; ++i) {
            ConfigCurve d{"", std::vector<int>(config.points.size(), 0)};
            for (std::size_t p = 0; p < a_count; ++p)
                d.row[p] = 1;
            for (std::size_t q = 0; q < size; ++q)
                d.row[a_count + q] = (b > 0 ? q == i : q != i) ? 1 : 0;
            config.curves.push_back(std::move(d));
        }
        return config;
    }

    require(b >= 1, "star extension needs b >= 1");
    config.points.push_back("x");
    auto x = config.points.size() - 1;
    for (int i = 1; i <= b; ++i)
        config.points.push_back("b" + std::to_string(i));
    for (auto & c : config.curves) {
        c.row.resize(config.points.size(), 1);
        c.row[x] = 0;
    }
    for (int i = 0; i < b; ++i) {
        ConfigCurve s{"", std::vector<int>(config.points.size(), 0)};
        s.row[x] = 1;
        s.row[x + 1 + static_cast<std::size_t>(i)] = 1;
        config.curves.push_back(std::move(s));
    }
    ConfigCurve f{"", std::vector<int>(config.points.size(), 0)};
    for (std::size_t p = 0; p < a_count; ++p)
        f.row[p] = 1;
    f.row[x] = 1;
    config.curves.push_back(std::move(f));
    return config;
}

auto t_config(int a, int b, int c) -> Configuration
{
    require(a != 0 && b != 0 && c != 0, "t(a, b, c) needs non-zero parameters");
    const std::array<int, 3> params{a, b, c};
    const std::array<std::string, 3> names{"a", "b", "c"};
    Configuration config;
    std::array<std::size_t, 3> offset{};
    for (std::size_t s = 0; s < 3; ++s) {
        offset[s] = config.points.size();
        for (int i = 1; i <= std::abs(params[s]); ++i)
            config.points.push_back(names[s] + std::to_string(i));
    }
    for (std::size_t s = 0; s < 3; ++s) {
        auto t = (s + 1) % 3;
        auto own = static_cast<std::size_t>(std::abs(params[s]));
        auto next = static_cast<std::size_t>(std::abs(params[t]));
        for (std::size_t i = 0; i < next; ++i) {
            ConfigCurve curve{"", std::vector<int>(config.points.size(), 0)};
            for (std::size_t p = 0; p < own; ++p)
                curve.row[offset[s] + p] = 1;
            for (std::size_t q = 0; q < next; ++q)
                curve.row[offset[t] + q] = (params[s] > 0 ? q == i : q != i) ? 1 : 0;
            config.curves.push_back(std::move(curve));
        }
    }
    return config;
}

auto reconstruct_graph(const Configuration & config) -> Reconstruction
{
    auto k = config.curves.size();
    require(k >= 1, "reconstruction needs at least one curve");
    for (const auto & c : config.curves)
        for (auto m : c.row)
            require(m == 0 || m == 1, "reconstruction needs set-valued curves");
    auto g = pairing_matrix(config);
    for (std::size_t i = 0; i < k; ++i) {
        require(g[i][i] >= 2, "curve " + std::to_string(i + 1) + " needs at least two points");
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j)
                continue;
            require(g[i][j] >= 1, "curves " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " are disjoint");
            require(g[i][j] < std::min(g[i][i], g[j][j]),
                "curves " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " are nested");
        }
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            for (std::size_t l = j + 1; l < k; ++l) {
                std::array<long, 3> v{g[i][j], g[i][l], g[j][l]};
                std::sort(v.begin(), v.end());
                if (v[0] != v[1])
                    fail(ErrorKind::InvalidInput, "intersections of curves " + std::to_string(i + 1) + ", "
                            + std::to_string(j + 1) + ", " + std::to_string(l + 1) + " are not realizable by a tree");
            }

    // trie nodes: (depth, representative curve); curve i's node at depth d is
    // shared with the smallest j whose prefix agrees that deep
    auto node_key = [&](std::size_t i, long d) {
        std::size_t rep = i;
        for (std::size_t j = 0; j < i; ++j)
            if (g[i][j] >= d) {
                rep = j;
                break;
            }
        return std::make_pair(d, rep);
    };
    std::map<std::pair<long, std::size_t>, std::vector<std::pair<long, std::size_t>>> children;
    std::map<std::pair<long, std::size_t>, std::size_t> curves_on;
    for (std::size_t i = 0; i < k; ++i) {
        for (long d = 1; d < g[i][i]; ++d) {
            auto parent = node_key(i, d);
            if (d + 1 < g[i][i]) {
                auto child = node_key(i, d + 1);
                auto & list = children[parent];
                if (std::find(list.begin(), list.end(), child) == list.end())
                    list.push_back(child);
            }
            else {
                curves_on[parent] += 1;
            }
        }
    }

    Reconstruction r;
    std::map<std::pair<long, std::size_t>, std::size_t> vertex_of;
    auto root = node_key(0, 1);
    std::deque<std::pair<long, std::size_t>> queue{root};
    while (! queue.empty()) {
        auto node = queue.front();
        queue.pop_front();
        auto & list = children[node];
        std::sort(list.begin(), list.end(), [](auto x, auto y) { return x.second < y.second; });
        auto degree_out = static_cast<int>(list.size() + curves_on[node]);
        auto v = r.tree.add_vertex("v" + std::to_string(r.tree.size() + 1), -1 - degree_out);
        vertex_of[node] = v;
        for (auto child : list)
            queue.push_back(child);
    }
    for (const auto & [node, list] : children)
        for (auto child : list)
            r.tree.add_edge(vertex_of.at(node), vertex_of.at(child));
    r.end = r.tree.id(vertex_of.at(root));

    auto & p = r.presentation;
    p.base = r.tree;
    p.end_vertex = r.end;
    for (std::size_t i = 0; i < k; ++i) {
        auto vertex = r.tree.id(vertex_of.at(node_key(i, g[i][i] - 1)));
        r.curve_vertex.push_back(vertex);
        auto label = config.curves[i].vertex.empty() ? "c" + std::to_string(i + 1) : config.curves[i].vertex;
        p.curves.push_back(PresentationCurve{vertex, static_cast<int>(g[i][i]), BranchKind::Smooth, label, -1});
    }
    p.gram = gram_smooth(p);
    if (p.gram != g)
        fail(ErrorKind::Inconsistent, "reconstructed graph does not reproduce the intersection numbers");
    check_smooth_counts(p);
    return r;
}

auto with_vertices(Configuration config, const Reconstruction & reconstruction) -> Configuration
{
    require(config.curves.size() == reconstruction.curve_vertex.size(), "curve count mismatch");
    for (std::size_t i = 0; i < config.curves.size(); ++i)
        config.curves[i].vertex = reconstruction.curve_vertex[i];
    return config;
}

auto named_configuration(std::string_view name) -> NamedConfiguration
{
    std::string s(name);
    std::smatch m;
    Configuration config;
    static const std::regex fpp(R"(fpp\((\d+)\)(?:_(\d+))?)");
    static const std::regex cl(R"(Cl\((-?\d+),(\d+)\)(?:\+(cluster|star)\((-?\d+)\))?)");
    static const std::regex t(R"(t\((-?\d+),(-?\d+),(-?\d+)\))");
    if (std::regex_match(s, m, fpp)) {
        config = fpp_config(std::stoi(m[1]), m[2].matched ? std::stoi(m[2]) : 0);
    }
    else if (std::regex_match(s, m, cl)) {
        auto ext = ! m[3].matched ? ClusterExtension::None
            : m[3] == "cluster"   ? ClusterExtension::Cluster
                                  : ClusterExtension::Star;
        config = cl_config(std::stoi(m[1]), std::stoi(m[2]), ext, m[4].matched ? std::stoi(m[4]) : 0);
    }
    else if (std::regex_match(s, m, t)) {
        config = t_config(std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]));
    }
    else {
        fail(ErrorKind::InvalidInput, "unknown configuration name '" + s
                + "' (expected fpp(n), fpp(n)_l, Cl(k,n), Cl(k,n)+cluster(b), Cl(k,n)+star(b) or t(a,b,c))");
    }
    auto rec = reconstruct_graph(config);
    auto named = with_vertices(std::move(config), rec);
    auto report = validate(named, rec.presentation);
    if (! report.valid)
        fail(ErrorKind::Inconsistent, s + " does not validate: " + report.violations.front());
    return NamedConfiguration{s, std::move(named), std::move(rec)};
}

auto catalog_configurations() -> std::vector<NamedConfiguration>
{
    std::vector<NamedConfiguration> result;
    for (auto name : {"fpp(2)", "fpp(3)", "fpp(2)_1", "fpp(2)_2", "fpp(3)_1", "Cl(2,2)", "Cl(-2,2)", "Cl(3,2)",
             "Cl(-3,2)", "Cl(2,3)", "Cl(3,3)", "Cl(2,2)+cluster(2)", "Cl(2,2)+cluster(3)", "Cl(-2,2)+cluster(2)",
             "Cl(-2,2)+cluster(-1)", "Cl(-3,2)+cluster(-2)", "Cl(2,2)+star(1)", "Cl(2,2)+star(2)", "t(1,1,1)",
             "t(2,2,2)", "t(3,2,2)", "t(3,-3,3)", "t(-3,-3,-3)", "t(-3,-2,-2)"})
        result.push_back(named_configuration(name));
    return result;
}

} // namespace qhd

namespace qhd {

auto fpp_graph(int n, int l) -> PlumbingTree
{
    require(n >= 2, "fpp needs n >= 2");
    require(l >= 0, "fpp needs l >= 0");
    if (l > 0)
        return reconstruct_graph(fpp_config(n, l)).tree;
    auto arms = n * n + n + 1;
    PlumbingTree tree;
    auto center = tree.add_vertex("c", -arms - 1);
    for (int i = 1; i <= arms; ++i) {
        auto previous = center;
        for (int j = 1; j <= n - 1; ++j) {
            auto v = tree.add_vertex("a" + std::to_string(i) + "_" + std::to_string(j), -2);
            tree.add_edge(previous, v);
            previous = v;
        }
    }
    return tree;
}

} // namespace qhd
