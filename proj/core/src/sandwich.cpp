#include <qhd/sandwich.hpp>
#include <qhd/solver.hpp>

#include <algorithm>
#include <set>

namespace qhd {

auto to_string(BranchKind kind) -> std::string
{
    return kind == BranchKind::Cusp ? "cusp" : "smooth";
}

auto SandwichPresentation::curve_count(std::string_view vertex) const -> std::size_t
{
    return static_cast<std::size_t>(std::count_if(curves.begin(), curves.end(),
        [&](const PresentationCurve & c) { return c.vertex == vertex; }));
}

auto SandwichPresentation::curves_at(std::string_view vertex) const -> std::vector<std::size_t>
{
    std::vector<std::size_t> result;
    for (std::size_t i = 0; i < curves.size(); ++i)
        if (curves[i].vertex == vertex)
            result.push_back(i);
    return result;
}

auto SandwichPresentation::has_cusps() const -> bool
{
    return std::any_of(curves.begin(), curves.end(),
        [](const PresentationCurve & c) { return c.kind == BranchKind::Cusp; });
}

auto required_curve_count(const PlumbingTree & tree, std::size_t v, std::size_t end) -> long
{
    return -(static_cast<long>(tree.degree(v)) + tree.framing(v)) - (v == end ? 1 : 0);
}

auto gram_smooth(const SandwichPresentation & presentation) -> SmallMatrix
{
    const auto & tree = presentation.base;
    auto end = tree.index_of(presentation.end_vertex);
    auto n = presentation.curves.size();
    std::vector<std::vector<bool>> on_path(n, std::vector<bool>(tree.size(), false));
    std::vector<long> length(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto path = path_between(tree, tree.index_of(presentation.curves[i].vertex), end);
        length[i] = static_cast<long>(path.size());
        for (auto u : path)
            on_path[i][u] = true;
    }
    SmallMatrix g(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        g[i][i] = length[i] + 1;
        for (std::size_t j = i + 1; j < n; ++j) {
            long common = 0;
            for (std::size_t u = 0; u < tree.size(); ++u)
                common += on_path[i][u] && on_path[j][u];
            g[i][j] = g[j][i] = common;
        }
    }
    return g;
}

auto presentation_smooth(const PlumbingTree & tree, std::string_view end) -> SandwichPresentation
{
    tree.validate_tree();
    auto e = tree.index_of(end);
    SandwichPresentation p;
    p.base = tree;
    p.end_vertex = std::string(end);
    for (std::size_t v = 0; v < tree.size(); ++v) {
        auto count = required_curve_count(tree, v, e);
        if (count < 0)
            fail(ErrorKind::InvalidInput, "vertex '" + tree.id(v) + "' would need " + std::to_string(count)
                    + " curvettas with end '" + std::string(end) + "'");
        auto size = static_cast<int>(path_between(tree, v, e).size()) + 1;
        for (long k = 1; k <= count; ++k)
            p.curves.push_back(PresentationCurve{tree.id(v), size, BranchKind::Smooth,
                tree.id(v) + "." + std::to_string(k), -1});
    }
    p.gram = gram_smooth(p);
    return p;
}

void check_smooth_counts(const SandwichPresentation & presentation)
{
    const auto & tree = presentation.base;
    auto end = tree.index_of(presentation.end_vertex);
    for (const auto & c : presentation.curves)
        require(tree.contains(c.vertex), "curve on unknown vertex '" + c.vertex + "'");
    for (std::size_t v = 0; v < tree.size(); ++v) {
        auto want = required_curve_count(tree, v, end);
        auto have = static_cast<long>(presentation.curve_count(tree.id(v)));
        if (want != have)
            fail(ErrorKind::InvalidInput, "vertex '" + tree.id(v) + "' carries " + std::to_string(have)
                    + " curves, expected " + std::to_string(want));
    }
}

// ---- blowup clusters ------------------------------------------------------

void BlowupCluster::validate() const
{
    require(! points.empty(), "empty cluster");
    require(points[0].proximate_to.empty(), "the origin cannot be proximate to anything");
    for (std::size_t p = 1; p < points.size(); ++p) {
        const auto & prox = points[p].proximate_to;
        require(! prox.empty(), "point " + std::to_string(p) + " is proximate to no earlier point");
        require(prox.size() <= 2, "point " + std::to_string(p) + " is proximate to more than two points");
        for (auto q : prox)
            require(q < p, "point " + std::to_string(p) + " is proximate to a later point");
        if (prox.size() == 2) {
            auto lo = std::min(prox[0], prox[1]);
            auto hi = std::max(prox[0], prox[1]);
            const auto & hp = points[hi].proximate_to;
            require(std::find(hp.begin(), hp.end(), lo) != hp.end(),
                "satellite point " + std::to_string(p) + " sits on two exceptional curves that do not meet");
        }
    }
    require(curvetta_label.empty() || curvetta_label.size() == curvetta_point.size(), "curvetta label count mismatch");
    for (auto t : curvetta_point)
        require(t < points.size(), "curvetta ends outside the cluster");
}

auto BlowupCluster::parent(std::size_t p) const -> std::size_t
{
    const auto & prox = points.at(p).proximate_to;
    require(! prox.empty(), "the origin has no parent");
    return *std::max_element(prox.begin(), prox.end());
}

auto tilde_graph(const SandwichPresentation & presentation) -> TildeGraph
{
    TildeGraph t{presentation.base, {}};
    for (std::size_t i = 0; i < presentation.curves.size(); ++i) {
        const auto & c = presentation.curves[i];
        auto base = "*" + (c.label.empty() ? std::to_string(i + 1) : c.label);
        auto id = base;
        for (int k = 2; t.tree.contains(id); ++k)
            id = base + "#" + std::to_string(k);
        auto leaf = t.tree.add_vertex(id, -1);
        t.tree.add_edge(leaf, t.tree.index_of(c.vertex));
        t.leaves.push_back(id);
    }
    return t;
}

auto blowdown_cluster(const PlumbingTree & tilde, const std::vector<std::string> & curvetta_leaves,
    const std::vector<std::string> & labels) -> BlowupCluster
{
    tilde.validate_tree();
    auto n = tilde.size();
    std::vector<int> framing(n);
    std::vector<std::set<std::size_t>> adj(n);
    for (std::size_t v = 0; v < n; ++v) {
        framing[v] = tilde.framing(v);
        adj[v].insert(tilde.neighbors(v).begin(), tilde.neighbors(v).end());
    }
    std::vector<bool> alive(n, true);
    std::vector<std::size_t> order;
    std::vector<std::vector<std::size_t>> neighbors_then(n);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pick = n;
        for (std::size_t v = 0; v < n && pick == n; ++v)
            if (alive[v] && framing[v] == -1 && adj[v].size() <= 2)
                pick = v;
        if (pick == n)
            fail(ErrorKind::InvalidInput, "graph does not blow down: no contractible -1 vertex among "
                    + std::to_string(n - step) + " remaining");
        neighbors_then[pick].assign(adj[pick].begin(), adj[pick].end());
        for (auto w : adj[pick]) {
            framing[w] += 1;
            adj[w].erase(pick);
        }
        if (neighbors_then[pick].size() == 2) {
            adj[neighbors_then[pick][0]].insert(neighbors_then[pick][1]);
            adj[neighbors_then[pick][1]].insert(neighbors_then[pick][0]);
        }
        adj[pick].clear();
        alive[pick] = false;
        order.push_back(pick);
    }

    std::vector<std::size_t> point_of(n);
    BlowupCluster cluster;
    for (std::size_t k = 0; k < n; ++k) {
        auto v = order[n - 1 - k];
        point_of[v] = k;
        cluster.points.push_back(ClusterPoint{tilde.id(v), {}});
    }
    for (std::size_t v = 0; v < n; ++v) {
        auto & prox = cluster.points[point_of[v]].proximate_to;
        for (auto w : neighbors_then[v])
            prox.push_back(point_of[w]);
        std::sort(prox.begin(), prox.end());
    }
    for (std::size_t i = 0; i < curvetta_leaves.size(); ++i) {
        auto leaf = tilde.index_of(curvetta_leaves[i]);
        cluster.curvetta_point.push_back(point_of[leaf]);
        cluster.curvetta_label.push_back(i < labels.size() ? labels[i] : curvetta_leaves[i]);
    }
    cluster.validate();
    return cluster;
}

auto blowdown_cluster(const SandwichPresentation & presentation) -> BlowupCluster
{
    auto tilde = tilde_graph(presentation);
    std::vector<std::string> labels;
    for (const auto & c : presentation.curves)
        labels.push_back(c.label);
    return blowdown_cluster(tilde.tree, tilde.leaves, labels);
}

namespace {

auto branch_points(const BlowupCluster & cluster, std::size_t curvetta) -> std::vector<std::size_t>
{
    std::vector<std::size_t> chain{cluster.curvetta_point.at(curvetta)};
    while (chain.back() != 0)
        chain.push_back(cluster.parent(chain.back()));
    std::reverse(chain.begin(), chain.end());
    return chain;
}

auto branch_multiplicities(const BlowupCluster & cluster, std::size_t curvetta) -> std::vector<int>
{
    auto chain = branch_points(cluster, curvetta);
    std::vector<int> m(cluster.points.size(), 0);
    std::vector<bool> on(cluster.points.size(), false);
    for (auto p : chain)
        on[p] = true;
    m[chain.back()] = 1;
    for (auto k = chain.size() - 1; k-- > 0;) {
        auto p = chain[k];
        int sum = 0;
        for (auto q : chain)
            if (q > p) {
                const auto & prox = cluster.points[q].proximate_to;
                if (std::find(prox.begin(), prox.end(), p) != prox.end())
                    sum += m[q];
            }
        m[p] = sum;
    }
    return m;
}

} // namespace

auto multiplicity_sequence(const BlowupCluster & cluster, std::size_t curvetta) -> std::vector<int>
{
    cluster.validate();
    auto m = branch_multiplicities(cluster, curvetta);
    std::vector<int> seq;
    for (auto p : branch_points(cluster, curvetta))
        seq.push_back(m[p]);
    return seq;
}

auto noether_gram(const BlowupCluster & cluster) -> NoetherData
{
    cluster.validate();
    auto k = cluster.curvetta_point.size();
    NoetherData data;
    for (std::size_t i = 0; i < k; ++i)
        data.multiplicity.push_back(branch_multiplicities(cluster, i));

    auto points = cluster.points.size();
    std::vector<int> branches_through(points, 0);
    for (const auto & m : data.multiplicity)
        for (std::size_t p = 0; p < points; ++p)
            branches_through[p] += m[p] > 0;

    data.gram.assign(k, std::vector<long>(k, 0));
    for (std::size_t i = 0; i < k; ++i) {
        const auto & mi = data.multiplicity[i];
        int size = 0, self = 0, minimal = 0;
        std::size_t last_critical = 0;
        bool any_critical = false;
        for (std::size_t p = 0; p < points; ++p) {
            if (mi[p] == 0)
                continue;
            size += mi[p];
            self += mi[p] * mi[p];
            if (mi[p] > 1 || cluster.points[p].proximate_to.size() > 1 || branches_through[p] > 1) {
                last_critical = p;
                any_critical = true;
            }
        }
        if (any_critical)
            for (std::size_t p = 0; p <= last_critical; ++p)
                minimal += mi[p];
        if (minimal > size)
            fail(ErrorKind::Inconsistent, "branch " + std::to_string(i) + " has m > l");
        data.sizes.push_back(size);
        data.self_pairing.push_back(self);
        data.minimal_multiplicity.push_back(minimal);
        data.gram[i][i] = size;
        for (std::size_t j = 0; j < i; ++j) {
            long dot = 0;
            for (std::size_t p = 0; p < points; ++p)
                dot += static_cast<long>(mi[p]) * data.multiplicity[j][p];
            data.gram[i][j] = data.gram[j][i] = dot;
        }
    }
    return data;
}

// ---- star families --------------------------------------------------------

auto to_string(StarFamily family) -> std::string
{
    switch (family) {
    case StarFamily::C6: return "C6";
    case StarFamily::C3: return "C3";
    case StarFamily::C2: return "C2";
    case StarFamily::B2: return "B2";
    case StarFamily::B4: return "B4";
    case StarFamily::A3: return "A3";
    case StarFamily::A4Deg4: return "A^4";
    case StarFamily::B4Deg4: return "B^4";
    case StarFamily::C4Deg4: return "C^4";
    }
    return "?";
}

auto all_star_families() -> std::vector<StarFamily>
{
    return {StarFamily::C6, StarFamily::C3, StarFamily::C2, StarFamily::B2, StarFamily::B4, StarFamily::A3,
        StarFamily::A4Deg4, StarFamily::B4Deg4, StarFamily::C4Deg4};
}

auto parse_star_family(std::string_view s) -> StarFamily
{
    for (auto f : all_star_families())
        if (s == to_string(f))
            return f;
    if (s == "A4")
        return StarFamily::A4Deg4;
    fail(ErrorKind::InvalidInput, "unknown star family '" + std::string(s)
            + "' (expected C6, C3, C2, B2, B4, A3, A^4, B^4 or C^4)");
}

auto star_shape(StarFamily family) -> StarFamilyShape
{
    constexpr int a = 0, b = 1, c = 2;
    switch (family) {
    case StarFamily::C6: return {AbcFamily::C, 3, 0, 0, 0, b, a, c};
    case StarFamily::C3: return {AbcFamily::C, 3, 3, 0, 0, c, a, b};
    case StarFamily::C2: return {AbcFamily::C, 3, 0, 4, 0, b, c, a};
    case StarFamily::B2: return {AbcFamily::B, 3, 1, 2, 0, c, b, a};
    case StarFamily::B4: return {AbcFamily::B, 3, 1, 0, 0, b, a, c};
    case StarFamily::A3: return {AbcFamily::A, 3, 0, 1, 0, b, a, c};
    case StarFamily::A4Deg4: return {AbcFamily::A, 4, 0, 1, 2, b, a, c};
    case StarFamily::B4Deg4: return {AbcFamily::B, 4, 1, 2, 1, c, b, a};
    case StarFamily::C4Deg4: return {AbcFamily::C, 4, 0, 0, 5, b, a, c};
    }
    fail(ErrorKind::InvalidInput, "unknown star family");
}

auto StarFamilyInstance::ell() const -> int
{
    for (std::size_t i = 0; i < cusps.size(); ++i)
        if (cusps[i] > 0)
            return static_cast<int>(i);
    return static_cast<int>(cusps.size());
}

void validate_instance(const StarFamilyInstance & instance)
{
    auto shape = star_shape(instance.family);
    require(instance.n >= 1, "the long arm needs at least one vertex");
    require(instance.cusps.size() == static_cast<std::size_t>(instance.n) + 1,
        "cusp list needs n + 1 entries (node, then the long arm)");
    long total = shape.l_count + shape.s_count + shape.gamma_count;
    for (auto c : instance.cusps) {
        require(c >= 0, "negative cusp count");
        total += c;
    }
    require(instance.cusps.back() >= 1, "the last long-arm vertex needs a cusp");
    if (total != 4 + instance.n)
        fail(ErrorKind::InvalidInput, to_string(instance.family) + " instance has " + std::to_string(total)
                + " curves, expected 4 + n = " + std::to_string(4 + instance.n));
}

auto star_graph(const StarFamilyInstance & instance) -> PlumbingTree
{
    validate_instance(instance);
    auto shape = star_shape(instance.family);
    const auto & c = instance.cusps;
    PlumbingTree t;
    auto e1 = t.add_vertex("E1", -3 - shape.l_count);
    auto e2 = t.add_vertex("E2", -2 - shape.s_count);
    auto node = t.add_vertex("E3", (shape.degree == 4 ? -3 : -2) - c[0]);
    t.add_edge(node, e1);
    t.add_edge(node, e2);
    auto prev = node;
    for (int i = 1; i <= instance.n; ++i) {
        auto framing = (i < instance.n ? -2 : -1) - c[static_cast<std::size_t>(i)];
        auto v = t.add_vertex("A" + std::to_string(i), framing);
        t.add_edge(prev, v);
        prev = v;
    }
    if (shape.degree == 4) {
        auto ep = t.add_vertex("Ep", -1 - shape.gamma_count);
        t.add_edge(node, ep);
    }
    return t;
}

namespace {

struct CurveRole {
    char kind = 'C';
    int index = 0;
};

auto role_of(const PresentationCurve & c) -> CurveRole
{
    require(! c.label.empty(), "star curve without a label");
    char k = c.label[0];
    require(k == 'L' || k == 'S' || k == 'C' || k == 'G', "unrecognized star curve label '" + c.label + "'");
    return {k, c.arm_position};
}

constexpr long unknown = -1;

} // namespace

auto cusp_table_gram(const SandwichPresentation & presentation) -> SmallMatrix
{
    auto n = presentation.curves.size();
    std::vector<CurveRole> roles;
    for (const auto & c : presentation.curves)
        roles.push_back(role_of(c));
    auto rank = [](char k) { return k == 'L' ? 0 : k == 'S' ? 1 : k == 'C' ? 2 : 3; };
    SmallMatrix g(n, std::vector<long>(n, unknown));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto x = roles[i], y = roles[j];
            if (rank(x.kind) > rank(y.kind))
                std::swap(x, y);
            long v = unknown;
            if (i == j) {
                v = x.kind == 'L' ? 2 : x.kind == 'S' ? 3 : x.kind == 'C' ? 5 + x.index : unknown;
            }
            else if (x.kind == 'L') {
                v = y.kind == 'L' ? 1 : y.kind == 'S' ? 1 : 2;
            }
            else if (x.kind == 'S') {
                v = y.kind == 'S' ? 2 : 3;
            }
            else if (x.kind == 'C') {
                v = y.kind == 'C' ? 6 + std::min(x.index, y.index) : 6;
            }
            g[i][j] = v;
        }
    return g;
}

auto star_presentation(const StarFamilyInstance & instance) -> SandwichPresentation
{
    auto shape = star_shape(instance.family);
    SandwichPresentation p;
    p.base = star_graph(instance);
    p.end_vertex = "E1";
    auto add = [&](const std::string & vertex, const std::string & label, int arm) {
        p.curves.push_back(PresentationCurve{vertex, 0, BranchKind::Smooth, label, arm});
    };
    for (int k = 1; k <= shape.l_count; ++k)
        add("E1", "L" + std::to_string(k), -1);
    for (int k = 1; k <= shape.s_count; ++k)
        add("E2", "S" + std::to_string(k), -1);
    for (int i = 0; i <= instance.n; ++i)
        for (int j = 1; j <= instance.cusps[static_cast<std::size_t>(i)]; ++j)
            add(i == 0 ? "E3" : "A" + std::to_string(i), "C" + std::to_string(i) + "." + std::to_string(j), i);
    for (int k = 1; k <= shape.gamma_count; ++k)
        add("Ep", "G" + std::to_string(k), -1);

    auto data = noether_gram(blowdown_cluster(p));
    for (std::size_t i = 0; i < p.curves.size(); ++i) {
        auto & c = p.curves[i];
        c.size = data.sizes[i];
        auto top = *std::max_element(data.multiplicity[i].begin(), data.multiplicity[i].end());
        c.kind = top >= 2 ? BranchKind::Cusp : BranchKind::Smooth;
        bool want_cusp = c.label[0] == 'C' || c.label[0] == 'G';
        if ((c.kind == BranchKind::Cusp) != want_cusp || top > 2)
            fail(ErrorKind::Inconsistent, "curve " + c.label + " has the wrong branch type in the cluster");
    }
    p.gram = data.gram;
    p.minimal_multiplicity = data.minimal_multiplicity;

    auto table = cusp_table_gram(p);
    for (std::size_t i = 0; i < p.curves.size(); ++i)
        for (std::size_t j = 0; j < p.curves.size(); ++j)
            if (table[i][j] != unknown && table[i][j] != p.gram[i][j])
                fail(ErrorKind::Inconsistent, "cluster gives " + p.curves[i].label + "." + p.curves[j].label + " = "
                        + std::to_string(p.gram[i][j]) + ", the table gives " + std::to_string(table[i][j]));
    return p;
}

auto star_instance_from_tree(StarFamily family, const PlumbingTree & tree) -> std::optional<StarFamilyInstance>
{
    auto shape = star_shape(family);
    static const char * seed[] = {"a", "b", "c"};
    auto node = tree.find("n");
    if (! node || tree.degree(*node) != shape.degree)
        return std::nullopt;
    auto leaf_framing = [&](int arm) -> std::optional<int> {
        auto v = tree.find(seed[arm]);
        if (! v || tree.degree(*v) != 1 || ! tree.adjacent(*v, *node))
            return std::nullopt;
        return tree.framing(*v);
    };
    auto f1 = leaf_framing(shape.e1_arm);
    auto f2 = leaf_framing(shape.e2_arm);
    if (! f1 || ! f2 || -3 - *f1 != shape.l_count || -2 - *f2 != shape.s_count)
        return std::nullopt;

    std::optional<std::size_t> first;
    if (shape.degree == 4) {
        auto fp = leaf_framing(shape.third_arm);
        if (! fp || -1 - *fp != shape.gamma_count)
            return std::nullopt;
        for (auto w : tree.neighbors(*node))
            if (tree.id(w) != "a" && tree.id(w) != "b" && tree.id(w) != "c")
                first = w;
    }
    else {
        for (auto w : tree.neighbors(*node))
            if (tree.id(w) != seed[shape.e1_arm] && tree.id(w) != seed[shape.e2_arm])
                first = w;
    }
    if (! first)
        return std::nullopt;

    StarFamilyInstance instance{family, 0, {}};
    instance.cusps.push_back((shape.degree == 4 ? -3 : -2) - tree.framing(*node));
    auto prev = *node;
    auto cur = *first;
    while (true) {
        if (tree.degree(cur) > 2)
            return std::nullopt;
        instance.n += 1;
        std::optional<std::size_t> next;
        for (auto w : tree.neighbors(cur))
            if (w != prev)
                next = w;
        instance.cusps.push_back((next ? -2 : -1) - tree.framing(cur));
        if (! next)
            break;
        prev = cur;
        cur = *next;
    }
    for (auto c : instance.cusps)
        if (c < 0)
            return std::nullopt;
    if (instance.cusps.back() < 1)
        return std::nullopt;
    long total = shape.l_count + shape.s_count + shape.gamma_count;
    for (auto c : instance.cusps)
        total += c;
    if (total != 4 + instance.n)
        fail(ErrorKind::Inconsistent, "star " + to_string(family) + " read off the tree has "
                + std::to_string(total) + " curves for n = " + std::to_string(instance.n));
    return instance;
}

// ---- Scott configuration and switching ------------------------------------

auto scott_incidence(const SandwichPresentation & presentation) -> Configuration
{
    require(! presentation.has_cusps(), "the Scott configuration needs smooth branches");
    const auto & tree = presentation.base;
    auto end = tree.index_of(presentation.end_vertex);
    Configuration config;
    for (const auto & v : tree.vertices())
        config.points.push_back(v.id);
    auto k = presentation.curves.size();
    for (std::size_t i = 0; i < k; ++i)
        config.points.push_back("f" + std::to_string(i + 1));
    for (std::size_t i = 0; i < k; ++i) {
        ConfigCurve c{presentation.curves[i].vertex, std::vector<int>(config.points.size(), 0)};
        for (auto u : path_between(tree, tree.index_of(c.vertex), end))
            c.row[u] = 1;
        c.row[tree.size() + i] = 1;
        config.curves.push_back(std::move(c));
    }
    return config;
}

auto switch_end(const SandwichPresentation & presentation, const Configuration & config, std::string_view w,
    std::size_t chosen_curve) -> SwitchResult
{
    const auto & tree = presentation.base;
    require(! presentation.has_cusps(), "switching needs smooth branches");
    require(config.curves.size() == presentation.curves.size(), "configuration and presentation differ in curve count");
    auto wi = tree.index_of(w);
    auto v = presentation.end_vertex;
    if (w == v)
        fail(ErrorKind::InvalidInput, "'" + std::string(w) + "' is already the end vertex");
    if (tree.degree(wi) + tree.framing(wi) >= 0)
        fail(ErrorKind::InvalidInput, "'" + std::string(w) + "' cannot be an end vertex (deg + e >= 0)");
    require(chosen_curve < presentation.curves.size(), "chosen curve index out of range");
    if (presentation.curves[chosen_curve].vertex != w)
        fail(ErrorKind::InvalidInput, "the chosen curve is not on '" + std::string(w) + "'");

    SwitchResult result{presentation, config};
    result.presentation.end_vertex = std::string(w);
    result.presentation.curves[chosen_curve].vertex = v;
    const auto & pivot = config.curves[chosen_curve].row;
    for (std::size_t i = 0; i < config.curves.size(); ++i) {
        auto & row = result.config.curves[i].row;
        require(row.size() == pivot.size(), "ragged configuration");
        if (i == chosen_curve) {
            result.config.curves[i].vertex = v;
            continue;
        }
        for (std::size_t p = 0; p < row.size(); ++p) {
            require(row[p] <= 1 && pivot[p] <= 1, "switching needs set-valued curves");
            row[p] = row[p] ^ pivot[p];
        }
    }
    auto gram = gram_smooth(result.presentation);
    for (std::size_t i = 0; i < gram.size(); ++i)
        result.presentation.curves[i].size = static_cast<int>(gram[i][i]);
    result.presentation.gram = gram;
    check_smooth_counts(result.presentation);
    auto report = validate(result.config, result.presentation);
    if (! report.valid)
        fail(ErrorKind::Inconsistent, "switched configuration is invalid: " + report.violations.front());
    return result;
}

} // namespace qhd
