#include <qhd/reduction.hpp>
#include <qhd/solver.hpp>

#include <algorithm>
#include <deque>
#include <tuple>

namespace qhd {

auto to_string(const ReducingTriple & triple) -> std::string
{
    return "(" + triple.v + "," + triple.w + "," + triple.z + (triple.leafred ? ",leafred)" : ")");
}

namespace {

/// parent[u] toward root; root's parent is itself.
auto parents_toward(const PlumbingTree & tree, std::size_t root) -> std::vector<std::size_t>
{
    constexpr auto none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> parent(tree.size(), none);
    std::deque<std::size_t> queue{root};
    parent[root] = root;
    while (! queue.empty()) {
        auto u = queue.front();
        queue.pop_front();
        for (auto w : tree.neighbors(u))
            if (parent[w] == none) {
                parent[w] = u;
                queue.push_back(w);
            }
    }
    return parent;
}

/// y >= x in the order rooted at root: x lies on p(y, root).
auto above(const std::vector<std::size_t> & parent, std::size_t x, std::size_t y) -> bool
{
    while (true) {
        if (y == x)
            return true;
        if (parent[y] == y)
            return false;
        y = parent[y];
    }
}

void require_sets(const Configuration & config)
{
    for (const auto & c : config.curves)
        for (auto m : c.row)
            require(m == 0 || m == 1, "reduction needs set-valued curves");
}

} // namespace

auto find_triples(const SandwichPresentation & presentation) -> std::vector<ReducingTriple>
{
    require(! presentation.has_cusps(), "reduction needs smooth branches");
    const auto & tree = presentation.base;
    auto n = tree.size();
    auto end = tree.index_of(presentation.end_vertex);
    std::vector<long> actual(n);
    for (std::size_t x = 0; x < n; ++x)
        actual[x] = static_cast<long>(presentation.curve_count(tree.id(x)));

    using Key = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, bool>;
    std::vector<Key> keys;
    for (std::size_t a = 0; a < n; ++a) {
        if (a != end && actual[a] < 1)
            continue;
        auto count = [&](std::size_t x) {
            return actual[x] + (x == end ? 1 : 0) - (x == a ? 1 : 0);
        };
        for (std::size_t z = 0; z < n; ++z) {
            auto path = path_between(tree, z, a);
            bool attaches_inside = false;
            for (std::size_t k = 1; k + 1 < path.size(); ++k)
                attaches_inside = attaches_inside || tree.degree(path[k]) != 2;
            if (attaches_inside)
                continue;
            for (auto w : path) {
                bool all_equal = a == w && w == z;
                bool low_degree = tree.degree(a) <= 2 && tree.degree(w) <= 2 && tree.degree(z) <= 2
                    && tree.degree(a) >= 1 && tree.degree(w) >= 1 && tree.degree(z) >= 1;
                bool leafred = a == w && tree.degree(a) < 3 && tree.degree(z) > 2 && z != a;
                if (! all_equal && ! low_degree && ! leafred)
                    continue;

                bool empty_inside = true;
                for (auto x : path)
                    if (x != a && x != w && x != z && count(x) != 0)
                        empty_inside = false;
                if (! empty_inside)
                    continue;

                bool enough = false;
                if (all_equal)
                    enough = count(a) >= 3;
                else if (a == w)
                    enough = count(a) >= 2 && count(z) >= (leafred && ! low_degree ? 2 : 1);
                else if (w == z)
                    enough = count(a) >= 1 && count(w) >= 2;
                else
                    enough = count(a) >= 1 && count(w) == 1 && count(z) >= 1;
                if (! enough)
                    continue;
                keys.emplace_back(path.size(), a, w, z, leafred && ! low_degree);
            }
        }
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<ReducingTriple> result;
    for (const auto & [len, a, w, z, leafred] : keys)
        result.push_back(ReducingTriple{tree.id(a), tree.id(w), tree.id(z), leafred});
    return result;
}

auto anchor_at(const SandwichPresentation & presentation, const Configuration & config, std::string_view vertex)
    -> SwitchResult
{
    if (presentation.end_vertex == vertex)
        return SwitchResult{presentation, config};
    auto at = presentation.curves_at(vertex);
    if (at.empty())
        fail(ErrorKind::InvalidInput, "'" + std::string(vertex) + "' carries no curve to switch on");
    return switch_end(presentation, config, vertex, at.front());
}

auto qpq(const SandwichPresentation & presentation, const Configuration & config, const ReducingTriple & triple)
    -> QpqData
{
    require(presentation.end_vertex == triple.v, "the blowdown must end at the triple's v; anchor first");
    require_sets(config);
    auto on_w = presentation.curves_at(triple.w);
    require(! on_w.empty(), "no curve on w");
    QpqData d;
    d.curve_w = on_w.front();
    auto on_z = presentation.curves_at(triple.z);
    std::erase(on_z, d.curve_w);
    require(! on_z.empty(), "no curve on z besides C_w");
    d.curve_z = on_z.front();

    const auto & cw = config.curves[d.curve_w].row;
    const auto & cz = config.curves[d.curve_z].row;
    auto points = config.points.size();

    if (triple.leafred) {
        require(on_z.size() >= 2, "the leaf variant needs two curves on z");
        const auto & cz2 = config.curves[on_z[1]].row;
        std::vector<std::size_t> common, rest;
        for (std::size_t p = 0; p < points; ++p) {
            if (! cw[p])
                continue;
            (cz[p] && cz2[p] ? common : rest).push_back(p);
        }
        if (common.size() != 1 || rest.size() != 1)
            fail(ErrorKind::Inconsistent, "leafred violated: C_z1, C_z2 and C_v share "
                    + std::to_string(common.size()) + " points");
        d.q = rest.front();
        d.p = common;
        for (std::size_t p = 0; p < points; ++p)
            if (cz[p] && p != common.front())
                d.q_prime.push_back(p);
        return d;
    }

    std::vector<std::size_t> outside;
    for (std::size_t p = 0; p < points; ++p) {
        if (cw[p] && ! cz[p])
            outside.push_back(p);
        if (cw[p] && cz[p])
            d.p.push_back(p);
        if (cz[p] && ! cw[p])
            d.q_prime.push_back(p);
    }
    if (outside.size() != 1)
        fail(ErrorKind::Inconsistent, "C_w \\ C_z has " + std::to_string(outside.size()) + " points, expected one");
    d.q = outside.front();
    return d;
}

auto separating_edge(const SandwichPresentation & presentation, const Configuration & config,
    const ReducingTriple & triple, const QpqData & data) -> std::optional<SeparatingEdge>
{
    const auto & tree = presentation.base;
    auto n = tree.size();
    auto root = tree.index_of(triple.v);
    auto w = tree.index_of(triple.w);
    auto parent = parents_toward(tree, root);

    auto ignored = [&](std::size_t i) {
        return i == data.curve_w || (triple.w == triple.z && i == data.curve_z);
    };

    enum class Mark { Unknown, Yes, No };
    std::vector<Mark> mark(n, Mark::Unknown);
    bool anywhere = false;
    for (std::size_t i = 0; i < presentation.curves.size(); ++i) {
        if (ignored(i))
            continue;
        auto x = tree.index_of(presentation.curves[i].vertex);
        bool has = config.curves[i].row[data.q] != 0;
        anywhere = anywhere || has;
        auto m = has ? Mark::Yes : Mark::No;
        if (mark[x] != Mark::Unknown && mark[x] != m)
            fail(ErrorKind::Inconsistent, "curves on '" + tree.id(x) + "' disagree on Q");
        mark[x] = m;
    }
    if (! anywhere)
        fail(ErrorKind::Inconsistent, "Q = " + config.points[data.q] + " is a free point");

    for (std::size_t x = 0; x < n; ++x) {
        if (x == w || mark[x] != Mark::Yes)
            continue;
        for (std::size_t i = 0; i < presentation.curves.size(); ++i) {
            if (i == data.curve_w)
                continue;
            auto y = tree.index_of(presentation.curves[i].vertex);
            if (above(parent, x, y) && config.curves[i].row[data.q] == 0)
                fail(ErrorKind::Inconsistent, "Q propagation fails: '" + tree.id(x) + "' contains Q but curve "
                        + std::to_string(i) + " on '" + tree.id(y) + "' does not");
        }
    }

    bool any_no = std::any_of(mark.begin(), mark.end(), [](Mark m) { return m == Mark::No; });
    if (! any_no)
        return std::nullopt;

    // candidate edges (u, parent[u]): the subtree of u holds every Yes and no No, or the reverse
    std::vector<std::pair<std::size_t, std::size_t>> candidates;
    for (std::size_t u = 0; u < n; ++u) {
        if (u == root)
            continue;
        bool yes_in = true, yes_out = true, no_in = false, no_out = false;
        for (std::size_t x = 0; x < n; ++x) {
            bool inside = above(parent, u, x);
            if (mark[x] == Mark::Yes) {
                yes_in = yes_in && inside;
                yes_out = yes_out && ! inside;
            }
            if (mark[x] == Mark::No) {
                no_in = no_in || inside;
                no_out = no_out || ! inside;
            }
        }
        if ((yes_in && ! no_in) || (yes_out && ! no_out))
            candidates.emplace_back(u, parent[u]);
    }
    if (candidates.empty())
        fail(ErrorKind::Inconsistent, "the vertices containing Q are not cut off by a single edge");
    auto pick = candidates.front();
    for (auto c : candidates)
        if (c.first == w || c.second == w) {
            pick = c;
            break;
        }
    return SeparatingEdge{tree.id(pick.second), tree.id(pick.first)};
}

auto reduce_step(const SandwichPresentation & presentation, const Configuration & config,
    const ReducingTriple & triple) -> ReductionStep
{
    auto anchored = anchor_at(presentation, config, triple.v);
    const auto & pres = anchored.presentation;
    const auto & conf = anchored.config;
    auto data = qpq(pres, conf, triple);
    auto edge = separating_edge(pres, conf, triple, data);
    if (! edge)
        fail(ErrorKind::Terminal, "terminal: every vertex contains Q for triple " + to_string(triple));

    const auto & tree = pres.base;
    auto keep = tree.index_of(edge->keep);
    auto other = tree.index_of(edge->other);

    ReductionStep step;
    step.triple = triple;
    step.switched = presentation.end_vertex != triple.v;
    step.q = conf.points[data.q];
    for (auto p : data.p)
        step.p.push_back(conf.points[p]);
    for (auto p : data.q_prime)
        step.q_prime.push_back(conf.points[p]);
    step.removed_curve = pres.curves[data.curve_w].label;
    step.edge = *edge;

    long merged_curves = 0;
    for (std::size_t i = 0; i < pres.curves.size(); ++i)
        if (i != data.curve_w && (pres.curves[i].vertex == edge->keep || pres.curves[i].vertex == edge->other))
            ++merged_curves;
    auto merged_degree = static_cast<long>(tree.degree(keep) + tree.degree(other) - 2);
    bool merged_is_end = edge->keep == triple.v || edge->other == triple.v;
    step.merged_framing = static_cast<int>(-merged_degree - merged_curves - (merged_is_end ? 1 : 0));

    SandwichPresentation next;
    next.base = contract_edge(tree, edge->keep, edge->other, step.merged_framing);
    next.end_vertex = merged_is_end ? edge->keep : triple.v;
    Configuration reduced;
    for (std::size_t p = 0; p < conf.points.size(); ++p)
        if (p != data.q)
            reduced.points.push_back(conf.points[p]);
    for (std::size_t i = 0; i < pres.curves.size(); ++i) {
        if (i == data.curve_w)
            continue;
        auto curve = pres.curves[i];
        if (curve.vertex == edge->other)
            curve.vertex = edge->keep;
        next.curves.push_back(curve);
        ConfigCurve row{curve.vertex, {}};
        for (std::size_t p = 0; p < conf.points.size(); ++p)
            if (p != data.q)
                row.row.push_back(conf.curves[i].row[p]);
        reduced.curves.push_back(std::move(row));
    }
    next.gram = gram_smooth(next);
    for (std::size_t i = 0; i < next.curves.size(); ++i)
        next.curves[i].size = static_cast<int>(next.gram[i][i]);

    try {
        check_smooth_counts(next);
    }
    catch (const Error & e) {
        fail(ErrorKind::Inconsistent, std::string("contracted presentation is invalid: ") + e.what());
    }
    auto report = validate(reduced, next);
    if (! report.valid)
        fail(ErrorKind::Inconsistent, "contracted configuration is invalid: " + report.violations.front());
    step.delta = delta(next.base);
    if (step.delta != delta(tree))
        fail(ErrorKind::Inconsistent, "delta changed across the step");
    step.presentation = std::move(next);
    step.config = std::move(reduced);
    return step;
}

auto ReductionTrace::final_presentation() const -> const SandwichPresentation &
{
    return steps.empty() ? initial_presentation : steps.back().presentation;
}

auto ReductionTrace::final_config() const -> const Configuration &
{
    return steps.empty() ? initial_config : steps.back().config;
}

namespace {

auto first_step(const SandwichPresentation & presentation, const Configuration & config, std::string * note)
    -> std::optional<ReductionStep>
{
    for (const auto & triple : find_triples(presentation)) {
        try {
            return reduce_step(presentation, config, triple);
        }
        catch (const Error & e) {
            if (e.kind() != ErrorKind::Terminal && e.kind() != ErrorKind::Inconsistent)
                throw;
            if (note && note->empty())
                *note = to_string(triple) + ": " + e.what();
        }
    }
    return std::nullopt;
}

} // namespace

auto reduce_fully(const SandwichPresentation & presentation, const Configuration & config) -> ReductionTrace
{
    auto report = validate(config, presentation);
    if (! report.valid)
        fail(ErrorKind::InvalidInput, "configuration is invalid: " + report.violations.front());
    ReductionTrace trace{presentation, config, {}, delta(presentation.base), 0};
    auto limit = presentation.base.size();
    while (trace.steps.size() < limit) {
        auto step = first_step(trace.final_presentation(), trace.final_config(), nullptr);
        if (! step)
            break;
        trace.steps.push_back(std::move(*step));
    }
    trace.final_delta = delta(trace.final_presentation().base);
    if (trace.final_delta != trace.initial_delta)
        fail(ErrorKind::Inconsistent, "delta changed along the reduction");
    return trace;
}

auto is_reduced(const SandwichPresentation & presentation, const Configuration & config) -> ReducedReport
{
    ReducedReport report;
    report.triples = find_triples(presentation).size();
    std::string note;
    report.reduced = ! first_step(presentation, config, &note).has_value();
    report.note = note;

    const auto & tree = presentation.base;
    bool ok = true;
    std::vector<bool> is_node(tree.size());
    for (std::size_t x = 0; x < tree.size(); ++x) {
        is_node[x] = tree.degree(x) >= 3;
        auto c = presentation.curve_count(tree.id(x));
        ok = ok && (is_node[x] ? c == 2 : c <= 1);
    }
    std::vector<bool> seen(tree.size(), false);
    for (std::size_t s = 0; s < tree.size() && ok; ++s) {
        if (is_node[s] || seen[s])
            continue;
        std::size_t total = 0;
        std::deque<std::size_t> queue{s};
        seen[s] = true;
        while (! queue.empty()) {
            auto u = queue.front();
            queue.pop_front();
            total += presentation.curve_count(tree.id(u));
            for (auto x : tree.neighbors(u))
                if (! is_node[x] && ! seen[x]) {
                    seen[x] = true;
                    queue.push_back(x);
                }
        }
        ok = total <= 2;
    }
    report.structural = ok;
    if (report.reduced != report.structural) {
        auto mismatch = report.reduced ? "no step applies, but the structural description fails"
                                       : "the structural description holds, but a step applies";
        report.note = report.note.empty() ? mismatch : std::string(mismatch) + "; " + report.note;
    }
    return report;
}

auto reduced_size_bound(int nodes, bool has_degree_four) -> int
{
    require(nodes >= 1, "node count must be positive");
    return 7 * nodes + (has_degree_four ? 1 : -2);
}

} // namespace qhd
