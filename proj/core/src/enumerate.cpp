#include <qhd/graph.hpp>

#include <map>
#include <mutex>

namespace qhd {

auto allowed_framings(const FramingRule & rule, int degree) -> std::vector<int>
{
    switch (degree) {
    case 0: return rule.isolated;
    case 1: return rule.leaf;
    case 2: return rule.degree_two;
    default:
        if (! rule.node.empty())
            return rule.node;
        if (rule.node_offset)
            return {-degree - *rule.node_offset};
        return {};
    }
}

namespace {

auto relabel_bfs(const PlumbingTree & shape) -> PlumbingTree
{
    std::vector<std::size_t> order{0}, position(shape.size(), shape.size());
    position[0] = 0;
    for (std::size_t k = 0; k < order.size(); ++k)
        for (auto w : shape.neighbors(order[k]))
            if (position[w] == shape.size()) {
                position[w] = order.size();
                order.push_back(w);
            }
    PlumbingTree result;
    for (std::size_t k = 0; k < order.size(); ++k)
        result.add_vertex("v" + std::to_string(k + 1), shape.framing(order[k]));
    for (auto [a, b] : shape.edges())
        result.add_edge(position[a], position[b]);
    return result;
}

auto grow(const std::vector<PlumbingTree> & smaller) -> std::vector<PlumbingTree>
{
    std::map<std::string, PlumbingTree> unique;
    for (const auto & tree : smaller)
        for (std::size_t u = 0; u < tree.size(); ++u) {
            auto bigger = tree;
            auto x = bigger.add_vertex("v" + std::to_string(bigger.size() + 1), 0);
            bigger.add_edge(u, x);
            auto key = canonical_form(bigger);
            if (! unique.contains(key))
                unique.emplace(std::move(key), relabel_bfs(bigger));
        }
    std::vector<PlumbingTree> result;
    result.reserve(unique.size());
    for (auto & [key, tree] : unique)
        result.push_back(std::move(tree));
    return result;
}

} // namespace

auto free_trees(std::size_t n) -> std::vector<PlumbingTree>
{
    require(n >= 1, "free trees need at least one vertex");
    static std::mutex mutex;
    static std::vector<std::vector<PlumbingTree>> cache;

    std::lock_guard lock(mutex);
    if (cache.empty()) {
        PlumbingTree single;
        single.add_vertex("v1", 0);
        cache.push_back({single});
    }
    while (cache.size() < n)
        cache.push_back(grow(cache.back()));
    return cache[n - 1];
}

auto enumerate_trees(const TreeConstraints & constraints,
    const std::function<bool(const PlumbingTree &)> & emit, std::size_t skip) -> std::size_t
{
    std::size_t position = 0, emitted = 0;
    for (auto s = std::max<std::size_t>(constraints.min_vertices, 1); s <= constraints.max_vertices; ++s) {
        std::map<std::string, PlumbingTree> framed;
        for (const auto & shape : free_trees(s)) {
            std::size_t nodes = 0;
            long base = -1 - static_cast<long>(s);
            std::vector<std::vector<int>> choices(s);
            bool feasible = true;
            for (std::size_t v = 0; v < s; ++v) {
                nodes += shape.degree(v) >= 3;
                base -= shape.degree(v);
                choices[v] = allowed_framings(constraints.framings, shape.degree(v));
                feasible = feasible && ! choices[v].empty();
            }
            if (! feasible || nodes < constraints.min_nodes || nodes > constraints.max_nodes)
                continue;

            std::vector<std::size_t> digit(s, 0);
            auto tree = shape;
            while (true) {
                long d = base;
                for (std::size_t v = 0; v < s; ++v)
                    d -= choices[v][digit[v]];
                if (! constraints.delta || *constraints.delta == d) {
                    for (std::size_t v = 0; v < s; ++v)
                        tree.set_framing(v, choices[v][digit[v]]);
                    auto key = canonical_form(tree);
                    if (! framed.contains(key))
                        framed.emplace(std::move(key), tree);
                }
                std::size_t k = 0;
                while (k < s && ++digit[k] == choices[k].size())
                    digit[k++] = 0;
                if (k == s)
                    break;
            }
        }
        for (const auto & [key, tree] : framed) {
            if (position++ < skip)
                continue;
            ++emitted;
            if (! emit(tree))
                return emitted;
        }
    }
    return emitted;
}

auto enumerate_trees(const TreeConstraints & constraints) -> std::vector<PlumbingTree>
{
    std::vector<PlumbingTree> result;
    enumerate_trees(constraints, [&](const PlumbingTree & t) {
        result.push_back(t);
        return true;
    });
    return result;
}

} // namespace qhd
