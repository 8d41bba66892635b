#include <qhd/graph.hpp>

#include <algorithm>
#include <deque>
#include <set>

namespace qhd {

auto abc_triple(AbcFamily family) -> std::array<int, 3>
{
    switch (family) {
    case AbcFamily::A: return {3, 3, 3};
    case AbcFamily::B: return {2, 4, 4};
    case AbcFamily::C: return {2, 3, 6};
    }
    fail(ErrorKind::InvalidInput, "unknown family");
}

auto abc_final_framing(AbcFamily family) -> int
{
    switch (family) {
    case AbcFamily::A: return -4;
    case AbcFamily::B: return -3;
    case AbcFamily::C: return -2;
    }
    fail(ErrorKind::InvalidInput, "unknown family");
}

auto to_string(AbcFamily family) -> std::string
{
    switch (family) {
    case AbcFamily::A: return "A";
    case AbcFamily::B: return "B";
    case AbcFamily::C: return "C";
    }
    return "?";
}

auto parse_abc_family(std::string_view s) -> AbcFamily
{
    if (s == "A" || s == "a")
        return AbcFamily::A;
    if (s == "B" || s == "b")
        return AbcFamily::B;
    if (s == "C" || s == "c")
        return AbcFamily::C;
    fail(ErrorKind::InvalidInput, "unknown family '" + std::string(s) + "' (expected A, B or C)");
}

namespace {

struct MutableTree {
    std::vector<Vertex> vertices;
    std::vector<std::set<std::size_t>> adjacency;

    auto add(std::string id, int framing) -> std::size_t
    {
        vertices.push_back(Vertex{std::move(id), framing});
        adjacency.emplace_back();
        return vertices.size() - 1;
    }

    void link(std::size_t a, std::size_t b)
    {
        adjacency[a].insert(b);
        adjacency[b].insert(a);
    }

    void unlink(std::size_t a, std::size_t b)
    {
        adjacency[a].erase(b);
        adjacency[b].erase(a);
    }

    [[nodiscard]] auto distances_from(std::size_t root) const -> std::vector<std::size_t>
    {
        std::vector<std::size_t> dist(vertices.size(), vertices.size());
        std::deque<std::size_t> queue{root};
        dist[root] = 0;
        while (! queue.empty()) {
            auto u = queue.front();
            queue.pop_front();
            for (auto w : adjacency[u])
                if (dist[w] == vertices.size()) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
        }
        return dist;
    }

    [[nodiscard]] auto build(const std::vector<bool> & alive) const -> PlumbingTree
    {
        PlumbingTree tree;
        std::vector<std::size_t> position(vertices.size());
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (alive[i])
                position[i] = tree.add_vertex(vertices[i].id, vertices[i].framing);
        for (std::size_t a = 0; a < vertices.size(); ++a)
            if (alive[a])
                for (auto b : adjacency[a])
                    if (a < b && alive[b])
                        tree.add_edge(position[a], position[b]);
        return tree;
    }

    [[nodiscard]] auto build() const -> PlumbingTree { return build(std::vector<bool>(vertices.size(), true)); }
};

} // namespace

auto abc_generate(AbcFamily family, const std::vector<BlowupSite> & word) -> AbcResult
{
    auto [a, b, c] = abc_triple(family);
    MutableTree t;
    auto center = t.add("n", -1);
    for (auto [name, value] : {std::pair{"a", a}, std::pair{"b", b}, std::pair{"c", c}})
        t.link(center, t.add(name, -value));

    auto current = center;
    std::size_t fresh = 0;
    for (auto site : word) {
        auto x_id = "x" + std::to_string(++fresh);
        if (site == BlowupSite::Vertex) {
            t.vertices[current].framing -= 1;
            auto x = t.add(x_id, -1);
            t.link(current, x);
            current = x;
            continue;
        }
        auto dist = t.distances_from(center);
        std::vector<std::size_t> around(t.adjacency[current].begin(), t.adjacency[current].end());
        std::sort(around.begin(), around.end(), [&](auto p, auto q) {
            return std::pair{dist[p], p} < std::pair{dist[q], q};
        });
        auto k = static_cast<std::size_t>(site) - static_cast<std::size_t>(BlowupSite::Edge1);
        if (k >= around.size())
            fail(ErrorKind::InvalidInput, "blowup site edge_" + std::to_string(k + 1) + " does not exist at '"
                    + t.vertices[current].id + "' (degree " + std::to_string(around.size()) + ")");
        auto other = around[k];
        t.vertices[current].framing -= 1;
        t.vertices[other].framing -= 1;
        auto x = t.add(x_id, -1);
        t.unlink(current, other);
        t.link(current, x);
        t.link(x, other);
        current = x;
    }

    AbcResult result;
    result.unchanged = t.build();
    result.changed_vertex = t.vertices[current].id;
    t.vertices[current].framing = abc_final_framing(family);
    result.tree = t.build();
    return result;
}

auto blow_down_linear_minus_ones(const PlumbingTree & tree) -> PlumbingTree
{
    MutableTree t;
    for (const auto & v : tree.vertices())
        t.add(v.id, v.framing);
    for (auto [p, q] : tree.edges())
        t.link(p, q);

    std::vector<bool> alive(t.vertices.size(), true);
    while (true) {
        std::size_t k = 0;
        while (k < alive.size() && ! (alive[k] && t.vertices[k].framing == -1 && t.adjacency[k].size() <= 2))
            ++k;
        if (k == alive.size())
            break;
        std::vector<std::size_t> around(t.adjacency[k].begin(), t.adjacency[k].end());
        for (auto w : around) {
            t.vertices[w].framing += 1;
            t.unlink(k, w);
        }
        if (around.size() == 2)
            t.link(around[0], around[1]);
        alive[k] = false;
    }
    return t.build(alive);
}

} // namespace qhd
