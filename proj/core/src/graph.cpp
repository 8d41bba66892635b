#include <qhd/graph.hpp>

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace qhd {

auto PlumbingTree::add_vertex(std::string id, int framing) -> std::size_t
{
    require(! id.empty(), "vertex id must be non-empty");
    require(! _index.contains(id), "duplicate vertex id '" + id + "'");
    auto i = _vertices.size();
    _index.emplace(id, i);
    _vertices.push_back(Vertex{std::move(id), framing});
    _adjacency.emplace_back();
    return i;
}

void PlumbingTree::add_edge(std::size_t a, std::size_t b)
{
    require(a < size() && b < size(), "edge endpoint out of range");
    require(a != b, "self-loop at '" + id(a) + "'");
    require(! adjacent(a, b), "duplicate edge '" + id(a) + "'-'" + id(b) + "'");
    _adjacency[a].push_back(b);
    _adjacency[b].push_back(a);
    ++_edge_count;
}

void PlumbingTree::add_edge(std::string_view a, std::string_view b)
{
    add_edge(index_of(a), index_of(b));
}

auto PlumbingTree::find(std::string_view id) const -> std::optional<std::size_t>
{
    auto it = _index.find(std::string(id));
    if (it == _index.end())
        return std::nullopt;
    return it->second;
}

auto PlumbingTree::index_of(std::string_view id) const -> std::size_t
{
    auto i = find(id);
    if (! i)
        fail(ErrorKind::InvalidInput, "unknown vertex '" + std::string(id) + "'");
    return *i;
}

auto PlumbingTree::adjacent(std::size_t a, std::size_t b) const -> bool
{
    const auto & n = _adjacency.at(a);
    return std::find(n.begin(), n.end(), b) != n.end();
}

auto PlumbingTree::edges() const -> std::vector<std::pair<std::size_t, std::size_t>>
{
    std::vector<std::pair<std::size_t, std::size_t>> result;
    result.reserve(_edge_count);
    for (std::size_t a = 0; a < size(); ++a)
        for (auto b : _adjacency[a])
            if (a < b)
                result.emplace_back(a, b);
    std::sort(result.begin(), result.end());
    return result;
}

auto PlumbingTree::is_tree() const -> bool
{
    if (empty())
        return false;
    if (_edge_count + 1 != size())
        return false;
    std::vector<bool> seen(size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (! stack.empty()) {
        auto u = stack.back();
        stack.pop_back();
        for (auto w : _adjacency[u])
            if (! seen[w]) {
                seen[w] = true;
                ++reached;
                stack.push_back(w);
            }
    }
    return reached == size();
}

void PlumbingTree::validate_tree() const
{
    require(! empty(), "graph has no vertices");
    require(is_tree(), "graph is not a tree (must be connected and acyclic)");
}

void PlumbingTree::validate_resolution() const
{
    validate_tree();
    for (const auto & v : _vertices)
        require(v.framing <= -1, "vertex '" + v.id + "' has framing " + std::to_string(v.framing) + " > -1");
}

auto operator==(const PlumbingTree & a, const PlumbingTree & b) -> bool
{
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a._vertices[i].id != b._vertices[i].id || a._vertices[i].framing != b._vertices[i].framing)
            return false;
    return a.edges() == b.edges();
}

auto linear_tree(const std::vector<int> & framings, std::string_view prefix) -> PlumbingTree
{
    PlumbingTree tree;
    for (std::size_t i = 0; i < framings.size(); ++i) {
        tree.add_vertex(std::string(prefix) + std::to_string(i + 1), framings[i]);
        if (i > 0)
            tree.add_edge(i - 1, i);
    }
    return tree;
}

auto stats(const PlumbingTree & tree, std::string_view v) -> VertexStats
{
    auto i = tree.index_of(v);
    VertexStats s;
    s.degree = tree.degree(i);
    s.framing = tree.framing(i);
    s.is_node = s.degree >= 3;
    s.is_leaf = s.degree == 1;
    s.is_large_node = s.degree + s.framing <= -2;
    return s;
}

auto delta(const PlumbingTree & tree) -> long
{
    long sum = 0;
    for (std::size_t i = 0; i < tree.size(); ++i)
        sum += -tree.framing(i) - tree.degree(i);
    return sum - 1 - static_cast<long>(tree.size());
}

auto path_between(const PlumbingTree & tree, std::size_t from, std::size_t to) -> std::vector<std::size_t>
{
    require(from < tree.size() && to < tree.size(), "path endpoint out of range");
    constexpr auto none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> parent(tree.size(), none);
    std::deque<std::size_t> queue{to};
    parent[to] = to;
    while (! queue.empty()) {
        auto u = queue.front();
        queue.pop_front();
        if (u == from)
            break;
        for (auto w : tree.neighbors(u))
            if (parent[w] == none) {
                parent[w] = u;
                queue.push_back(w);
            }
    }
    if (parent[from] == none)
        fail(ErrorKind::InvalidInput, "no path between '" + tree.id(from) + "' and '" + tree.id(to) + "'");
    std::vector<std::size_t> path{from};
    while (path.back() != to)
        path.push_back(parent[path.back()]);
    return path;
}

auto path_between(const PlumbingTree & tree, std::string_view from, std::string_view to) -> std::vector<std::string>
{
    std::vector<std::string> result;
    for (auto i : path_between(tree, tree.index_of(from), tree.index_of(to)))
        result.push_back(tree.id(i));
    return result;
}

auto contract_edge(const PlumbingTree & tree, std::string_view keep, std::string_view other, int new_framing)
    -> PlumbingTree
{
    auto k = tree.index_of(keep);
    auto o = tree.index_of(other);
    if (! tree.adjacent(k, o))
        fail(ErrorKind::InvalidInput,
            "no edge '" + std::string(keep) + "'-'" + std::string(other) + "' to contract");

    PlumbingTree result;
    std::vector<std::size_t> remap(tree.size());
    for (std::size_t i = 0; i < tree.size(); ++i) {
        if (i == o)
            continue;
        remap[i] = result.add_vertex(tree.id(i), i == k ? new_framing : tree.framing(i));
    }
    remap[o] = remap[k];
    for (auto [a, b] : tree.edges()) {
        if ((a == k && b == o) || (a == o && b == k))
            continue;
        result.add_edge(remap[a], remap[b]);
    }
    return result;
}

auto hirzebruch_jung(const BigInt & numerator, const BigInt & denominator) -> std::vector<int>
{
    require(denominator > 0 && numerator > denominator, "continued fraction needs n > d > 0");
    std::vector<int> result;
    BigInt n = numerator, d = denominator;
    while (d != 0) {
        BigInt a = (n + d - 1) / d;
        result.push_back(a.convert_to<int>());
        BigInt next = a * d - n;
        n = d;
        d = next;
    }
    return result;
}

auto evaluate_continued_fraction(const std::vector<int> & coefficients) -> Rational
{
    require(! coefficients.empty(), "empty continued fraction");
    Rational x = coefficients.back();
    for (auto it = coefficients.rbegin() + 1; it != coefficients.rend(); ++it) {
        require(x != 0, "continued fraction hits division by zero");
        x = Rational(*it) - 1 / x;
    }
    return x;
}

auto linear_from_fraction(int p, int q) -> PlumbingTree
{
    require(p > q && q > 0, "linear_from_fraction needs p > q > 0");
    require(std::gcd(p, q) == 1, "linear_from_fraction needs coprime p, q");
    BigInt n = BigInt(p) * p;
    BigInt d = BigInt(p) * q - 1;
    auto coefficients = hirzebruch_jung(n, d);
    std::vector<int> framings;
    for (auto a : coefficients)
        framings.push_back(-a);
    return linear_tree(framings);
}

auto expand_sketch(const EdgeSketch & sketch) -> PlumbingTree
{
    // Union-find over sketch vertices for the -1 merges.
    std::vector<Vertex> vertices = sketch.vertices;
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        require(! index.contains(vertices[i].id), "duplicate sketch vertex '" + vertices[i].id + "'");
        index.emplace(vertices[i].id, i);
    }
    auto lookup = [&](const std::string & id) {
        auto it = index.find(id);
        if (it == index.end())
            fail(ErrorKind::InvalidInput, "sketch edge references unknown vertex '" + id + "'");
        return it->second;
    };
    std::vector<std::size_t> rep(vertices.size());
    std::iota(rep.begin(), rep.end(), 0);
    auto root = [&](std::size_t i) {
        while (rep[i] != i)
            i = rep[i] = rep[rep[i]];
        return i;
    };

    for (const auto & e : sketch.edges) {
        require(e.label >= -1, "edge label " + std::to_string(e.label) + " < -1");
        if (e.label != -1)
            continue;
        auto a = root(lookup(e.a)), b = root(lookup(e.b));
        if (a == b)
            fail(ErrorKind::InvalidInput, "merging '" + e.a + "' and '" + e.b + "' produces a cycle");
        vertices[a].framing = vertices[a].framing + vertices[b].framing + 2;
        rep[b] = a;
    }

    PlumbingTree tree;
    std::vector<std::size_t> position(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (root(i) == i)
            position[i] = tree.add_vertex(vertices[i].id, vertices[i].framing);

    for (const auto & e : sketch.edges) {
        if (e.label == -1)
            continue;
        auto a = position[root(lookup(e.a))], b = position[root(lookup(e.b))];
        if (a == b)
            fail(ErrorKind::InvalidInput, "edge '" + e.a + "'-'" + e.b + "' became a loop after merging");
        auto previous = a;
        for (int k = 1; k <= e.label; ++k) {
            auto x = tree.add_vertex(e.a + "~" + e.b + "~" + std::to_string(k), -2);
            tree.add_edge(previous, x);
            previous = x;
        }
        if (tree.adjacent(previous, b))
            fail(ErrorKind::InvalidInput, "expansion of '" + e.a + "'-'" + e.b + "' produces a cycle");
        tree.add_edge(previous, b);
    }
    if (! tree.is_tree())
        fail(ErrorKind::InvalidInput, "expanded sketch is not a tree");
    return tree;
}

namespace {

auto encode(const PlumbingTree & tree, std::size_t u, std::size_t parent) -> std::string
{
    std::vector<std::string> children;
    for (auto w : tree.neighbors(u))
        if (w != parent)
            children.push_back(encode(tree, w, u));
    std::sort(children.begin(), children.end());
    std::string s = "(" + std::to_string(tree.framing(u)) + ",";
    for (const auto & c : children)
        s += c;
    s += ")";
    return s;
}

auto centroids(const PlumbingTree & tree) -> std::vector<std::size_t>
{
    auto n = tree.size();
    std::vector<std::size_t> order, parent(n, n), subtree(n, 1);
    std::vector<std::size_t> stack{0};
    parent[0] = 0;
    while (! stack.empty()) {
        auto u = stack.back();
        stack.pop_back();
        order.push_back(u);
        for (auto w : tree.neighbors(u))
            if (w != parent[u]) {
                parent[w] = u;
                stack.push_back(w);
            }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (*it != 0)
            subtree[parent[*it]] += subtree[*it];

    std::vector<std::size_t> result;
    std::size_t best = n + 1;
    for (std::size_t u = 0; u < n; ++u) {
        std::size_t heaviest = n - subtree[u];
        for (auto w : tree.neighbors(u))
            if (parent[w] == u)
                heaviest = std::max(heaviest, subtree[w]);
        if (heaviest < best) {
            best = heaviest;
            result = {u};
        }
        else if (heaviest == best)
            result.push_back(u);
    }
    return result;
}

} // namespace

auto canonical_form(const PlumbingTree & tree) -> std::string
{
    tree.validate_tree();
    std::string best;
    for (auto c : centroids(tree)) {
        auto s = encode(tree, c, c);
        if (best.empty() || s < best)
            best = std::move(s);
    }
    return best;
}

auto isomorphic(const PlumbingTree & a, const PlumbingTree & b) -> bool
{
    return a.size() == b.size() && canonical_form(a) == canonical_form(b);
}

} // namespace qhd
