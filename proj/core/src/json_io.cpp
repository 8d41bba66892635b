#include <qhd/json_io.hpp>

#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace qhd {

namespace {

auto field(const Json & j, const char * key) -> const Json &
{
    if (! j.is_object() || ! j.contains(key))
        fail(ErrorKind::InvalidInput, std::string("missing field '") + key + "'");
    return j.at(key);
}

auto as_int(const Json & j, const char * what) -> int
{
    if (! j.is_number_integer())
        fail(ErrorKind::InvalidInput, std::string(what) + " must be an integer");
    return j.get<int>();
}

auto as_string(const Json & j, const char * what) -> std::string
{
    if (j.is_string())
        return j.get<std::string>();
    if (j.is_number_integer())
        return std::to_string(j.get<long long>());
    fail(ErrorKind::InvalidInput, std::string(what) + " must be a string");
}

} // namespace

auto to_json(const BigInt & value) -> Json
{
    if (value >= std::numeric_limits<long long>::min() && value <= std::numeric_limits<long long>::max())
        return Json(static_cast<long long>(value));
    return Json(value.str());
}

auto bigint_from_json(const Json & j) -> BigInt
{
    if (j.is_number_integer())
        return BigInt(j.get<long long>());
    if (j.is_string()) {
        try {
            return BigInt(j.get<std::string>());
        }
        catch (const std::exception &) {
        }
    }
    fail(ErrorKind::InvalidInput, "expected an integer, got " + j.dump());
}

auto to_json(const Rational & value) -> Json
{
    if (denominator(value) == 1)
        return to_json(BigInt(numerator(value)));
    return Json(numerator(value).str() + "/" + denominator(value).str());
}

auto rational_from_json(const Json & j) -> Rational
{
    if (j.is_string()) {
        auto s = j.get<std::string>();
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            auto d = bigint_from_json(Json(s.substr(slash + 1)));
            require(d != 0, "zero denominator in " + s);
            return Rational(bigint_from_json(Json(s.substr(0, slash))), d);
        }
    }
    return Rational(bigint_from_json(j));
}

auto to_json(const IntMatrix & m) -> Json
{
    auto rows = Json::array();
    for (const auto & row : m) {
        auto r = Json::array();
        for (const auto & x : row)
            r.push_back(to_json(x));
        rows.push_back(std::move(r));
    }
    return rows;
}

auto matrix_from_json(const Json & j) -> IntMatrix
{
    require(j.is_array(), "matrix must be an array of rows");
    IntMatrix m;
    for (const auto & row : j) {
        require(row.is_array(), "matrix rows must be arrays");
        m.emplace_back();
        for (const auto & x : row)
            m.back().push_back(bigint_from_json(x));
        require(m.back().size() == m.front().size(), "matrix rows differ in length");
    }
    return m;
}

auto to_json(const SmallMatrix & m) -> Json
{
    return Json(m);
}

auto to_json(const PlumbingTree & tree) -> Json
{
    Json j;
    j["vertices"] = Json::array();
    for (const auto & v : tree.vertices())
        j["vertices"].push_back({{"id", v.id}, {"framing", v.framing}});
    j["edges"] = Json::array();
    for (auto [a, b] : tree.edges())
        j["edges"].push_back({tree.id(a), tree.id(b)});
    return j;
}

auto tree_from_json(const Json & j) -> PlumbingTree
{
    PlumbingTree tree;
    const auto & vertices = field(j, "vertices");
    require(vertices.is_array(), "'vertices' must be an array");
    for (const auto & v : vertices)
        tree.add_vertex(as_string(field(v, "id"), "vertex id"), as_int(field(v, "framing"), "framing"));
    if (j.contains("edges")) {
        for (const auto & e : j.at("edges")) {
            if (e.is_array()) {
                require(e.size() == 2, "an edge needs two endpoints");
                tree.add_edge(as_string(e[0], "edge endpoint"), as_string(e[1], "edge endpoint"));
            }
            else {
                require(! e.contains("label") || e.at("label") == 0,
                    "edge labels need sketch input (use a graph command that expands sketches)");
                tree.add_edge(as_string(field(e, "a"), "edge endpoint"), as_string(field(e, "b"), "edge endpoint"));
            }
        }
    }
    tree.validate_tree();
    return tree;
}

auto sketch_from_json(const Json & j) -> EdgeSketch
{
    EdgeSketch sketch;
    for (const auto & v : field(j, "vertices"))
        sketch.vertices.push_back(
            Vertex{as_string(field(v, "id"), "vertex id"), as_int(field(v, "framing"), "framing")});
    if (j.contains("edges")) {
        for (const auto & e : j.at("edges")) {
            if (e.is_array()) {
                require(e.size() == 2 || e.size() == 3, "a sketch edge is [a, b] or [a, b, label]");
                sketch.edges.push_back(SketchEdge{as_string(e[0], "edge endpoint"), as_string(e[1], "edge endpoint"),
                    e.size() == 3 ? as_int(e[2], "edge label") : 0});
            }
            else {
                sketch.edges.push_back(SketchEdge{as_string(field(e, "a"), "edge endpoint"),
                    as_string(field(e, "b"), "edge endpoint"), e.contains("label") ? as_int(e.at("label"), "label") : 0});
            }
        }
    }
    return sketch;
}

auto to_json(const EdgeSketch & sketch) -> Json
{
    Json j;
    j["vertices"] = Json::array();
    for (const auto & v : sketch.vertices)
        j["vertices"].push_back({{"id", v.id}, {"framing", v.framing}});
    j["edges"] = Json::array();
    for (const auto & e : sketch.edges)
        j["edges"].push_back({{"a", e.a}, {"b", e.b}, {"label", e.label}});
    return j;
}

auto graph_from_json(const Json & j) -> PlumbingTree
{
    if (j.is_object() && j.contains("graph"))
        return graph_from_json(j.at("graph"));
    bool labeled = false;
    if (j.is_object() && j.contains("edges"))
        for (const auto & e : j.at("edges"))
            labeled = labeled || (e.is_array() && e.size() == 3) || (e.is_object() && e.contains("label"));
    if (labeled)
        return expand_sketch(sketch_from_json(j));
    return tree_from_json(j);
}

auto to_json(const SandwichPresentation & presentation) -> Json
{
    Json j;
    j["graph"] = to_json(presentation.base);
    j["end"] = presentation.end_vertex;
    j["curves"] = Json::array();
    for (std::size_t i = 0; i < presentation.curves.size(); ++i) {
        const auto & c = presentation.curves[i];
        Json cj{{"vertex", c.vertex}, {"size", c.size}, {"kind", to_string(c.kind)}};
        if (! c.label.empty())
            cj["label"] = c.label;
        if (c.arm_position >= 0)
            cj["arm_position"] = c.arm_position;
        if (i < presentation.minimal_multiplicity.size())
            cj["minimal_multiplicity"] = presentation.minimal_multiplicity[i];
        j["curves"].push_back(std::move(cj));
    }
    j["gram"] = to_json(presentation.gram);
    return j;
}

auto presentation_from_json(const Json & j) -> SandwichPresentation
{
    SandwichPresentation p;
    p.base = tree_from_json(field(j, "graph"));
    p.end_vertex = as_string(field(j, "end"), "end vertex");
    require(p.base.contains(p.end_vertex), "end vertex '" + p.end_vertex + "' is not in the graph");
    bool all_mm = true;
    std::vector<int> mm;
    for (const auto & c : field(j, "curves")) {
        PresentationCurve curve;
        curve.vertex = as_string(field(c, "vertex"), "curve vertex");
        require(p.base.contains(curve.vertex), "curve vertex '" + curve.vertex + "' is not in the graph");
        curve.size = as_int(field(c, "size"), "curve size");
        auto kind = c.contains("kind") ? as_string(c.at("kind"), "kind") : std::string("smooth");
        require(kind == "smooth" || kind == "cusp", "curve kind must be smooth or cusp");
        curve.kind = kind == "cusp" ? BranchKind::Cusp : BranchKind::Smooth;
        if (c.contains("label"))
            curve.label = as_string(c.at("label"), "label");
        if (c.contains("arm_position"))
            curve.arm_position = as_int(c.at("arm_position"), "arm_position");
        if (c.contains("minimal_multiplicity"))
            mm.push_back(as_int(c.at("minimal_multiplicity"), "minimal_multiplicity"));
        else
            all_mm = false;
        p.curves.push_back(std::move(curve));
    }
    if (all_mm)
        p.minimal_multiplicity = std::move(mm);
    const auto & g = field(j, "gram");
    require(g.is_array() && g.size() == p.curves.size(), "gram must be a square matrix over the curves");
    for (const auto & row : g) {
        require(row.is_array() && row.size() == p.curves.size(), "gram must be a square matrix over the curves");
        p.gram.emplace_back();
        for (const auto & x : row) {
            require(x.is_number_integer(), "gram entries must be integers");
            p.gram.back().push_back(x.get<long>());
        }
    }
    return p;
}

auto to_json(const Configuration & config) -> Json
{
    Json j;
    j["points"] = config.points;
    j["curves"] = Json::array();
    for (const auto & c : config.curves) {
        Json support = Json::object();
        for (std::size_t p = 0; p < c.row.size(); ++p)
            if (c.row[p] != 0)
                support[config.points[p]] = c.row[p];
        j["curves"].push_back({{"vertex", c.vertex}, {"support", std::move(support)}});
    }
    return j;
}

auto configuration_from_json(const Json & j) -> Configuration
{
    Configuration config;
    std::map<std::string, std::size_t> index;
    for (const auto & p : field(j, "points")) {
        auto name = as_string(p, "point");
        require(index.emplace(name, config.points.size()).second, "duplicate point '" + name + "'");
        config.points.push_back(name);
    }
    for (const auto & c : field(j, "curves")) {
        ConfigCurve curve{c.contains("vertex") ? as_string(c.at("vertex"), "curve vertex") : std::string(),
            std::vector<int>(config.points.size(), 0)};
        const auto & support = field(c, "support");
        if (support.is_array()) {
            for (const auto & p : support) {
                auto it = index.find(as_string(p, "point"));
                require(it != index.end(), "curve mentions unknown point " + p.dump());
                curve.row[it->second] += 1;
            }
        }
        else {
            require(support.is_object(), "support must be an object or a list of points");
            for (const auto & [name, m] : support.items()) {
                auto it = index.find(name);
                require(it != index.end(), "curve mentions unknown point '" + name + "'");
                auto value = as_int(m, "multiplicity");
                require(value >= 0, "negative multiplicity");
                curve.row[it->second] = value;
            }
        }
        config.curves.push_back(std::move(curve));
    }
    return config;
}

auto to_json(const ReductionStep & step) -> Json
{
    Json j;
    j["triple"] = {{"v", step.triple.v}, {"w", step.triple.w}, {"z", step.triple.z}, {"leafred", step.triple.leafred}};
    j["switched"] = step.switched;
    j["Q"] = step.q;
    j["P"] = step.p;
    j["Q_prime"] = step.q_prime;
    j["removed_curve"] = step.removed_curve;
    j["separating_edge"] = {step.edge.keep, step.edge.other};
    j["merged_framing"] = step.merged_framing;
    j["delta"] = step.delta;
    j["graph"] = to_json(step.presentation.base);
    j["intersection_form"] = to_json(intersection_matrix(step.presentation.base));
    j["presentation"] = to_json(step.presentation);
    j["config"] = to_json(step.config);
    return j;
}

auto to_json(const ReductionTrace & trace) -> Json
{
    Json j;
    j["initial"] = {{"presentation", to_json(trace.initial_presentation)}, {"config", to_json(trace.initial_config)},
        {"intersection_form", to_json(intersection_matrix(trace.initial_presentation.base))}};
    j["steps"] = Json::array();
    for (const auto & s : trace.steps)
        j["steps"].push_back(to_json(s));
    j["initial_delta"] = trace.initial_delta;
    j["final_delta"] = trace.final_delta;
    return j;
}

auto to_json(const ReducedReport & report) -> Json
{
    return {{"reduced", report.reduced}, {"structural", report.structural}, {"triples", report.triples},
        {"note", report.note}};
}

auto to_json(const FiberInvariants & invariants) -> Json
{
    Json j;
    j["mu"] = invariants.mu;
    j["rank"] = invariants.rank;
    auto torsion = Json::array();
    for (const auto & d : invariants.h1_torsion)
        torsion.push_back(to_json(d));
    j["h1_torsion"] = std::move(torsion);
    j["h1_free_rank"] = invariants.h1_free_rank;
    j["kernel_basis"] = to_json(invariants.kernel_basis);
    j["restricted_form"] = to_json(invariants.restricted_form);
    auto k = Json::array();
    for (const auto & x : invariants.canonical_pairing)
        k.push_back(to_json(x));
    j["canonical_pairing"] = std::move(k);
    return j;
}

auto to_json(const IntersectionForm & form) -> Json
{
    return {{"ids", form.ids}, {"matrix", to_json(form.matrix)}, {"negative_definite", form.negative_definite}};
}

auto to_dot(const PlumbingTree & tree, std::string_view end) -> std::string
{
    std::ostringstream out;
    out << "graph G {\n";
    for (const auto & v : tree.vertices()) {
        out << "  \"" << v.id << "\" [label=\"" << v.framing << "\"";
        if (v.id == end)
            out << ", shape=box";
        out << "];\n";
    }
    for (auto [a, b] : tree.edges())
        out << "  \"" << tree.id(a) << "\" -- \"" << tree.id(b) << "\";\n";
    out << "}\n";
    return out.str();
}

auto read_json(const std::filesystem::path & path) -> Json
{
    std::ifstream in(path);
    if (! in)
        fail(ErrorKind::InvalidInput, "cannot open '" + path.string() + "'");
    try {
        return Json::parse(in);
    }
    catch (const nlohmann::json::exception & e) {
        fail(ErrorKind::InvalidInput, "malformed JSON in '" + path.string() + "': " + e.what());
    }
}

void write_json(const std::filesystem::path & path, const Json & j)
{
    std::ofstream out(path);
    if (! out)
        fail(ErrorKind::InvalidInput, "cannot write '" + path.string() + "'");
    out << j.dump(2) << "\n";
}

} // namespace qhd
