#include <qhd/pipelines.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <thread>

namespace qhd {

namespace {

/// Runs f(0..count-1) on up to `jobs` threads; results are written by index.
template <typename F>
void parallel_for(std::size_t count, std::size_t jobs, F && f)
{
    jobs = std::max<std::size_t>(1, std::min(jobs, count));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i)
            f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    for (std::size_t t = 0; t < jobs; ++t)
        workers.emplace_back([&] {
            for (auto i = next++; i < count; i = next++) {
                try {
                    f(i);
                }
                catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (! error)
                        error = std::current_exception();
                }
            }
        });
    for (auto & w : workers)
        w.join();
    if (error)
        std::rethrow_exception(error);
}

auto ints_from_json(const Json & j, const char * what) -> std::vector<int>
{
    require(j.is_array(), std::string(what) + " must be an array of integers");
    std::vector<int> out;
    for (const auto & x : j) {
        require(x.is_number_integer(), std::string(what) + " must be an array of integers");
        out.push_back(x.get<int>());
    }
    return out;
}

} // namespace

auto GraphReport::passes() const -> bool
{
    return negative_definite && square_determinant && zk_test && embedding == EmbedStatus::Found;
}

auto check_graph(const PlumbingTree & tree, const EmbedOptions & embed) -> GraphReport
{
    GraphReport r;
    auto form = intersection_matrix(tree);
    r.negative_definite = form.negative_definite;
    auto det = determinant(form);
    r.determinant = det.value;
    r.square_determinant = det.is_square;
    if (det.value != 0) {
        auto ac = anticanonical(form);
        r.zk_square = ac.zk_square;
        r.zk_test = ac.zk_test;
    }
    if (r.negative_definite) {
        auto e = diagonal_embed(form, embed);
        r.embedding = e.status;
        r.embedding_rows = std::move(e.rows);
    }
    r.delta = delta(tree);
    return r;
}

auto to_json(const GraphReport & report) -> Json
{
    Json j;
    j["negative_definite"] = report.negative_definite;
    j["determinant"] = to_json(report.determinant);
    j["square_determinant"] = report.square_determinant;
    j["zk_square"] = report.zk_square ? to_json(*report.zk_square) : Json(nullptr);
    j["zk_test"] = report.zk_test;
    j["embedding"] = report.embedding == EmbedStatus::Found ? "found"
        : report.embedding == EmbedStatus::None          ? "none"
                                                         : "budget_exceeded";
    if (report.embedding == EmbedStatus::Found)
        j["embedding_rows"] = report.embedding_rows;
    j["delta"] = report.delta;
    j["passes"] = report.passes();
    return j;
}

auto first_legal_end(const PlumbingTree & tree) -> std::optional<std::string>
{
    for (std::size_t v = 0; v < tree.size(); ++v) {
        try {
            presentation_smooth(tree, tree.id(v));
            return tree.id(v);
        }
        catch (const Error &) {
        }
    }
    return std::nullopt;
}

auto to_string(Filter filter) -> std::string
{
    switch (filter) {
    case Filter::NegativeDefinite: return "negdef";
    case Filter::SquareDeterminant: return "square_det";
    case Filter::ZkTest: return "zk";
    case Filter::Embedding: return "embed";
    case Filter::Solver: return "solver";
    }
    return "?";
}

auto parse_filter(std::string_view s) -> Filter
{
    for (auto f : all_filters())
        if (to_string(f) == s)
            return f;
    fail(ErrorKind::InvalidInput,
        "unknown filter '" + std::string(s) + "' (expected negdef, square_det, zk, embed or solver)");
}

auto all_filters() -> std::vector<Filter>
{
    return {Filter::NegativeDefinite, Filter::SquareDeterminant, Filter::ZkTest, Filter::Embedding, Filter::Solver};
}

auto to_string(Outcome outcome) -> std::string
{
    switch (outcome) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Unknown: return "unknown";
    case Outcome::Skipped: return "skipped";
    }
    return "?";
}

auto sweep_spec_from_json(const Json & j) -> SweepSpec
{
    require(j.is_object(), "sweep spec must be a JSON object");
    SweepSpec spec;
    auto & c = spec.constraints;
    if (j.contains("min_vertices"))
        c.min_vertices = j.at("min_vertices").get<std::size_t>();
    require(j.contains("max_vertices"), "sweep spec needs max_vertices");
    c.max_vertices = j.at("max_vertices").get<std::size_t>();
    if (j.contains("min_nodes"))
        c.min_nodes = j.at("min_nodes").get<std::size_t>();
    if (j.contains("max_nodes"))
        c.max_nodes = j.at("max_nodes").get<std::size_t>();
    if (j.contains("delta") && ! j.at("delta").is_null())
        c.delta = j.at("delta").get<long>();
    if (j.contains("framings")) {
        const auto & f = j.at("framings");
        if (f.contains("leaf"))
            c.framings.leaf = ints_from_json(f.at("leaf"), "framings.leaf");
        if (f.contains("degree_two"))
            c.framings.degree_two = ints_from_json(f.at("degree_two"), "framings.degree_two");
        if (f.contains("isolated"))
            c.framings.isolated = ints_from_json(f.at("isolated"), "framings.isolated");
        if (f.contains("node"))
            c.framings.node = ints_from_json(f.at("node"), "framings.node");
        if (f.contains("node_offset"))
            c.framings.node_offset = f.at("node_offset").is_null() ? std::nullopt
                                                                   : std::optional<int>(f.at("node_offset").get<int>());
    }
    require(c.min_vertices <= c.max_vertices, "min_vertices exceeds max_vertices");
    if (j.contains("filters")) {
        std::vector<Filter> chosen;
        for (const auto & f : j.at("filters"))
            chosen.push_back(parse_filter(f.get<std::string>()));
        spec.filters.clear();
        for (auto f : all_filters())
            if (std::find(chosen.begin(), chosen.end(), f) != chosen.end())
                spec.filters.push_back(f);
    }
    if (j.contains("solver_timeout"))
        spec.solver_timeout = j.at("solver_timeout").get<double>();
    if (j.contains("solver_node_budget"))
        spec.solver_node_budget = j.at("solver_node_budget").get<std::uint64_t>();
    if (j.contains("embed_node_budget"))
        spec.embed_node_budget = j.at("embed_node_budget").get<std::uint64_t>();
    return spec;
}

auto to_json(const SweepSpec & spec) -> Json
{
    const auto & c = spec.constraints;
    Json j;
    j["min_vertices"] = c.min_vertices;
    j["max_vertices"] = c.max_vertices;
    j["min_nodes"] = c.min_nodes;
    j["max_nodes"] = c.max_nodes;
    j["delta"] = c.delta ? Json(*c.delta) : Json(nullptr);
    j["framings"] = {{"leaf", c.framings.leaf}, {"degree_two", c.framings.degree_two},
        {"isolated", c.framings.isolated}, {"node", c.framings.node},
        {"node_offset", c.framings.node_offset ? Json(*c.framings.node_offset) : Json(nullptr)}};
    j["filters"] = Json::array();
    for (auto f : spec.filters)
        j["filters"].push_back(to_string(f));
    j["solver_timeout"] = spec.solver_timeout;
    j["solver_node_budget"] = spec.solver_node_budget;
    j["embed_node_budget"] = spec.embed_node_budget;
    return j;
}

auto corollary_spec(std::size_t max_vertices, std::size_t nodes, long delta) -> SweepSpec
{
    SweepSpec spec;
    auto & c = spec.constraints;
    c.min_vertices = 1;
    c.max_vertices = max_vertices;
    c.min_nodes = nodes;
    c.max_nodes = nodes;
    c.delta = delta;
    c.framings.leaf = {-2};
    c.framings.degree_two = {-2, -3};
    c.framings.isolated = {};
    c.framings.node.clear();
    c.framings.node_offset = 2;
    return spec;
}

auto SweepRecord::outcome(Filter filter) const -> Outcome
{
    for (auto [f, o] : outcomes)
        if (f == filter)
            return o;
    return Outcome::Skipped;
}

auto SweepRecord::survivor() const -> bool
{
    return std::all_of(outcomes.begin(), outcomes.end(), [](auto p) { return p.second == Outcome::Pass; });
}

auto SweepRecord::unknown() const -> bool
{
    return std::any_of(outcomes.begin(), outcomes.end(), [](auto p) { return p.second == Outcome::Unknown; });
}

auto to_json(const SweepRecord & record) -> Json
{
    Json j;
    j["index"] = record.index;
    j["graph"] = to_json(record.tree);
    j["canonical"] = canonical_form(record.tree);
    j["delta"] = record.delta;
    Json filters = Json::object();
    for (auto [f, o] : record.outcomes)
        filters[to_string(f)] = to_string(o);
    j["filters"] = std::move(filters);
    j["survivor"] = record.survivor();
    Json cert = Json::object();
    cert["determinant"] = to_json(record.report.determinant);
    if (record.report.zk_square)
        cert["zk_square"] = to_json(*record.report.zk_square);
    if (record.report.embedding == EmbedStatus::Found)
        cert["embedding_rows"] = record.report.embedding_rows;
    if (record.end)
        cert["end"] = *record.end;
    if (record.solver_status) {
        cert["solver"] = to_string(*record.solver_status);
        cert["solver_nodes"] = record.solver_nodes;
    }
    if (record.solution)
        cert["solution"] = to_json(*record.solution);
    j["certificates"] = std::move(cert);
    return j;
}

void SweepSummary::add(const SweepRecord & record)
{
    auto j = to_json(record);
    add(j);
}

void SweepSummary::add(const Json & record)
{
    ++instances;
    bool all_pass = true, any_unknown = false;
    const auto & filters = record.at("filters");
    for (auto f : all_filters()) {
        auto name = to_string(f);
        if (! filters.contains(name))
            continue;
        auto it = std::find_if(per_filter.begin(), per_filter.end(), [&](auto & t) { return std::get<0>(t) == f; });
        if (it == per_filter.end()) {
            per_filter.emplace_back(f, 0, 0, 0);
            std::sort(per_filter.begin(), per_filter.end());
            it = std::find_if(per_filter.begin(), per_filter.end(), [&](auto & t) { return std::get<0>(t) == f; });
        }
        auto outcome = filters.at(name).get<std::string>();
        all_pass = all_pass && outcome == "pass";
        any_unknown = any_unknown || outcome == "unknown";
        if (outcome == "pass")
            ++std::get<1>(*it);
        else if (outcome == "fail")
            ++std::get<2>(*it);
        else if (outcome == "unknown")
            ++std::get<3>(*it);
    }
    survivors += all_pass;
    unknown += any_unknown;
}

auto to_json(const SweepSummary & summary) -> Json
{
    Json j;
    j["instances"] = summary.instances;
    j["survivors"] = summary.survivors;
    j["unknown"] = summary.unknown;
    Json filters = Json::object();
    for (const auto & [f, pass, failed, unknown] : summary.per_filter)
        filters[to_string(f)] = {{"pass", pass}, {"fail", failed}, {"unknown", unknown}};
    j["filters"] = std::move(filters);
    return j;
}

auto evaluate(const PlumbingTree & tree, const SweepSpec & spec, std::size_t index) -> SweepRecord
{
    SweepRecord r;
    r.index = index;
    r.tree = tree;
    r.delta = delta(tree);
    r.report.delta = r.delta;
    auto form = intersection_matrix(tree);
    r.report.negative_definite = form.negative_definite;
    auto det = determinant(form);
    r.report.determinant = det.value;
    r.report.square_determinant = det.is_square;

    bool failed = false;
    for (auto f : spec.filters) {
        if (failed) {
            r.outcomes.emplace_back(f, Outcome::Skipped);
            continue;
        }
        auto o = Outcome::Fail;
        switch (f) {
        case Filter::NegativeDefinite:
            o = form.negative_definite ? Outcome::Pass : Outcome::Fail;
            break;
        case Filter::SquareDeterminant:
            o = det.is_square ? Outcome::Pass : Outcome::Fail;
            break;
        case Filter::ZkTest:
            if (det.value != 0) {
                auto ac = anticanonical(form);
                r.report.zk_square = ac.zk_square;
                r.report.zk_test = ac.zk_test;
                o = ac.zk_test ? Outcome::Pass : Outcome::Fail;
            }
            break;
        case Filter::Embedding:
            if (form.negative_definite) {
                EmbedOptions options;
                options.node_budget = spec.embed_node_budget;
                auto e = diagonal_embed(form, options);
                r.report.embedding = e.status;
                r.report.embedding_rows = std::move(e.rows);
                o = e.status == EmbedStatus::Found ? Outcome::Pass
                    : e.status == EmbedStatus::None ? Outcome::Fail
                                                    : Outcome::Unknown;
            }
            break;
        case Filter::Solver: {
            r.end = first_legal_end(tree);
            if (! r.end) {
                o = Outcome::Unknown;
                break;
            }
            SolveMode mode;
            mode.mu = 0;
            mode.emit = EmitMode::First;
            mode.timeout_seconds = spec.solver_timeout;
            mode.node_budget = spec.solver_node_budget;
            auto result = solve(presentation_smooth(tree, *r.end), mode);
            r.solver_status = result.status;
            r.solver_nodes = result.nodes;
            if (! result.solutions.empty())
                r.solution = result.solutions.front();
            o = result.status == SolveStatus::Found ? Outcome::Pass
                : result.status == SolveStatus::NoSolution ? Outcome::Fail
                                                           : Outcome::Unknown;
            break;
        }
        }
        r.outcomes.emplace_back(f, o);
        failed = o == Outcome::Fail;
    }
    return r;
}

auto corollary_sweep(const SweepSpec & spec, const SweepOptions & options,
    const std::function<void(const SweepRecord &)> & sink) -> SweepSummary
{
    SweepSummary summary;
    auto batch_size = std::max<std::size_t>(1, options.jobs) * 16;
    std::vector<PlumbingTree> batch;
    auto index = options.skip;
    auto flush = [&] {
        std::vector<SweepRecord> records(batch.size());
        parallel_for(batch.size(), options.jobs, [&](std::size_t i) { records[i] = evaluate(batch[i], spec, index + i); });
        for (const auto & r : records) {
            summary.add(r);
            sink(r);
        }
        index += batch.size();
        batch.clear();
    };
    std::size_t taken = 0;
    enumerate_trees(
        spec.constraints,
        [&](const PlumbingTree & tree) {
            batch.push_back(tree);
            ++taken;
            if (batch.size() == batch_size)
                flush();
            return options.limit == 0 || taken < options.limit;
        },
        options.skip);
    flush();
    return summary;
}

auto corollary_sweep_to_file(const SweepSpec & spec, const std::filesystem::path & out, SweepOptions options,
    bool resume) -> SweepSummary
{
    SweepSummary previous;
    std::size_t kept = 0;
    if (resume && std::filesystem::exists(out)) {
        std::ifstream in(out);
        std::string line;
        std::vector<std::string> lines;
        while (std::getline(in, line)) {
            Json j;
            try {
                j = Json::parse(line);
            }
            catch (const nlohmann::json::exception &) {
                break;
            }
            if (! j.contains("index") || j.at("index").get<std::size_t>() != kept)
                fail(ErrorKind::InvalidInput, "cannot resume: '" + out.string() + "' is not a sweep of this spec");
            previous.add(j);
            lines.push_back(line);
            ++kept;
        }
        in.close();
        std::ofstream rewrite(out, std::ios::trunc);
        for (const auto & l : lines)
            rewrite << l << "\n";
        options.skip = kept;
    }
    std::ofstream file(out, resume ? std::ios::app : std::ios::trunc);
    if (! file)
        fail(ErrorKind::InvalidInput, "cannot write '" + out.string() + "'");
    auto summary = corollary_sweep(spec, options, [&](const SweepRecord & r) {
        file << to_json(r).dump() << "\n";
        file.flush();
    });
    if (kept > 0) {
        previous.instances += summary.instances;
        previous.survivors += summary.survivors;
        previous.unknown += summary.unknown;
        for (const auto & t : summary.per_filter) {
            auto it = std::find_if(previous.per_filter.begin(), previous.per_filter.end(),
                [&](auto & x) { return std::get<0>(x) == std::get<0>(t); });
            if (it == previous.per_filter.end())
                previous.per_filter.push_back(t);
            else {
                std::get<1>(*it) += std::get<1>(t);
                std::get<2>(*it) += std::get<2>(t);
                std::get<3>(*it) += std::get<3>(t);
            }
        }
        std::sort(previous.per_filter.begin(), previous.per_filter.end());
        return previous;
    }
    return summary;
}

// ---- star sweeps ---------------------------------------------------------

auto star_words(StarFamily family, int n) -> std::vector<std::vector<BlowupSite>>
{
    require(n >= 1, "the long arm needs n >= 1");
    auto shape = star_shape(family);
    std::vector<BlowupSite> prefix;
    int free_letters = 0;
    if (shape.degree == 3) {
        if (n == 1)
            return {{}};
        auto arm = 3 - shape.e1_arm - shape.e2_arm;
        prefix.push_back(static_cast<BlowupSite>(static_cast<int>(BlowupSite::Edge1) + arm));
        free_letters = n - 2;
    }
    else {
        if (n == 1)
            return {};
        prefix = {BlowupSite::Vertex, BlowupSite::Edge1};
        free_letters = n - 2;
    }
    std::vector<std::vector<BlowupSite>> words;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free_letters); ++bits) {
        auto word = prefix;
        for (int k = 0; k < free_letters; ++k)
            word.push_back((bits >> k) & 1 ? BlowupSite::Edge2 : BlowupSite::Edge1);
        words.push_back(std::move(word));
    }
    return words;
}

auto to_string(const std::vector<BlowupSite> & word) -> std::string
{
    std::string s;
    for (auto site : word) {
        if (! s.empty())
            s += ",";
        switch (site) {
        case BlowupSite::Edge1: s += "edge_1"; break;
        case BlowupSite::Edge2: s += "edge_2"; break;
        case BlowupSite::Edge3: s += "edge_3"; break;
        case BlowupSite::Vertex: s += "vertex"; break;
        }
    }
    return s;
}

auto is_leaf_word(StarFamily family, const std::vector<BlowupSite> & word) -> bool
{
    std::size_t prefix = star_shape(family).degree == 3 ? 1 : 2;
    for (auto k = prefix; k < word.size(); ++k)
        if (word[k] != BlowupSite::Edge2)
            return false;
    return true;
}

auto admits_by_classification(StarFamily family, const std::vector<BlowupSite> & word,
    const StarFamilyInstance & instance) -> bool
{
    if (is_leaf_word(family, word))
        return true;
    auto n = instance.n;
    auto ell = instance.ell();
    std::vector<int> off(instance.cusps.begin(), instance.cusps.end() - 1);
    auto total = std::accumulate(off.begin(), off.end(), 0);
    auto at = [&](int i) { return i >= 0 && i < n ? off[static_cast<std::size_t>(i)] : 0; };
    switch (family) {
    case StarFamily::C3: return ell == n - 3 && total == 1;
    case StarFamily::C2:
        return ell == n - 4 && total == 2 && (at(ell) == 2 || (at(ell) == 1 && at(ell + 3) == 1));
    case StarFamily::B2: return ell + 1 < n && total == 2 && at(ell) == 1 && at(ell + 1) == 1;
    default: return false;
    }
}

auto StarSweepRow::agrees() const -> bool
{
    if (status == SolveStatus::Timeout)
        return false;
    return (status == SolveStatus::Found) == expected;
}

auto to_json(const StarSweepRow & row) -> Json
{
    Json j;
    j["family"] = to_string(row.family);
    j["n"] = row.instance.n;
    j["ell"] = row.instance.ell();
    j["cusps"] = row.instance.cusps;
    j["word"] = to_string(row.word);
    j["verdict"] = to_string(row.status);
    j["expected"] = row.expected ? "found" : "none";
    j["agrees"] = row.agrees();
    j["nodes"] = row.nodes;
    if (row.solution)
        j["solution"] = to_json(*row.solution);
    return j;
}

auto StarSweepResult::agrees() const -> bool
{
    return std::all_of(rows.begin(), rows.end(), [](const auto & r) { return r.agrees(); });
}

auto StarSweepResult::timeouts() const -> std::size_t
{
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const auto & r) { return r.status == SolveStatus::Timeout; }));
}

auto star_sweep(StarFamily family, int n_max, double timeout_seconds, std::size_t jobs) -> StarSweepResult
{
    StarSweepResult result;
    auto shape = star_shape(family);
    for (int n = 1; n <= n_max; ++n)
        for (auto & word : star_words(family, n)) {
            auto tree = abc_generate(shape.parent, word).tree;
            auto instance = star_instance_from_tree(family, tree);
            if (! instance || instance->n != n)
                fail(ErrorKind::Inconsistent, to_string(family) + " word '" + to_string(word)
                        + "' does not produce a member with long arm " + std::to_string(n));
            StarSweepRow row;
            row.family = family;
            row.word = word;
            row.instance = *instance;
            row.expected = admits_by_classification(family, word, *instance);
            result.rows.push_back(std::move(row));
        }
    parallel_for(result.rows.size(), jobs, [&](std::size_t i) {
        auto & row = result.rows[i];
        SolveMode mode;
        mode.mu = 0;
        mode.timeout_seconds = timeout_seconds;
        auto r = solve(star_presentation(row.instance), mode);
        row.status = r.status;
        row.nodes = r.nodes;
        row.seconds = r.seconds;
        if (! r.solutions.empty())
            row.solution = r.solutions.front();
    });
    return result;
}

} // namespace qhd
