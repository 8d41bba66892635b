#include "cli.hpp"

#include <qhd/families.hpp>
#include <qhd/homology.hpp>
#include <qhd/json_io.hpp>
#include <qhd/pipelines.hpp>
#include <qhd/reduction.hpp>
#include <qhd/solver.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace qhd::cli {

namespace {

auto split_ints(const std::string & s) -> std::vector<int>
{
    std::vector<int> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            require(used == item.size(), "");
        }
        catch (const std::exception &) {
            fail(ErrorKind::InvalidInput, "expected a comma-separated integer list, got '" + s + "'");
        }
    }
    return out;
}

auto parse_word(const std::string & s) -> std::vector<BlowupSite>
{
    std::vector<BlowupSite> word;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item == "edge_1" || item == "e1")
            word.push_back(BlowupSite::Edge1);
        else if (item == "edge_2" || item == "e2")
            word.push_back(BlowupSite::Edge2);
        else if (item == "edge_3" || item == "e3")
            word.push_back(BlowupSite::Edge3);
        else if (item == "vertex" || item == "v")
            word.push_back(BlowupSite::Vertex);
        else if (! item.empty())
            fail(ErrorKind::InvalidInput, "unknown blowup site '" + item + "' (expected edge_1, edge_2, edge_3, vertex)");
    }
    return word;
}

auto vertex_stats(const PlumbingTree & tree) -> Json
{
    auto out = Json::array();
    for (std::size_t v = 0; v < tree.size(); ++v) {
        auto s = stats(tree, tree.id(v));
        out.push_back({{"id", tree.id(v)}, {"degree", s.degree}, {"framing", s.framing}, {"node", s.is_node},
            {"leaf", s.is_leaf}, {"large_node", s.is_large_node}});
    }
    return out;
}

/// Graph file, or a presentation file (with "curves"), plus an optional end
/// (the first legal end by default).
auto load_presentation(const std::string & path, const std::string & end) -> SandwichPresentation
{
    auto j = read_json(path);
    if (j.is_object() && j.contains("curves") && j.contains("gram")) {
        auto p = presentation_from_json(j);
        require(end.empty() || end == p.end_vertex, "--end conflicts with the presentation's end vertex");
        return p;
    }
    auto tree = graph_from_json(j);
    if (! end.empty())
        return presentation_smooth(tree, end);
    auto first = first_legal_end(tree);
    require(first.has_value(), "the graph has no legal end vertex; pass --end");
    return presentation_smooth(tree, *first);
}

/// The end vertex whose smooth presentation has the configuration's per-vertex curve counts.
auto infer_end(const PlumbingTree & tree, const Configuration & config) -> std::string
{
    for (std::size_t v = 0; v < tree.size(); ++v) {
        SandwichPresentation p;
        try {
            p = presentation_smooth(tree, tree.id(v));
        }
        catch (const Error &) {
            continue;
        }
        if (p.curves.size() != config.curves.size())
            continue;
        bool same = true;
        for (std::size_t i = 0; i < p.curves.size() && same; ++i)
            same = p.curves[i].vertex == config.curves[i].vertex;
        if (same)
            return tree.id(v);
    }
    fail(ErrorKind::InvalidInput, "no end vertex matches the configuration's curve assignment (pass --end)");
}

struct Context {
    std::ostream & out;
    std::ostream & err;
    std::size_t jobs = 1;

    void emit(const Json & j, const std::string & path = {}) const
    {
        if (path.empty())
            out << j.dump(2) << "\n";
        else
            write_json(path, j);
    }
};

auto exit_for(SolveStatus status) -> int
{
    switch (status) {
    case SolveStatus::Found: return Success;
    case SolveStatus::NoSolution: return Negative;
    case SolveStatus::Timeout: return BudgetExceeded;
    }
    return UsageError;
}

} // namespace

auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int
{
    CLI::App app{"QHD smoothing toolkit: sandwich presentations, incidence solving, reduction and lattice checks"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    Context ctx{out, err};
    if (const char * env = std::getenv("QHD_JOBS")) {
        try {
            ctx.jobs = std::max(1, std::stoi(env));
        }
        catch (const std::exception &) {
            err << "ignoring QHD_JOBS='" << env << "'\n";
        }
    }
    app.fallthrough();
    app.add_option("--jobs,-j", ctx.jobs, "Worker threads for sweeps (default QHD_JOBS or 1)")->check(CLI::PositiveNumber);

    std::function<int()> action;

    // graph
    auto * graph = app.add_subcommand("graph", "Read, expand or generate a plumbing tree");
    std::string graph_file, graph_format = "json", graph_abc, graph_word, graph_fraction;
    int graph_fpp = 0, graph_fpp_l = 0;
    graph->add_option("file", graph_file, "Graph or edge-sketch JSON");
    graph->add_option("--format", graph_format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
    graph->add_option("--fraction", graph_fraction, "p,q: linear graph of p^2/(pq-1)");
    graph->add_option("--fpp", graph_fpp, "fpp(n) star");
    graph->add_option("--fpp-l", graph_fpp_l, "l for fpp(n)_l");
    graph->add_option("--abc", graph_abc, "A, B or C")->check(CLI::IsMember({"A", "B", "C"}));
    graph->add_option("--word", graph_word, "Blowup word, e.g. edge_3,edge_2,vertex");
    graph->callback([&] {
        action = [&]() -> int {
            PlumbingTree tree;
            int sources = ! graph_file.empty() + ! graph_fraction.empty() + (graph_fpp != 0) + ! graph_abc.empty();
            require(sources == 1, "give exactly one of: file, --fraction, --fpp, --abc");
            if (! graph_file.empty())
                tree = graph_from_json(read_json(graph_file));
            else if (! graph_fraction.empty()) {
                auto pq = split_ints(graph_fraction);
                require(pq.size() == 2, "--fraction needs p,q");
                tree = linear_from_fraction(pq[0], pq[1]);
            }
            else if (graph_fpp != 0)
                tree = fpp_graph(graph_fpp, graph_fpp_l);
            else
                tree = abc_generate(parse_abc_family(graph_abc), parse_word(graph_word)).tree;
            if (graph_format == "dot") {
                out << to_dot(tree);
                return Success;
            }
            Json j;
            j["graph"] = to_json(tree);
            j["delta"] = delta(tree);
            j["canonical"] = canonical_form(tree);
            j["vertices"] = vertex_stats(tree);
            ctx.emit(j);
            return Success;
        };
    });

    // present
    auto * present = app.add_subcommand("present", "Sandwich presentation and its Gram matrix");
    std::string present_file, present_end, present_star, present_cusps, present_format = "json";
    int present_n = 0;
    present->add_option("file", present_file, "Graph JSON (omit with --star)");
    present->add_option("--end", present_end, "End vertex (first legal end by default)");
    present->add_option("--star", present_star, "Star family: C6 C3 C2 B2 B4 A3 A^4 B^4 C^4");
    present->add_option("--n", present_n, "Long-arm length for --star");
    present->add_option("--cusps", present_cusps, "Cusp counts, node first, e.g. 0,0,6");
    present->add_option("--format", present_format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
    present->callback([&] {
        action = [&]() -> int {
            SandwichPresentation p;
            if (! present_star.empty()) {
                require(present_file.empty(), "--star builds its own graph; drop the file argument");
                StarFamilyInstance instance{parse_star_family(present_star), present_n, split_ints(present_cusps)};
                p = star_presentation(instance);
            }
            else {
                require(! present_file.empty(), "a graph file or --star is required");
                p = load_presentation(present_file, present_end);
            }
            if (present_format == "dot") {
                out << to_dot(tilde_graph(p).tree, p.end_vertex);
                return Success;
            }
            ctx.emit(to_json(p));
            return Success;
        };
    });

    // solve
    auto * solve_cmd = app.add_subcommand("solve", "Search for configurations realizing the Gram matrix");
    std::string solve_file, solve_end, solve_out;
    bool solve_mu0 = false, solve_all = false, solve_count = false;
    double solve_timeout = 0;
    std::uint64_t solve_budget = 0;
    solve_cmd->add_option("file", solve_file, "Graph or presentation JSON")->required();
    solve_cmd->add_option("--end", solve_end, "End vertex for graph input (first legal end by default)");
    solve_cmd->add_flag("--mu0", solve_mu0, "Only mu = 0 (QHD candidates)");
    auto * all_flag = solve_cmd->add_flag("--all", solve_all, "Emit every solution up to point relabeling");
    solve_cmd->add_flag("--count", solve_count, "Report labeled and canonical counts")->excludes(all_flag);
    solve_cmd->add_option("--timeout", solve_timeout, "Wall-clock limit in seconds")->check(CLI::NonNegativeNumber);
    solve_cmd->add_option("--node-budget", solve_budget, "Search-node cap");
    solve_cmd->add_option("--out", solve_out, "Write the result here instead of stdout");
    solve_cmd->callback([&] {
        action = [&]() -> int {
            auto p = load_presentation(solve_file, solve_end);
            SolveMode mode;
            mode.mu = solve_mu0 ? std::optional<long>(0) : std::nullopt;
            mode.emit = solve_all ? EmitMode::All : solve_count ? EmitMode::Count : EmitMode::First;
            mode.timeout_seconds = solve_timeout;
            mode.node_budget = solve_budget;
            auto r = solve(p, mode);
            Json j;
            j["status"] = to_string(r.status);
            j["end"] = p.end_vertex;
            j["mu"] = solve_mu0 ? Json(0) : Json("any");
            j["nodes"] = r.nodes;
            if (r.status == SolveStatus::NoSolution)
                j["certificate"] = {{"exhaustive", true},
                    {"statement", "no configuration realizes the Gram matrix of this presentation"}};
            if (mode.emit != EmitMode::First && r.status != SolveStatus::Timeout) {
                j["labeled_count"] = to_json(r.labeled_count);
                j["canonical_count"] = to_json(r.canonical_count);
            }
            if (mode.emit != EmitMode::Count) {
                j["solutions"] = Json::array();
                for (const auto & s : r.solutions)
                    j["solutions"].push_back(to_json(s));
            }
            ctx.emit(j, solve_out);
            return exit_for(r.status);
        };
    });

    // reduce
    auto * reduce = app.add_subcommand("reduce", "Run the reduction algorithm on a configuration");
    std::string reduce_graph, reduce_config, reduce_end, reduce_trace;
    reduce->add_option("graph", reduce_graph, "Graph JSON")->required();
    reduce->add_option("config", reduce_config, "Configuration JSON")->required();
    reduce->add_option("--end", reduce_end, "End vertex (inferred from the curve assignment otherwise)");
    reduce->add_option("--trace", reduce_trace, "Write the full trace JSON here");
    reduce->callback([&] {
        action = [&]() -> int {
            auto tree = graph_from_json(read_json(reduce_graph));
            auto config = configuration_from_json(read_json(reduce_config));
            auto end = reduce_end.empty() ? infer_end(tree, config) : reduce_end;
            auto p = presentation_smooth(tree, end);
            auto check = validate(config, p);
            if (! check.valid)
                fail(ErrorKind::InvalidInput, "configuration does not validate: " + check.violations.front());
            auto trace = reduce_fully(p, config);
            if (! reduce_trace.empty())
                write_json(reduce_trace, to_json(trace));
            Json j;
            j["steps"] = trace.steps.size();
            j["initial_delta"] = trace.initial_delta;
            j["final_delta"] = trace.final_delta;
            j["final_graph"] = to_json(trace.final_presentation().base);
            j["final_config"] = to_json(trace.final_config());
            j["reduced"] = to_json(is_reduced(trace.final_presentation(), trace.final_config()));
            ctx.emit(j);
            return Success;
        };
    });

    // fiber
    auto * fiber = app.add_subcommand("fiber", "Milnor-fiber invariants of a configuration");
    std::string fiber_config, fiber_graph;
    fiber->add_option("config", fiber_config, "Configuration JSON")->required();
    fiber->add_option("--graph", fiber_graph, "Compare with this graph's intersection form");
    fiber->callback([&] {
        action = [&]() -> int {
            auto config = configuration_from_json(read_json(fiber_config));
            auto inv = fiber_invariants(config);
            auto j = to_json(inv);
            if (! fiber_graph.empty()) {
                auto form = intersection_matrix(graph_from_json(read_json(fiber_graph)));
                if (config.mu() == 0) {
                    j["det_check"] = qhd_det_check(config, form);
                }
                else {
                    auto c = congruence(inv.restricted_form, form.matrix);
                    j["congruence"] = {{"invariants_match", c.invariants_match}, {"searched", c.searched},
                        {"transform", c.transform ? to_json(*c.transform) : Json(nullptr)}};
                }
            }
            ctx.emit(j);
            return Success;
        };
    });

    // check
    auto * check = app.add_subcommand("check", "Necessary conditions: definiteness, square det, Z_K, embedding");
    std::string check_file;
    bool check_embed = false;
    std::uint64_t check_budget = 0;
    check->add_option("file", check_file, "Graph JSON")->required();
    check->add_flag("--embed", check_embed, "Include the embedding certificate");
    check->add_option("--node-budget", check_budget, "Embedding search-node cap");
    check->callback([&] {
        action = [&]() -> int {
            auto tree = graph_from_json(read_json(check_file));
            EmbedOptions options;
            options.node_budget = check_budget;
            auto r = check_graph(tree, options);
            auto j = to_json(r);
            if (! check_embed)
                j.erase("embedding_rows");
            else if (r.embedding == EmbedStatus::Found)
                j["certificate"] = {{"rows", r.embedding_rows}};
            ctx.emit(j);
            if (r.embedding == EmbedStatus::BudgetExceeded)
                return BudgetExceeded;
            return r.passes() ? Success : Negative;
        };
    });

    // family
    auto * family = app.add_subcommand("family", "Named configurations: fpp, Cl and t families");
    std::string family_kind, family_params, family_emit, family_extension = "none", family_name;
    int family_b = 0;
    bool family_reconstruct = false;
    family->add_option("kind", family_kind, "fpp, cl or t")->check(CLI::IsMember({"fpp", "cl", "t"}));
    family->add_option("--params", family_params, "fpp: n[,l]; cl: k,n; t: a,b,c");
    family->add_option("--extension", family_extension, "cl only: none, cluster or star")
        ->check(CLI::IsMember({"none", "cluster", "star"}));
    family->add_option("--b", family_b, "Extension parameter");
    family->add_option("--name", family_name, "Named form, e.g. Cl(2,2)+star(2)");
    family->add_option("--emit", family_emit, "Write the configuration JSON here");
    family->add_flag("--reconstruct", family_reconstruct, "Include the reconstructed graph and presentation");
    family->callback([&] {
        action = [&]() -> int {
            std::string name = family_name;
            if (name.empty()) {
                require(! family_kind.empty() && ! family_params.empty(), "give kind and --params, or --name");
                auto p = split_ints(family_params);
                std::ostringstream s;
                if (family_kind == "fpp") {
                    require(p.size() == 1 || p.size() == 2, "fpp needs --params n or n,l");
                    s << "fpp(" << p[0] << ")";
                    if (p.size() == 2 && p[1] > 0)
                        s << "_" << p[1];
                }
                else if (family_kind == "cl") {
                    require(p.size() == 2, "cl needs --params k,n");
                    s << "Cl(" << p[0] << "," << p[1] << ")";
                    if (family_extension != "none")
                        s << "+" << family_extension << "(" << family_b << ")";
                }
                else {
                    require(p.size() == 3, "t needs --params a,b,c");
                    s << "t(" << p[0] << "," << p[1] << "," << p[2] << ")";
                }
                name = s.str();
            }
            auto named = named_configuration(name);
            if (! family_emit.empty())
                write_json(family_emit, to_json(named.config));
            Json j;
            j["name"] = named.name;
            j["config"] = to_json(named.config);
            j["mu"] = named.config.mu();
            if (family_reconstruct) {
                const auto & rec = named.reconstruction;
                j["graph"] = to_json(rec.tree);
                j["end"] = rec.end;
                j["presentation"] = to_json(rec.presentation);
                auto form = intersection_matrix(rec.tree);
                j["det_check"] = named.config.mu() == 0 ? Json(qhd_det_check(named.config, form)) : Json(nullptr);
            }
            ctx.emit(j);
            return Success;
        };
    });

    // sweep
    auto * sweep = app.add_subcommand("sweep", "Enumerate trees and run the necessary-condition chain");
    std::string sweep_spec, sweep_out;
    bool sweep_resume = false;
    std::size_t sweep_limit = 0;
    sweep->add_option("--spec", sweep_spec, "Sweep spec JSON")->required();
    sweep->add_option("--out", sweep_out, "JSON Lines output")->required();
    sweep->add_flag("--resume", sweep_resume, "Continue after the records already in --out");
    sweep->add_option("--limit", sweep_limit, "Stop after this many new instances");
    sweep->callback([&] {
        action = [&]() -> int {
            auto spec = sweep_spec_from_json(read_json(sweep_spec));
            SweepOptions options;
            options.jobs = ctx.jobs;
            options.limit = sweep_limit;
            auto summary = corollary_sweep_to_file(spec, sweep_out, options, sweep_resume);
            ctx.emit(to_json(summary));
            return summary.unknown > 0 ? BudgetExceeded : Success;
        };
    });

    // star-sweep
    auto * star = app.add_subcommand("star-sweep", "Solve every star-family member up to a long-arm length");
    std::string star_family, star_out;
    int star_max_n = 3;
    double star_timeout = 0;
    star->add_option("--family", star_family, "C6 C3 C2 B2 B4 A3 A^4 B^4 C^4")->required();
    star->add_option("--max-n", star_max_n, "Largest long-arm length")->check(CLI::PositiveNumber);
    star->add_option("--timeout", star_timeout, "Per-instance wall clock in seconds")->check(CLI::NonNegativeNumber);
    star->add_option("--out", star_out, "Write the table here instead of stdout");
    star->callback([&] {
        action = [&]() -> int {
            auto result = star_sweep(parse_star_family(star_family), star_max_n, star_timeout, ctx.jobs);
            Json j;
            j["family"] = star_family;
            j["max_n"] = star_max_n;
            j["rows"] = Json::array();
            for (const auto & row : result.rows)
                j["rows"].push_back(to_json(row));
            j["agrees"] = result.agrees();
            j["timeouts"] = result.timeouts();
            ctx.emit(j, star_out);
            if (result.timeouts() > 0)
                return BudgetExceeded;
            return result.agrees() ? Success : Negative;
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp &) {
        out << app.help();
        return Success;
    }
    catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return Success;
    }
    catch (const CLI::ParseError & e) {
        err << "error: " << e.what() << "\n";
        if (e.get_exit_code() == 0)
            return Success;
        err << "run with --help for usage\n";
        return UsageError;
    }

    try {
        return action();
    }
    catch (const Error & e) {
        err << "error: " << e.what() << "\n";
        switch (e.kind()) {
        case ErrorKind::Timeout: return BudgetExceeded;
        case ErrorKind::Terminal: return Negative;
        default: return UsageError;
        }
    }
    catch (const std::exception & e) {
        err << "error: " << e.what() << "\n";
        return UsageError;
    }
}

} // namespace qhd::cli
