#include "cli.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <qhd/families.hpp>
#include <qhd/json_io.hpp>
#include <qhd/solver.hpp>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

using namespace qhd;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;

    [[nodiscard]] auto json() const -> Json { return Json::parse(out); }
};

auto run(std::vector<std::string> args) -> Run
{
    args.insert(args.begin(), "qhd");
    std::ostringstream out, err;
    Run r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

auto temp(const std::string & name) -> std::string
{
    return (std::filesystem::temp_directory_path() / ("qhd_cli_" + name)).string();
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("check [4]: report and exit 0")
    {
        auto r = run({"check", fixture::corpus("g_4.json")});
        CHECK(r.code == cli::Success);
        auto j = r.json();
        CHECK(j["square_determinant"] == true);
        CHECK(j["zk_test"] == true);
    }

    TEST_CASE("check [-2] fails with exit 1")
    {
        auto path = temp("g_2.json");
        write_json(path, to_json(linear_tree({-2})));
        CHECK(run({"check", path}).code == cli::Negative);
        std::filesystem::remove(path);
    }

    TEST_CASE("solve [5,2] --count matches brute force")
    {
        auto r = run({"solve", fixture::corpus("g_5_2.json"), "--end", "v1", "--mu0", "--count"});
        CHECK(r.code == cli::Success);
        auto j = r.json();
        auto p = presentation_smooth(linear_tree({-5, -2}), "v1");
        auto all = oracle::all_incidences(p, p.curves.size());
        CHECK(j["labeled_count"] == all.size());
        CHECK(j["canonical_count"] == oracle::column_classes(all));
        CHECK(j["labeled_count"] == 24);
        CHECK(j["canonical_count"] == 1);
    }

    TEST_CASE("solve on the -5 star: certificate of no solution, exit 1")
    {
        auto r = run({"solve", fixture::corpus("star_minus5.json"), "--end", "leaf1", "--mu0"});
        CHECK(r.code == cli::Negative);
        auto j = r.json();
        CHECK(j["status"] == "none");
        CHECK(j["certificate"]["exhaustive"] == true);
    }

    TEST_CASE("budget exceeded is exit 3")
    {
        auto r = run({"solve", fixture::corpus("fpp_3.json"), "--mu0", "--node-budget", "20"});
        CHECK(r.code == cli::BudgetExceeded);
        CHECK(r.json()["status"] == "timeout");
    }

    TEST_CASE("usage errors are exit 2")
    {
        CHECK(run({}).code == cli::UsageError);
        CHECK(run({"frobnicate"}).code == cli::UsageError);
        CHECK(run({"check", "/nonexistent/graph.json"}).code == cli::UsageError);
        CHECK(run({"solve", fixture::corpus("g_5_2.json"), "--end", "v9"}).code == cli::UsageError);
        CHECK(run({"solve", fixture::corpus("g_5_2.json"), "--all", "--count"}).code == cli::UsageError);
        CHECK(run({"graph", "--fraction", "4,2"}).code == cli::UsageError);
        CHECK(run({"family", "--name", "nope(1)"}).code == cli::UsageError);
        auto r = run({"check", "/nonexistent/graph.json"});
        CHECK_FALSE(r.err.empty());
        CHECK(run({"--help"}).code == cli::Success);
    }

    TEST_CASE("graph output round trips")
    {
        auto r = run({"graph", "--fraction", "5,2"});
        REQUIRE(r.code == cli::Success);
        auto j = r.json();
        CHECK(isomorphic(tree_from_json(j["graph"]), linear_from_fraction(5, 2)));
        CHECK(j["delta"] == delta(linear_from_fraction(5, 2)));

        auto fpp = run({"graph", "--fpp", "2"}).json();
        CHECK(tree_from_json(fpp["graph"]) == fpp_graph(2));

        auto abc = run({"graph", "--abc", "A", "--word", "edge_1,vertex"});
        CHECK(abc.code == cli::Success);

        auto dot = run({"graph", fixture::corpus("g_5_2.json"), "--format", "dot"});
        CHECK(dot.code == cli::Success);
        CHECK(dot.out.find("graph") != std::string::npos);
    }

    TEST_CASE("present output round trips")
    {
        auto r = run({"present", fixture::corpus("g_5_2.json"), "--end", "v1"});
        REQUIRE(r.code == cli::Success);
        auto p = presentation_from_json(r.json());
        CHECK(p.gram == presentation_smooth(linear_tree({-5, -2}), "v1").gram);

        auto star = run({"present", "--star", "C6", "--n", "1", "--cusps", "0,5"});
        REQUIRE(star.code == cli::Success);
        CHECK(presentation_from_json(star.json()).curves.size() == 5);
    }

    TEST_CASE("solve --out writes a configuration that validates")
    {
        auto path = temp("fano.json");
        auto r = run({"solve", fixture::corpus("fpp_2.json"), "--mu0", "--out", path});
        REQUIRE(r.code == cli::Success);
        auto j = read_json(path);
        REQUIRE(j["solutions"].size() == 1);
        auto config = configuration_from_json(j["solutions"][0]);
        auto end = j["end"].get<std::string>();
        CHECK(validate(config, presentation_smooth(fpp_graph(2), end)).valid);
        std::filesystem::remove(path);
    }

    TEST_CASE("reduce [5,2] with the apex configuration")
    {
        auto trace = temp("trace.json");
        auto r = run({"reduce", fixture::corpus("g_5_2.json"), fixture::corpus("apex_5_2.json"), "--trace", trace});
        REQUIRE(r.code == cli::Success);
        auto j = read_json(trace);
        CHECK(j["steps"].size() == 1);
        CHECK(j["initial_delta"] == 2);
        CHECK(j["final_delta"] == 2);
        std::filesystem::remove(trace);

        CHECK(run({"reduce", fixture::corpus("g_4.json"), fixture::corpus("triangle_4.json")}).code == cli::Success);
    }

    TEST_CASE("fiber invariants of the triangle")
    {
        auto r = run({"fiber", fixture::corpus("triangle_4.json"), "--graph", fixture::corpus("g_4.json")});
        REQUIRE(r.code == cli::Success);
        auto j = r.json();
        CHECK(j["h1_torsion"] == Json::parse("[2]"));
        CHECK(j["det_check"] == true);
    }

    TEST_CASE("family output round trips")
    {
        auto path = temp("cl.json");
        auto r = run({"family", "--name", "Cl(2,2)", "--reconstruct", "--emit", path});
        REQUIRE(r.code == cli::Success);
        auto j = r.json();
        CHECK(j["mu"] == 0);
        CHECK(isomorphic(tree_from_json(j["graph"]), linear_tree({-2, -5})));
        auto config = configuration_from_json(read_json(path));
        CHECK(pairing_matrix(config) == pairing_matrix(cl_config(2, 2)));
        std::filesystem::remove(path);

        CHECK(run({"family", "fpp", "--params", "3"}).code == cli::Success);
        CHECK(run({"family", "t", "--params", "2,2,2"}).code == cli::Success);
    }

    TEST_CASE("sweep and resume give the same file")
    {
        auto full = temp("full.jsonl");
        auto part = temp("part.jsonl");
        std::filesystem::remove(full);
        std::filesystem::remove(part);
        auto spec = fixture::corpus("small_sweep.json");
        auto a = run({"sweep", "--spec", spec, "--out", full});
        REQUIRE(a.code == cli::Success);
        CHECK(a.json()["survivors"] == 1);
        CHECK(run({"sweep", "--spec", spec, "--out", part, "--limit", "7"}).code == cli::Success);
        auto b = run({"sweep", "--spec", spec, "--out", part, "--resume", "--jobs", "2"});
        CHECK(b.code == cli::Success);
        CHECK(a.out == b.out);
        std::ifstream fa(full), fb(part);
        std::string sa((std::istreambuf_iterator<char>(fa)), {}), sb((std::istreambuf_iterator<char>(fb)), {});
        CHECK((sa == sb));
        std::filesystem::remove(full);
        std::filesystem::remove(part);
    }

    TEST_CASE("star sweep")
    {
        auto r = run({"star-sweep", "--family", "C6", "--max-n", "2"});
        REQUIRE(r.code == cli::Success);
        auto j = r.json();
        CHECK(j["agrees"] == true);
        CHECK(run({"star-sweep", "--family", "D9"}).code == cli::UsageError);
    }

    TEST_CASE("output is deterministic")
    {
        std::vector<std::string> args{"solve", fixture::corpus("fpp_2.json"), "--mu0", "--count"};
        auto a = run(args);
        auto b = run(args);
        CHECK(a.out == b.out);
        args.insert(args.begin(), {"--jobs", "3"});
        CHECK(run(args).out == a.out);
    }
}
