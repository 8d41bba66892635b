#include "fixtures.hpp"
#include "oracles.hpp"
#include "samples.hpp"

#include <qhd/pipelines.hpp>
#include <qhd/solver.hpp>

#include <doctest.h>

using namespace qhd;
using sample::small_presentations;

namespace {

auto mode(std::optional<long> mu, EmitMode emit) -> SolveMode
{
    SolveMode m;
    m.mu = mu;
    m.emit = emit;
    return m;
}

auto gram_of(const SmallMatrix & inc) -> SmallMatrix
{
    SmallMatrix g(inc.size(), std::vector<long>(inc.size(), 0));
    for (std::size_t i = 0; i < inc.size(); ++i)
        for (std::size_t j = 0; j < inc.size(); ++j)
            for (std::size_t p = 0; p < inc[i].size(); ++p)
                g[i][j] += inc[i][p] * inc[j][p];
    return g;
}

} // namespace

TEST_SUITE("solver")
{
    TEST_CASE("validation")
    {
        auto p4 = presentation_smooth(linear_tree({-4}), "v1");
        auto ok = validate(fixture::triangle(), p4);
        CHECK(ok.valid);
        CHECK(ok.mu == 0);
        CHECK(ok.free_points.empty());

        auto scott = validate(scott_incidence(p4), p4);
        CHECK(scott.valid);
        CHECK(scott.mu == 1);
        CHECK(scott.free_points.size() == 3);

        auto bad = validate(fixture::config(3, {{"v1", {1, 2}}, {"v1", {1, 2}}, {"v1", {1, 3}}}), p4);
        CHECK_FALSE(bad.valid);
        CHECK_FALSE(bad.violations.empty());

        CHECK_THROWS_AS(validate(fixture::config(3, {{"v1", {1, 2}}}), p4), Error);
    }

    TEST_CASE("cusp rows need exactly one double point")
    {
        auto p = star_presentation({StarFamily::C6, 1, {0, 5}});
        std::vector<std::pair<std::string, std::vector<int>>> rows;
        for (int i = 1; i <= 5; ++i) {
            std::vector<int> support{1, 2, 3, 4, 5, i};
            rows.emplace_back("A1", support);
        }
        CHECK(validate(fixture::config(5, rows), p).valid);
        rows[0].second = {1, 2, 3, 4, 5, 6};
        CHECK_FALSE(validate(fixture::config(6, rows), p).valid);
    }

    TEST_CASE("[4]: the triangle, six labeled solutions")
    {
        auto p4 = presentation_smooth(linear_tree({-4}), "v1");
        auto first = solve(p4, mode(0, EmitMode::First));
        REQUIRE(first.status == SolveStatus::Found);
        CHECK(fixture::curves_on(first.solutions[0], "v1")
            == std::multiset<std::set<std::string>>{
                fixture::names({1, 2}), fixture::names({1, 3}), fixture::names({2, 3})});

        auto count = solve(p4, mode(0, EmitMode::Count));
        CHECK(count.labeled_count == 6);
        CHECK(count.canonical_count == 1);
        CHECK(oracle::all_incidences(p4, 3).size() == 6);
    }

    TEST_CASE("fpp(2): a Fano plane")
    {
        auto fpp = fpp_graph(2);
        auto p = presentation_smooth(fpp, first_legal_end(fpp).value());
        auto r = solve(p, mode(0, EmitMode::First));
        REQUIRE(r.status == SolveStatus::Found);
        const auto & fano = r.solutions[0];
        CHECK(fano.points.size() == 7);
        auto g = gram_of(incidence_matrix(fano));
        for (std::size_t i = 0; i < 7; ++i)
            for (std::size_t j = 0; j < 7; ++j)
                CHECK(g[i][j] == (i == j ? 3 : 1));
        // Dual condition: two points lie on exactly one common line.
        auto inc = incidence_matrix(fano);
        for (std::size_t a = 0; a < 7; ++a)
            for (std::size_t b = a + 1; b < 7; ++b) {
                long common = 0;
                for (const auto & row : inc)
                    common += row[a] * row[b];
                CHECK(common == 1);
            }
    }

    TEST_CASE("C6 n = 1: I = J + Id")
    {
        auto p = star_presentation({StarFamily::C6, 1, {0, 5}});
        auto r = solve(p, mode(0, EmitMode::All));
        REQUIRE(r.status == SolveStatus::Found);
        for (const auto & s : r.solutions) {
            CHECK(validate(s, p).valid);
            auto inc = incidence_matrix(s);
            REQUIRE(inc.size() == 5);
            for (const auto & row : inc) {
                CHECK(std::count(row.begin(), row.end(), 2) == 1);
                CHECK(std::count(row.begin(), row.end(), 1) == 4);
            }
            for (std::size_t p2 = 0; p2 < 5; ++p2) {
                long doubles = 0;
                for (const auto & row : inc)
                    doubles += row[p2] == 2;
                CHECK(doubles == 1);
            }
        }
        CHECK(r.canonical_count == 1);
        CHECK(r.labeled_count == oracle::all_incidences(p, 5).size());
    }

    TEST_CASE("star -5 with three -2 leaves has no mu = 0 solution")
    {
        PlumbingTree star;
        star.add_vertex("c", -5);
        for (int i = 1; i <= 3; ++i) {
            star.add_vertex("leaf" + std::to_string(i), -2);
            star.add_edge("c", "leaf" + std::to_string(i));
        }
        auto p = presentation_smooth(star, "leaf1");
        auto r = solve(p, mode(0, EmitMode::First));
        CHECK(r.status == SolveStatus::NoSolution);
        CHECK(oracle::all_incidences(p, p.curves.size()).empty());
        CHECK(abs(oracle::cofactor_det(oracle::plumbing_form(star))) == 28);
    }

    TEST_CASE("incidence matrices")
    {
        CHECK(gram_of(incidence_matrix(fixture::triangle())) == SmallMatrix{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}});
        auto p52 = presentation_smooth(linear_tree({-5, -2}), "v1");
        auto inc = incidence_matrix(scott_incidence(p52));
        CHECK(inc.size() == 4);
        CHECK(inc[0].size() == 6);
        CHECK(gram_of(inc) == gram_smooth(p52));
    }

    TEST_CASE("budgets are reported as timeouts, not as no solution")
    {
        auto fpp = fpp_graph(3);
        auto p = presentation_smooth(fpp, first_legal_end(fpp).value());
        auto m = mode(0, EmitMode::Count);
        m.node_budget = 50;
        auto r = solve(p, m);
        CHECK(r.status == SolveStatus::Timeout);
        CHECK(r.nodes >= 50);
    }

    TEST_CASE("labeled multiplicity")
    {
        CHECK(labeled_multiplicity(fixture::triangle()) == 6);
        auto twin = fixture::config(3, {{"v1", {1, 2}}, {"v1", {1, 2}}});
        CHECK(labeled_multiplicity(twin) == 3);
    }

    TEST_CASE("completeness against brute force: <= 6 curves, sizes <= 4")
    {
        auto presentations = small_presentations();
        REQUIRE(presentations.size() > 20);
        std::size_t with_solutions = 0;
        for (const auto & p : presentations)
            for (long mu : {0L, 1L}) {
                auto all = oracle::all_incidences(p, p.curves.size() + static_cast<std::size_t>(mu));
                auto r = solve(p, mode(mu, EmitMode::All));
                INFO("graph " << canonical_form(p.base) << " end " << p.end_vertex << " mu " << mu);
                CHECK(r.labeled_count == all.size());
                CHECK(r.canonical_count == oracle::column_classes(all));
                CHECK(r.solutions.size() == oracle::column_classes(all));
                CHECK((r.status == SolveStatus::Found) == ! all.empty());
                for (const auto & s : r.solutions) {
                    CHECK(validate(s, p).valid);
                    CHECK(gram_of(incidence_matrix(s)) == p.gram);
                }
                auto first = solve(p, mode(mu, EmitMode::First));
                CHECK((first.status == SolveStatus::Found) == ! all.empty());
                with_solutions += ! all.empty();
            }
        CHECK(with_solutions > 0);
    }
}
