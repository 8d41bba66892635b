#include "fixtures.hpp"

#include <qhd/families.hpp>
#include <qhd/pipelines.hpp>
#include <qhd/sandwich.hpp>
#include <qhd/solver.hpp>

#include <doctest.h>

using namespace qhd;

namespace {

auto star_instances(StarFamily family, int n_max) -> std::vector<StarFamilyInstance>
{
    std::vector<StarFamilyInstance> out;
    for (int n = 1; n <= n_max; ++n)
        for (const auto & word : star_words(family, n)) {
            auto tree = abc_generate(star_shape(family).parent, word).tree;
            auto instance = star_instance_from_tree(family, tree);
            REQUIRE(instance);
            out.push_back(*instance);
        }
    return out;
}

auto smooth_catalog() -> std::vector<SandwichPresentation>
{
    std::vector<SandwichPresentation> out;
    out.push_back(presentation_smooth(linear_tree({-4}), "v1"));
    out.push_back(presentation_smooth(linear_tree({-5, -2}), "v1"));
    out.push_back(presentation_smooth(linear_tree({-2, -5}), "v2"));
    out.push_back(presentation_smooth(fpp_graph(2), first_legal_end(fpp_graph(2)).value()));
    out.push_back(presentation_smooth(fpp_graph(3), first_legal_end(fpp_graph(3)).value()));
    for (const auto & named : catalog_configurations())
        out.push_back(named.reconstruction.presentation);
    return out;
}

} // namespace

TEST_SUITE("sandwich")
{
    TEST_CASE("smooth presentations: curve counts and sizes")
    {
        auto p4 = presentation_smooth(linear_tree({-4}), "v1");
        REQUIRE(p4.curves.size() == 3);
        for (const auto & c : p4.curves)
            CHECK(c.size == 2);

        auto p52 = presentation_smooth(linear_tree({-5, -2}), "v1");
        CHECK(p52.curve_count("v1") == 3);
        CHECK(p52.curve_count("v2") == 1);
        for (auto i : p52.curves_at("v1"))
            CHECK(p52.curves[i].size == 2);
        CHECK(p52.curves[p52.curves_at("v2")[0]].size == 3);

        auto fpp = fpp_graph(2);
        std::string node;
        for (std::size_t v = 0; v < fpp.size(); ++v)
            if (fpp.degree(v) == 7)
                node = fpp.id(v);
        auto pf = presentation_smooth(fpp, node);
        CHECK(pf.curve_count(node) == 0);
        CHECK(pf.curves.size() == 7);
        for (const auto & c : pf.curves)
            CHECK(c.size == 3);

        CHECK_THROWS_AS(presentation_smooth(linear_tree({-2, -2, -2}), "v2"), Error);
        CHECK(required_curve_count(linear_tree({-5, -2}), 1, 0) == 1);
    }

    TEST_CASE("smooth Gram matrices")
    {
        auto g4 = gram_smooth(presentation_smooth(linear_tree({-4}), "v1"));
        CHECK(g4 == SmallMatrix{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}});

        auto p52 = presentation_smooth(linear_tree({-5, -2}), "v1");
        auto g52 = gram_smooth(p52);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                CHECK(g52[i][j] == (i == j ? p52.curves[i].size : 1));

        auto gf = gram_smooth(presentation_smooth(fpp_graph(2), first_legal_end(fpp_graph(2)).value()));
        REQUIRE(gf.size() == 7);
        for (std::size_t i = 0; i < 7; ++i)
            for (std::size_t j = 0; j < 7; ++j)
                CHECK(gf[i][j] == (i == j ? 3 : 1));
    }

    TEST_CASE("Gram is symmetric with off-diagonal bounded by the sizes")
    {
        for (const auto & p : smooth_catalog()) {
            auto g = gram_smooth(p);
            for (std::size_t i = 0; i < g.size(); ++i) {
                CHECK(g[i][i] == p.curves[i].size);
                for (std::size_t j = 0; j < g.size(); ++j) {
                    CHECK(g[i][j] == g[j][i]);
                    CHECK(g[i][j] <= std::min(g[i][i], g[j][j]));
                }
            }
        }
    }

    TEST_CASE("blowdown clusters")
    {
        auto c4 = blowdown_cluster(presentation_smooth(linear_tree({-4}), "v1"));
        CHECK(c4.points.size() == 4);
        auto c52 = blowdown_cluster(presentation_smooth(linear_tree({-5, -2}), "v1"));
        CHECK(c52.points.size() == 6);

        PlumbingTree lone;
        lone.add_vertex("x", -2);
        CHECK_THROWS_AS(blowdown_cluster(lone, {}), Error);
    }

    TEST_CASE("Noether Gram equals the path Gram on the smooth catalog")
    {
        for (const auto & p : smooth_catalog()) {
            auto data = noether_gram(blowdown_cluster(p));
            CHECK(data.gram == gram_smooth(p));
            for (std::size_t i = 0; i < p.curves.size(); ++i)
                CHECK(data.minimal_multiplicity[i] <= data.sizes[i]);
        }
    }

    TEST_CASE("cusp curvettas have multiplicity sequence (2, 1, ..., 1)")
    {
        StarFamilyInstance c6{StarFamily::C6, 2, {0, 0, 6}};
        auto p = star_presentation(c6);
        auto cluster = blowdown_cluster(p);
        for (std::size_t i = 0; i < p.curves.size(); ++i) {
            if (p.curves[i].kind != BranchKind::Cusp)
                continue;
            auto seq = multiplicity_sequence(cluster, i);
            REQUIRE(! seq.empty());
            std::vector<int> tail(seq.begin() + 1, seq.end());
            CHECK(std::count(seq.begin(), seq.end(), 2) >= 1);
            CHECK(std::all_of(tail.begin(), tail.end(), [](int m) { return m <= 2; }));
            CHECK(std::accumulate(seq.begin(), seq.end(), 0) == p.curves[i].size);
        }
    }

    TEST_CASE("C6 end cusps: sizes 5 + n and pairwise 6 + n")
    {
        auto p1 = star_presentation({StarFamily::C6, 1, {0, 5}});
        REQUIRE(p1.curves.size() == 5);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                CHECK(p1.gram[i][j] == (i == j ? 6 : 7));

        auto p3 = star_presentation({StarFamily::C6, 3, {0, 0, 0, 7}});
        for (std::size_t i = 0; i < p3.curves.size(); ++i)
            for (std::size_t j = 0; j < p3.curves.size(); ++j)
                if (i != j)
                    CHECK(p3.gram[i][j] == 9);
    }

    TEST_CASE("C2 and B4 leaf members")
    {
        for (int n = 1; n <= 4; ++n) {
            StarFamilyInstance c2{StarFamily::C2, n, std::vector<int>(static_cast<std::size_t>(n + 1), 0)};
            c2.cusps.back() = n;
            auto p = star_presentation(c2);
            CHECK(p.curves.size() == static_cast<std::size_t>(4 + n));
            std::size_t s = 0;
            for (std::size_t i = 0; i < p.curves.size(); ++i) {
                if (p.curves[i].label[0] != 'S')
                    continue;
                ++s;
                CHECK(p.curves[i].size == 3);
                for (std::size_t j = 0; j < p.curves.size(); ++j)
                    if (p.curves[j].label[0] == 'C')
                        CHECK(p.gram[i][j] == 3);
            }
            CHECK(s == 4);
        }
        for (const auto & instance : star_instances(StarFamily::B4, 3)) {
            auto p = star_presentation(instance);
            std::size_t l = 0;
            for (std::size_t i = 0; i < p.curves.size(); ++i)
                if (p.curves[i].label[0] == 'L') {
                    ++l;
                    CHECK(p.curves[i].size == 2);
                    for (std::size_t j = 0; j < p.curves.size(); ++j)
                        if (p.curves[j].label[0] == 'C')
                            CHECK(p.gram[i][j] == 2);
                }
            CHECK(l == 1);
        }
    }

    TEST_CASE("cluster Gram reproduces the cusp table on every star family, n <= 3")
    {
        for (auto family : all_star_families())
            for (const auto & instance : star_instances(family, 3)) {
                auto p = star_presentation(instance);
                CHECK(p.curves.size() == static_cast<std::size_t>(4 + instance.n));
                auto noether = noether_gram(blowdown_cluster(p));
                auto table = cusp_table_gram(p);
                for (std::size_t i = 0; i < p.curves.size(); ++i) {
                    const auto & c = p.curves[i];
                    switch (c.label[0]) {
                    case 'L': CHECK(c.size == 2); break;
                    case 'S': CHECK(c.size == 3); break;
                    case 'C': CHECK(c.size == 5 + c.arm_position); break;
                    default: CHECK(c.size == 6); break;
                    }
                    CHECK(noether.sizes[i] == c.size);
                    for (std::size_t j = 0; j < p.curves.size(); ++j) {
                        CHECK(noether.gram[i][j] == p.gram[i][j]);
                        if (table[i][j] >= 0)
                            CHECK(noether.gram[i][j] == table[i][j]);
                    }
                }
            }
    }

    TEST_CASE("cusp table pairings")
    {
        auto p = star_presentation({StarFamily::C3, 3, {1, 0, 0, 3}});
        for (std::size_t i = 0; i < p.curves.size(); ++i)
            for (std::size_t j = 0; j < p.curves.size(); ++j) {
                const auto & a = p.curves[i];
                const auto & b = p.curves[j];
                if (i == j)
                    continue;
                if (a.label[0] == 'C' && b.label[0] == 'C')
                    CHECK(p.gram[i][j] == 6 + std::min(a.arm_position, b.arm_position));
                if (a.label[0] == 'L' && b.label[0] == 'C')
                    CHECK(p.gram[i][j] == 2);
                if (a.label[0] == 'L' && b.label[0] == 'L')
                    CHECK(p.gram[i][j] == 1);
            }
    }

    TEST_CASE("malformed star instances are rejected")
    {
        CHECK_THROWS_AS(star_presentation({StarFamily::C6, 2, {0, 0, 5}}), Error);
        CHECK_THROWS_AS(star_presentation({StarFamily::C6, 0, {}}), Error);
        CHECK_THROWS_AS(star_presentation({StarFamily::C4Deg4, 1, {0, 5}}), Error);
    }

    TEST_CASE("Scott incidence")
    {
        auto p4 = presentation_smooth(linear_tree({-4}), "v1");
        auto s4 = scott_incidence(p4);
        CHECK(s4.points.size() == 4);
        CHECK(s4.mu() == 1);
        auto r4 = validate(s4, p4);
        CHECK(r4.valid);
        CHECK(r4.free_points.size() == 3);

        auto p52 = presentation_smooth(linear_tree({-5, -2}), "v1");
        auto s52 = scott_incidence(p52);
        CHECK(s52.points.size() == 6);
        CHECK(s52.mu() == 2);
        CHECK(validate(s52, p52).valid);

        auto fpp = fpp_graph(2);
        auto pf = presentation_smooth(fpp, first_legal_end(fpp).value());
        auto sf = scott_incidence(pf);
        CHECK(sf.points.size() == 15);
        CHECK(sf.curves.size() == 7);
        CHECK(sf.mu() == 8);
        CHECK(validate(sf, pf).valid);
    }

    TEST_CASE("Scott configurations validate with mu = |Gamma| across the catalog")
    {
        for (const auto & p : smooth_catalog()) {
            auto s = scott_incidence(p);
            auto r = validate(s, p);
            CHECK(r.valid);
            CHECK(r.mu == static_cast<long>(p.base.size()));
        }
    }

    TEST_CASE("switching the end of [5,2]")
    {
        auto p = presentation_smooth(linear_tree({-5, -2}), "v1");
        auto apex = fixture::apex();
        REQUIRE(validate(apex, p).valid);
        auto switched = switch_end(p, apex, "v2", 3);
        CHECK(switched.presentation.end_vertex == "v2");
        CHECK(fixture::curves_on(switched.config, "v1")
            == std::multiset<std::set<std::string>>{fixture::names({2, 3, 4}), fixture::names({1, 3, 4}),
                fixture::names({1, 2, 4}), fixture::names({1, 2, 3})});
        CHECK(fixture::curves_on(switched.config, "v2").empty());
        CHECK(validate(switched.config, switched.presentation).valid);

        std::size_t back_curve = switched.presentation.curves_at("v1").back();
        for (auto i : switched.presentation.curves_at("v1"))
            if (fixture::curves_on(Configuration{switched.config.points, {switched.config.curves[i]}}, "v1")
                == std::multiset<std::set<std::string>>{fixture::names({1, 2, 3})})
                back_curve = i;
        auto back = switch_end(switched.presentation, switched.config, "v1", back_curve);
        CHECK(back.presentation.end_vertex == "v1");
        CHECK(fixture::curves_on(back.config, "v1") == fixture::curves_on(apex, "v1"));
        CHECK(fixture::curves_on(back.config, "v2") == fixture::curves_on(apex, "v2"));
    }

    TEST_CASE("switch errors")
    {
        auto p4 = presentation_smooth(linear_tree({-4}), "v1");
        CHECK_THROWS_AS(switch_end(p4, fixture::triangle(), "v2", 0), Error);
        auto p52 = presentation_smooth(linear_tree({-5, -2}), "v1");
        CHECK_THROWS_AS(switch_end(p52, fixture::apex(), "v2", 0), Error);
    }
}
