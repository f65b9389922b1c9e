#include <doctest.h>

#include <set>

#include <dcsp/digraph.hpp>
#include <dcsp/enumerate.hpp>
#include <dcsp/hom.hpp>
#include <dcsp/obstructions.hpp>

using namespace dcsp;

TEST_CASE("path_tt_duality")
{
    auto p4 = directed_path(4);
    CHECK(path_tt_duality(p4, 3) == std::pair{false, false});
    CHECK(path_tt_duality(p4, 4) == std::pair{true, true});
    auto tc4 = make_family(Family::tc, 4);
    for (int k = 1; k <= 5; ++k)
        CHECK(path_tt_duality(tc4, k) == std::pair{false, false});
}

TEST_CASE("in_forb")
{
    auto p4 = directed_path(4);
    CHECK(in_forb(make_family(Family::transitive_tournament, 3), {p4}));
    auto c3 = make_family(Family::directed_cycle, 3);
    CHECK(! in_forb(c3, {c3}));
    CHECK(! in_forb(named_digraph("K3").base, {p4})); // walk around the symmetric arcs
}

TEST_CASE("tc4 characterization")
{
    auto tc4 = make_family(Family::tc, 4);
    CHECK(tc4_characterization(tc4).maps);

    auto t4a = named_digraph("T4a").base;
    auto rep = tc4_characterization(t4a);
    CHECK(! rep.maps);
    CHECK(rep.witness_name == "T4a");

    auto rt5 = named_digraph("RT5").base;
    auto rep5 = tc4_characterization(rt5);
    CHECK(! rep5.maps);
    CHECK(! find_hom(rt5, tc4).found());

    CHECK_THROWS_AS(tc4_characterization(directed_path(3)), precondition_error);
}

TEST_CASE("tcn characterization")
{
    for (int n = 4; n <= 6; ++n) {
        auto ttn = make_family(Family::transitive_tournament, n);
        auto rep = tcn_min_obstructions(ttn, n);
        CHECK(! rep.maps);
        CHECK(rep.witness_name == "TT_n");

        CHECK(tcn_min_obstructions(make_family(Family::tc, n), n).maps);
        CHECK(tcn_min_obstructions(make_family(Family::transitive_tournament, n - 1), n).maps);
    }
    CHECK_THROWS_AS(tcn_min_obstructions(directed_path(2), 3), precondition_error);
}

TEST_CASE("obstruction reports carry verified witnesses")
{
    auto t4b = named_digraph("T4b").base;
    auto big = disjoint_union(make_family(Family::transitive_tournament, 2), t4b);
    auto rep = tcn_min_obstructions(big, 4);
    REQUIRE(! rep.maps);
    CHECK(rep.witness_name == "T4b");
    // witness is an injective induced embedding
    std::set<int> img(rep.witness_map.begin(), rep.witness_map.end());
    CHECK(img.size() == rep.witness_map.size());
    auto sub = induced_subdigraph(big, [&] {
        std::vector<int> v(rep.witness_map.begin(), rep.witness_map.end());
        std::sort(v.begin(), v.end());
        return v;
    }());
    CHECK(isomorphic(sub, t4b));
}

TEST_CASE("compute_Fn")
{
    // F_4 restricted to 4-vertex tournaments = {T4, T4a, T4b}
    auto f4 = compute_Fn(4, 5);
    std::vector<Digraph> four;
    for (const auto & t : f4)
        if (t.size() == 4)
            four.push_back(t);
    REQUIRE(four.size() == 3);
    for (const auto & name : {"T4", "T4a", "T4b"}) {
        bool hit = false;
        for (const auto & t : four)
            if (isomorphic(t, named_digraph(name).base))
                hit = true;
        CHECK(hit);
    }
    // no 3-vertex tournament ever appears
    for (const auto & t : compute_Fn(5, 6))
        CHECK(t.size() >= 4);

    // members fail embedding, excluded tournaments embed
    auto tc5 = make_family(Family::tc, 5);
    std::set<uint64_t> f5keys;
    auto f5 = compute_Fn(5, 6);
    for (const auto & t : f5) {
        CHECK(! contains_subgraph(tc5, t, SubgraphMode::subgraph).has_value());
        f5keys.insert(canonical_key(t));
    }
    for (int k = 1; k <= 6; ++k)
        for (const auto & t : collect_tournaments(k))
            if (! f5keys.count(canonical_key(t)))
                CHECK(contains_subgraph(tc5, t, SubgraphMode::subgraph).has_value());
}

TEST_CASE("Fn difference identity at n = 5")
{
    // F_{n-1} \ F_n = {TT_{n-1}, TC_n}
    int n = 5;
    auto prev = compute_Fn(n - 1, n);
    auto cur = compute_Fn(n, n + 1);
    std::set<uint64_t> cur_keys;
    for (const auto & t : cur)
        cur_keys.insert(canonical_key(t));
    std::vector<Digraph> diff;
    for (const auto & t : prev)
        if (! cur_keys.count(canonical_key(t)))
            diff.push_back(t);
    REQUIRE(diff.size() == 2);
    std::set<uint64_t> want{canonical_key(make_family(Family::transitive_tournament, n - 1)),
        canonical_key(make_family(Family::tc, n))};
    std::set<uint64_t> got{canonical_key(diff[0]), canonical_key(diff[1])};
    CHECK(got == want);
}

TEST_CASE("search_counterexample finds nothing at small sizes")
{
    auto r = search_counterexample(CheckerKind::tc4, 4, 4, std::nullopt, default_seed);
    CHECK(! r.counterexample.has_value());
    CHECK(r.exhaustive_checked > 0);

    auto r5 = search_counterexample(CheckerKind::tcn, 5, 4, std::nullopt, default_seed);
    CHECK(! r5.counterexample.has_value());
}

TEST_CASE("sampling is deterministic under a fixed seed")
{
    auto a = search_counterexample(CheckerKind::tc4, 4, 6, 50, 12345);
    auto b = search_counterexample(CheckerKind::tc4, 4, 6, 50, 12345);
    CHECK(a.sampled_checked == b.sampled_checked);
    CHECK(a.sample_attempts == b.sample_attempts);
    CHECK(! a.counterexample.has_value());
}

TEST_CASE("two arc-disjoint triangles: five-vertex witnesses")
{
    // RT5 and T5c are exactly the induced-{T4a,T4b}-free 5-vertex tournaments
    // containing two arc-disjoint directed triangles
    auto t4a = named_digraph("T4a").base;
    auto t4b = named_digraph("T4b").base;
    auto c3 = make_family(Family::directed_cycle, 3);

    auto has_two_disjoint_triangles = [&](const Digraph & t) {
        std::vector<std::vector<Arc>> triangles;
        int n = t.size();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    if (a >= b || a >= c || b == c)
                        continue;
                    // unordered triple once: a < b, a < c, b != c
                    if (b > c)
                        continue;
                    for (auto [x, y, z] : {std::tuple{a, b, c}, {a, c, b}}) {
                        if (t.has_arc(x, y) && t.has_arc(y, z) && t.has_arc(z, x))
                            triangles.push_back({{x, y}, {y, z}, {z, x}});
                    }
                }
        for (size_t i = 0; i < triangles.size(); ++i)
            for (size_t j = i + 1; j < triangles.size(); ++j) {
                bool share = false;
                for (auto & e1 : triangles[i])
                    for (auto & e2 : triangles[j])
                        if (e1 == e2)
                            share = true;
                if (! share)
                    return true;
            }
        return false;
    };

    std::vector<Digraph> witnesses;
    for (const auto & t : collect_tournaments(5)) {
        bool free_ab = ! contains_subgraph(t, t4a, SubgraphMode::induced).has_value() &&
            ! contains_subgraph(t, t4b, SubgraphMode::induced).has_value();
        if (free_ab && has_two_disjoint_triangles(t))
            witnesses.push_back(t);
    }
    REQUIRE(witnesses.size() == 2);
    std::set<uint64_t> got{canonical_key(witnesses[0]), canonical_key(witnesses[1])};
    std::set<uint64_t> want{canonical_key(named_digraph("RT5").base), canonical_key(named_digraph("T5c").base)};
    CHECK(got == want);
    (void)c3;
}
