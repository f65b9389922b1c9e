#include <doctest.h>

#include <set>

#include <dcsp/digraph.hpp>
#include <dcsp/enumerate.hpp>
#include <dcsp/hom.hpp>

using namespace dcsp;

namespace
{
    // naive |H|^|D| oracle
    bool brute_hom(const Digraph & d, const Digraph & h)
    {
        if (d.size() == 0)
            return true;
        if (h.size() == 0)
            return false;
        std::vector<int> f(d.size(), 0);
        while (true) {
            if (verify_hom(d, h, f))
                return true;
            int i = 0;
            while (i < d.size() && ++f[i] == h.size()) {
                f[i] = 0;
                ++i;
            }
            if (i == d.size())
                return false;
        }
    }
}

TEST_CASE("find_hom basics")
{
    auto c3 = make_family(Family::directed_cycle, 3);
    auto tc4 = make_family(Family::tc, 4);
    auto tt4 = make_family(Family::transitive_tournament, 4);

    auto r = find_hom(c3, tc4);
    REQUIRE(r.found());
    CHECK(verify_hom(c3, tc4, *r.map));

    CHECK(find_hom(tt4, tc4).status == HomStatus::none);

    auto self = find_hom(tc4, tc4);
    REQUIRE(self.found());
    CHECK(verify_hom(tc4, tc4, *self.map));
}

TEST_CASE("verify_hom")
{
    auto k3 = named_digraph("K3").base;
    std::vector<int> id{0, 1, 2};
    CHECK(verify_hom(k3, k3, id));

    auto c3 = make_family(Family::directed_cycle, 3);
    std::vector<int> constant{0, 0, 0};
    CHECK(! verify_hom(c3, k3, constant));

    // the clause-gadget labels drawn in the hardness figure, translated to the
    // catalog's C3plus coordinates
    Digraph gadget(9, {{3, 0}, {4, 1}, {5, 2}, {3, 6}, {4, 7}, {5, 8}, {6, 7}, {7, 8}, {8, 6}});
    std::vector<int> labels{0, 0, 2, 2, 2, 1, 0, 1, 2};
    CHECK(verify_hom(gadget, named_digraph("C3plus").base, labels));
}

TEST_CASE("budget exhaustion is distinct from none")
{
    auto k3 = named_digraph("K3").base;
    auto c5 = make_family(Family::directed_cycle, 5);
    SearchBudget tiny;
    tiny.max_nodes = 1;
    tiny.consistency = Consistency::none;
    auto r = find_hom(c5, k3, tiny);
    CHECK(r.status == HomStatus::budget_exhausted);
    CHECK(find_hom(c5, k3).found()); // unlimited succeeds
}

TEST_CASE("consistency levels agree")
{
    EnumFilters f;
    f.loopless = true;
    auto ds = collect_digraphs(3, f, true);
    auto hs = collect_digraphs(3, f, true);
    for (size_t i = 0; i < ds.size(); i += 3)
        for (size_t j = 0; j < hs.size(); j += 3) {
            SearchBudget none_b, arc_b, sac_b;
            none_b.consistency = Consistency::none;
            arc_b.consistency = Consistency::arc;
            sac_b.consistency = Consistency::arc_plus_singleton;
            bool a = find_hom(ds[i], hs[j], none_b).found();
            bool b = find_hom(ds[i], hs[j], arc_b).found();
            bool c = find_hom(ds[i], hs[j], sac_b).found();
            CHECK(a == b);
            CHECK(b == c);
        }
}

TEST_CASE("completeness against the naive oracle")
{
    EnumFilters f;
    f.loopless = true;
    // full sweep at n <= 3, strided sweep at 4
    std::vector<Digraph> small;
    for (int n = 1; n <= 3; ++n)
        for (const auto & d : collect_digraphs(n, f, true))
            small.push_back(d);
    for (const auto & d : small)
        for (const auto & h : small) {
            bool want = brute_hom(d, h);
            auto got = find_hom(d, h);
            CHECK(got.status == (want ? HomStatus::found : HomStatus::none));
            if (got.found())
                CHECK(verify_hom(d, h, *got.map));
        }

    auto four = collect_digraphs(4, f, true);
    for (size_t i = 0; i < four.size(); i += 9)
        for (size_t j = 0; j < four.size(); j += 11) {
            bool want = brute_hom(four[i], four[j]);
            CHECK(find_hom(four[i], four[j]).found() == want);
        }

    // with loops
    EnumFilters any;
    auto loopy = collect_digraphs(3, any, true);
    for (size_t i = 0; i < loopy.size(); i += 5)
        for (size_t j = 0; j < loopy.size(); j += 7)
            CHECK(find_hom(loopy[i], loopy[j]).found() == brute_hom(loopy[i], loopy[j]));
}

TEST_CASE("iso-invariance of find_hom")
{
    Rng rng(default_seed);
    EnumFilters f;
    f.loopless = true;
    auto ds = collect_digraphs(4, f, true);
    for (int t = 0; t < 40; ++t) {
        const auto & d = ds[rng.below(ds.size())];
        const auto & h = ds[rng.below(ds.size())];
        // random relabelings of both sides
        std::vector<int> pd(d.size()), ph(h.size());
        for (int i = 0; i < d.size(); ++i)
            pd[i] = i;
        for (int i = 0; i < h.size(); ++i)
            ph[i] = i;
        for (int i = d.size() - 1; i > 0; --i)
            std::swap(pd[i], pd[rng.below(i + 1)]);
        for (int i = h.size() - 1; i > 0; --i)
            std::swap(ph[i], ph[rng.below(i + 1)]);
        std::vector<Arc> da, ha;
        for (auto [u, v] : d.arcs())
            da.emplace_back(pd[u], pd[v]);
        for (auto [u, v] : h.arcs())
            ha.emplace_back(ph[u], ph[v]);
        CHECK(find_hom(Digraph(d.size(), da), Digraph(h.size(), ha)).found() == find_hom(d, h).found());
    }
}

TEST_CASE("marked homs")
{
    auto gu = named_digraph("GU");
    auto self = find_hom(gu, gu);
    REQUIRE(self.found());
    CHECK(verify_hom(gu, gu, *self.map));

    // marked instance against plain target is a precondition violation
    MarkedDigraph plain(named_digraph("K3").base, {});
    MarkedDigraph marked(make_family(Family::directed_cycle, 3), {0});
    CHECK_THROWS_AS(find_hom(marked, plain), precondition_error);

    // marks restrict: single marked vertex into GU must land on a marked vertex
    MarkedDigraph dot(Digraph(1, {}), {0});
    auto r = find_hom(dot, gu);
    REQUIRE(r.found());
    CHECK(gu.marked((*r.map)[0]));
}

TEST_CASE("hom_equivalent")
{
    auto tt3 = make_family(Family::transitive_tournament, 3);
    // TT3 plus a duplicate of vertex 1 (same in/out arcs)
    Digraph dup(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {3, 2}});
    CHECK(hom_equivalent(tt3, dup));

    CHECK(! hom_equivalent(make_family(Family::directed_cycle, 3), make_family(Family::directed_cycle, 5)));
    CHECK(hom_equivalent(tt3, tt3));
}

TEST_CASE("core")
{
    // TT2 with an isolated vertex retracts to TT2
    Digraph d(3, {{0, 1}});
    auto c = core(d);
    CHECK(isomorphic(c.core, make_family(Family::transitive_tournament, 2)));
    CHECK(hom_equivalent(c.core, d));
    CHECK(verify_hom(d, c.core, c.retraction));

    // C3plus is a core: exhaustive endomorphism check
    auto c3p = named_digraph("C3plus").base;
    auto cc = core(c3p);
    CHECK(cc.core == c3p);
    {
        int endos = 0, autos = 0;
        std::vector<int> f(3, 0);
        for (f[0] = 0; f[0] < 3; ++f[0])
            for (f[1] = 0; f[1] < 3; ++f[1])
                for (f[2] = 0; f[2] < 3; ++f[2])
                    if (verify_hom(c3p, c3p, f)) {
                        ++endos;
                        std::set<int> img(f.begin(), f.end());
                        if (int(img.size()) == 3)
                            ++autos;
                    }
        CHECK(endos == autos);
    }

    // symmetric K2 is a core
    Digraph k2(2, {{0, 1}, {1, 0}});
    CHECK(core(k2).core == k2);

    CHECK_THROWS_AS(core(make_family(Family::complete, 11)), cap_exceeded);
}

TEST_CASE("core properties at n <= 5")
{
    EnumFilters f;
    f.loopless = true;
    Rng rng(default_seed);
    auto ds = collect_digraphs(4, f, true);
    for (size_t i = 0; i < ds.size(); i += 5) {
        auto c = core(ds[i]);
        CHECK(hom_equivalent(ds[i], c.core));
        CHECK(verify_hom(ds[i], c.core, c.retraction));
        // every endomorphism of the core is bijective (exhaustive search)
        int m = c.core.size();
        std::vector<int> g(m, 0);
        bool all_bij = true;
        while (true) {
            if (verify_hom(c.core, c.core, g)) {
                std::set<int> img(g.begin(), g.end());
                if (int(img.size()) != m)
                    all_bij = false;
            }
            int k = 0;
            while (k < m && ++g[k] == m) {
                g[k] = 0;
                ++k;
            }
            if (k == m)
                break;
        }
        CHECK(all_bij);
    }
}

TEST_CASE("classify_smooth")
{
    auto c3 = make_family(Family::directed_cycle, 3);
    auto c5 = make_family(Family::directed_cycle, 5);
    CHECK(classify_smooth(disjoint_union(c3, c5)) == SmoothClass::poly_time);
    CHECK(classify_smooth(make_family(Family::tc, 4)) == SmoothClass::np_complete);
    CHECK(classify_smooth(make_family(Family::transitive_tournament, 3)) == SmoothClass::not_smooth);
}
