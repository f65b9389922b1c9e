#include <doctest.h>

#include <dcsp/digraph.hpp>
#include <dcsp/hom.hpp>
#include <dcsp/poly.hpp>
#include <dcsp/rcsp.hpp>

using namespace dcsp;

TEST_CASE("indicator basics")
{
    auto tt2 = make_family(Family::transitive_tournament, 2);
    auto ind = build_indicator(tt2, siggers_spec());
    CHECK(ind.classes <= 16);
    CHECK(find_hom(ind.digraph, tt2).found());

    auto loop = make_loop();
    auto ind2 = build_indicator(loop, siggers_spec());
    CHECK(ind2.classes == 1);
    CHECK(find_hom(ind2.digraph, loop).found());

    auto k3 = named_digraph("K3").base;
    auto ind3 = build_indicator(k3, siggers_spec());
    CHECK(! find_hom(ind3.digraph, k3).found());

    // parallel arc construction agrees with serial
    auto s1 = build_indicator(k3, siggers_spec(), 2000000, 1);
    auto s4 = build_indicator(k3, siggers_spec(), 2000000, 4);
    CHECK(s1.digraph == s4.digraph);
    CHECK(s1.cls == s4.cls);
}

TEST_CASE("find_polymorphism catalog")
{
    auto sig = siggers_spec();

    auto c3 = make_family(Family::directed_cycle, 3);
    auto f = find_polymorphism(c3, sig);
    REQUIRE(f.has_value());
    std::string why;
    CHECK(verify_function_table(*f, sig, &why));

    CHECK(! find_polymorphism(named_digraph("C3plus").base, sig).has_value());
    CHECK(! find_polymorphism(named_digraph("K3").base, sig).has_value());

    auto gu = named_digraph("GU");
    auto maj = find_polymorphism(gu.base, majority_spec(true));
    REQUIRE(maj.has_value());
    CHECK(verify_function_table(*maj, majority_spec(true), &why));
}

TEST_CASE("GU conservative majority table")
{
    auto f = conservative_majority_gu();
    auto gu = named_digraph("GU");
    CHECK(f.domain == gu.base);
    CHECK(f.table.size() == 343);

    std::string why;
    CHECK(verify_function_table(f, majority_spec(true), &why));
    CHECK(table_preserves_marks(f, gu.marks));

    // pinned values (1-indexed in the drawing; table is 0-indexed)
    CHECK(f.apply({0, 2, 6}) == 0); // f(1,3,7) = 1
    CHECK(f.apply({4, 5, 6}) == 5); // f(5,6,7) = 6
    CHECK(f.apply({1, 1, 4}) == 1); // f(2,2,5) = 2
}

TEST_CASE("verify_function_table rejects corrupted tables")
{
    auto f = conservative_majority_gu();
    auto bad = f;
    bad.table[0] = (bad.table[0] + 1) % 7; // breaks idempotence at (0,0,0)
    std::string why;
    CHECK(! verify_function_table(bad, majority_spec(true), &why));
    CHECK(! why.empty());
}

TEST_CASE("slice")
{
    auto c3 = make_family(Family::directed_cycle, 3);
    int k = 2;
    auto prod = product(c3, make_family(Family::transitive_tournament, k));

    // the first projection is a polymorphism; every slice is the projection on H
    FunctionTable proj;
    proj.domain = prod;
    proj.arity = 4;
    proj.table.resize(tuple_count(prod.size(), 4));
    for (uint64_t i = 0; i < proj.table.size(); ++i)
        proj.table[i] = decode_tuple(i, prod.size(), 4)[0];
    for (int level = 0; level < k; ++level) {
        auto s = slice(proj, c3, k, level);
        for (uint64_t i = 0; i < s.table.size(); ++i)
            CHECK(s.table[i] == decode_tuple(i, c3.size(), 4)[0]);
    }

    // a found Siggers table for C3 x TT2 has a pair of equal slices whose
    // common value is a Siggers polymorphism of C3
    auto sig = siggers_spec();
    auto f = find_polymorphism(prod, sig);
    REQUIRE(f.has_value());
    std::vector<FunctionTable> slices;
    for (int level = 0; level < k; ++level)
        slices.push_back(slice(*f, c3, k, level));
    bool found_equal = false;
    for (int i = 0; i < k && ! found_equal; ++i)
        for (int j = i + 1; j < k && ! found_equal; ++j)
            if (slices[i].table == slices[j].table) {
                found_equal = true;
                std::string why;
                CHECK(verify_function_table(slices[i], sig, &why));
            }
    // slice count equals k by construction
    CHECK(int(slices.size()) == k);

    CHECK_THROWS_AS(slice(*f, c3, 3, 0), precondition_error);
    CHECK_THROWS_AS(slice(*f, c3, 2, 5), precondition_error);
}

TEST_CASE("minimal_hard_level")
{
    // TT3 keeps a Siggers polymorphism at every level
    auto rep = minimal_hard_level(make_family(Family::transitive_tournament, 3), 3);
    CHECK(! rep.level.has_value());
    CHECK(rep.levels_checked == 3);

    auto loop_rep = minimal_hard_level(make_loop(), 3);
    CHECK(! loop_rep.level.has_value());
}
