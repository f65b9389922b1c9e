#include <dcsp/rcsp.hpp>

#include <algorithm>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dcsp
{

Digraph product(const Digraph & a, const Digraph & b, int jobs)
{
    int n = a.size() * b.size();
    std::vector<Arc> arcs;
    arcs.reserve(size_t(a.arc_count()) * b.arc_count());
    for (auto [au, av] : a.arcs())
        for (auto [bu, bv] : b.arcs())
            arcs.emplace_back(au * b.size() + bu, av * b.size() + bv);
    (void)jobs;
    return Digraph(n, std::move(arcs));
}

Digraph exponential(const Digraph & a, const Digraph & b, uint64_t size_cap, int jobs)
{
    uint64_t n = tuple_count(a.size(), b.size());
    if (n > size_cap)
        throw cap_exceeded("exponential size " + std::to_string(n) + " exceeds cap");
    int nn = int(n);
    std::vector<std::vector<int>> fun(nn);
    for (int i = 0; i < nn; ++i)
        fun[i] = decode_tuple(i, a.size(), b.size());

    auto arc_between = [&](int i, int j) {
        for (auto [b1, b2] : b.arcs())
            if (! a.has_arc(fun[i][b1], fun[j][b2]))
                return false;
        return true;
    };

    std::vector<Arc> arcs;
    if (jobs <= 1) {
        for (int i = 0; i < nn; ++i)
            for (int j = 0; j < nn; ++j)
                if (arc_between(i, j))
                    arcs.emplace_back(i, j);
    }
    else {
        std::vector<std::vector<Arc>> per(nn);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
#endif
        for (int i = 0; i < nn; ++i)
            for (int j = 0; j < nn; ++j)
                if (arc_between(i, j))
                    per[i].emplace_back(i, j);
        for (auto & v : per)
            arcs.insert(arcs.end(), v.begin(), v.end());
    }
    return Digraph(nn, std::move(arcs));
}

PPDefinition exponential_pp_definition(const Digraph & b)
{
    if (b.size() == 0)
        throw precondition_error("exponential pp definition needs a nonempty restriction");
    int d = b.size();
    PPDefinition def;
    def.dimension = d;
    def.num_vars = 2 * d;
    for (int i = 0; i < 2 * d; ++i)
        def.free_vars.push_back(i);
    for (int i = 0; i < d; ++i)
        def.var_names.push_back("x" + std::to_string(i + 1));
    for (int i = 0; i < d; ++i)
        def.var_names.push_back("y" + std::to_string(i + 1));
    for (auto [bi, bj] : b.arcs())
        def.atoms.push_back({bi, d + bj});
    std::sort(def.atoms.begin(), def.atoms.end(),
        [](const PPAtom & a, const PPAtom & c) { return std::tie(a.a, a.b) < std::tie(c.a, c.b); });
    return def;
}

RCSPOutcome rcsp_solve(const RCSPTemplate & t, const Digraph & instance, RCSPRoute route, uint64_t exp_cap)
{
    if (t.restriction.size() == 0)
        throw precondition_error("RCSP restriction must be nonempty");
    auto promise = find_hom(instance, t.restriction);
    if (! promise.found())
        return {RCSPStatus::promise_violation, std::nullopt};

    if (route == RCSPRoute::direct) {
        auto r = find_hom(instance, t.domain);
        if (! r.found())
            return {RCSPStatus::no, std::nullopt};
        return {RCSPStatus::yes, r.map};
    }

    auto exp = exponential(t.domain, t.restriction, exp_cap);
    auto r = find_hom(instance, exp);
    if (! r.found())
        return {RCSPStatus::no, std::nullopt};
    // convert through the adjunction: g(c) is a function B -> A, evaluate it
    // at the promise image of c
    std::vector<int> hom(instance.size());
    for (int c = 0; c < instance.size(); ++c) {
        auto fn = decode_tuple(uint64_t((*r.map)[c]), t.domain.size(), t.restriction.size());
        hom[c] = fn[(*promise.map)[c]];
    }
    if (! verify_hom(instance, t.domain, hom))
        return {RCSPStatus::no, std::nullopt}; // should not happen
    return {RCSPStatus::yes, std::move(hom)};
}

}
