#include <dcsp/obstructions.hpp>

#include <dcsp/enumerate.hpp>
#include <dcsp/hom.hpp>

#include <algorithm>

namespace dcsp
{

std::pair<bool, bool> path_tt_duality(const Digraph & d, int k)
{
    bool maps = find_hom(d, make_family(Family::transitive_tournament, k)).found();
    auto walk = longest_directed_walk(d);
    bool bounded = walk.has_value() && *walk <= k;
    return {maps, bounded};
}

bool in_forb(const Digraph & d, const std::vector<Digraph> & family)
{
    for (const auto & f : family)
        if (find_hom(f, d).found())
            return false;
    return true;
}

namespace
{
    void require_induced_p3_free(const Digraph & d)
    {
        if (contains_subgraph(d, directed_path(3), SubgraphMode::induced).has_value())
            throw precondition_error("input contains an induced directed path on three vertices");
    }

    bool oriented_loopless(const Digraph & d, ObstructionReport & rep)
    {
        for (auto [u, v] : d.arcs()) {
            if (u == v) {
                rep.maps = false;
                rep.witness_name = "loop";
                rep.witness_map = {u};
                return false;
            }
            if (u < v && d.has_arc(v, u)) {
                rep.maps = false;
                rep.witness_name = "symmetric-pair";
                rep.witness_map = {u, v};
                return false;
            }
        }
        return true;
    }

    // a set of k mutually adjacent vertices in an oriented graph = k-tournament
    std::optional<std::vector<int>> find_tournament(const Digraph & d, int k)
    {
        std::vector<int> pick;
        auto rec = [&](auto && self, int from) -> bool {
            if (int(pick.size()) == k)
                return true;
            for (int v = from; v < d.size(); ++v) {
                bool ok = true;
                for (int u : pick)
                    if (! d.has_arc(u, v) && ! d.has_arc(v, u)) {
                        ok = false;
                        break;
                    }
                if (! ok)
                    continue;
                pick.push_back(v);
                if (self(self, v + 1))
                    return true;
                pick.pop_back();
            }
            return false;
        };
        if (rec(rec, 0))
            return pick;
        return std::nullopt;
    }

    bool check_named_obstruction(
        const Digraph & d, const std::string & name, const Digraph & obstruction, ObstructionReport & rep)
    {
        if (auto w = contains_subgraph(d, obstruction, SubgraphMode::induced)) {
            rep.maps = false;
            rep.witness_name = name;
            rep.witness_map = *w;
            return true;
        }
        return false;
    }
}

ObstructionReport tc4_characterization(const Digraph & d)
{
    require_induced_p3_free(d);
    ObstructionReport rep;
    rep.theorem = "tc4";
    if (! oriented_loopless(d, rep))
        return rep;
    for (const auto & name : {"T4", "T4a", "T4b"})
        if (check_named_obstruction(d, name, named_digraph(name).base, rep))
            return rep;
    if (auto t5 = find_tournament(d, 5)) {
        rep.maps = false;
        rep.witness_name = "tournament-5";
        rep.witness_map = *t5;
        return rep;
    }
    rep.maps = true;
    return rep;
}

ObstructionReport tcn_min_obstructions(const Digraph & d, int n)
{
    if (n < 4)
        throw precondition_error("tcn characterization needs n >= 4");
    require_induced_p3_free(d);
    ObstructionReport rep;
    rep.theorem = "tcn";
    if (! oriented_loopless(d, rep))
        return rep;
    // fixed witness order: T4a, T4b, RT5, T5c, TT_n, TC_{n+1}
    for (const auto & name : {"T4a", "T4b", "RT5", "T5c"})
        if (check_named_obstruction(d, name, named_digraph(name).base, rep))
            return rep;
    if (check_named_obstruction(d, "TT_n", make_family(Family::transitive_tournament, n), rep))
        return rep;
    if (check_named_obstruction(d, "TC_{n+1}", make_family(Family::tc, n + 1), rep))
        return rep;
    rep.maps = true;
    return rep;
}

std::vector<Digraph> compute_Fn(int n, int max_size, int jobs)
{
    if (max_size > 8)
        throw cap_exceeded("tournament enumeration capped at 8 vertices");
    if (max_size > n + 1)
        throw precondition_error("max_size must be at most n+1");
    auto tcn = make_family(Family::tc, n);
    std::vector<Digraph> out;
    for (int k = 1; k <= max_size; ++k)
        for (const auto & t : collect_tournaments(k, jobs))
            if (! contains_subgraph(tcn, t, SubgraphMode::subgraph).has_value())
                out.push_back(t);
    return out;
}

namespace
{
    bool checker_agrees(CheckerKind kind, int n, const Digraph & d)
    {
        ObstructionReport rep = (kind == CheckerKind::tc4) ? tc4_characterization(d) : tcn_min_obstructions(d, n);
        int target_n = (kind == CheckerKind::tc4) ? 4 : n;
        bool maps = find_hom(d, make_family(Family::tc, target_n)).found();
        return rep.maps == maps;
    }
}

CounterexampleSearch search_counterexample(
    CheckerKind checker, int n, int nmax, std::optional<uint64_t> sample, uint64_t seed, int jobs)
{
    CounterexampleSearch result;
    EnumFilters f;
    f.loopless = true;
    f.oriented = true;
    f.induced_p3_free = true;
    f.weakly_connected = true;

    int exhaustive_max = std::min(nmax, 5);
    for (int k = 1; k <= exhaustive_max && ! result.counterexample; ++k) {
        for (const auto & d : collect_digraphs(k, f, true, jobs)) {
            ++result.exhaustive_checked;
            if (! checker_agrees(checker, n, d)) {
                result.counterexample = d;
                break;
            }
        }
    }
    if (result.counterexample)
        return result;

    // seeded sampling for sizes past the exhaustive range: uniform labeled arc
    // choices (none / forward / backward per pair), then filter
    if (nmax > exhaustive_max && sample && *sample > 0) {
        Rng rng = Rng(seed).split("counterexample-search");
        uint64_t accepted = 0;
        uint64_t max_attempts = *sample * 1000;
        auto p3 = directed_path(3);
        while (accepted < *sample && result.sample_attempts < max_attempts) {
            ++result.sample_attempts;
            int k = exhaustive_max + 1 + int(rng.below(uint64_t(nmax - exhaustive_max)));
            std::vector<Arc> arcs;
            for (int u = 0; u < k; ++u)
                for (int v = u + 1; v < k; ++v) {
                    switch (rng.below(3)) {
                    case 0: break;
                    case 1: arcs.emplace_back(u, v); break;
                    default: arcs.emplace_back(v, u); break;
                    }
                }
            Digraph d(k, std::move(arcs));
            if (contains_subgraph(d, p3, SubgraphMode::induced).has_value())
                continue;
            if (weak_components(d).size() != 1)
                continue;
            ++accepted;
            ++result.sampled_checked;
            if (! checker_agrees(checker, n, d)) {
                result.counterexample = d;
                break;
            }
        }
    }
    return result;
}

}
