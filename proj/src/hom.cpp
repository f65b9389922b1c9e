#include <dcsp/hom.hpp>

#include <algorithm>
#include <deque>

namespace dcsp
{

namespace
{
    constexpr int max_target = 8192;

    struct TargetRows
    {
        int n;
        std::vector<Bitset> out, in;
        Bitset loops;

        explicit TargetRows(const Digraph & h) : n(h.size()), loops(h.size())
        {
            if (n > max_target)
                throw cap_exceeded("hom target too large");
            out.assign(n, Bitset(n));
            in.assign(n, Bitset(n));
            for (auto [a, b] : h.arcs()) {
                out[a].set(b);
                in[b].set(a);
                if (a == b)
                    loops.set(a);
            }
        }
    };

    struct Searcher
    {
        const Digraph & d;
        const TargetRows & t;
        SearchBudget budget;
        std::vector<Bitset> cand;
        std::vector<std::pair<int, int>> constraints; // arcs u != v
        std::vector<std::vector<int>> incident;       // var -> constraint indices
        uint64_t nodes = 0;
        bool budget_hit = false;

        Searcher(const Digraph & dd, const TargetRows & tt, std::vector<Bitset> init, const SearchBudget & b)
            : d(dd), t(tt), budget(b), cand(std::move(init))
        {
            incident.assign(d.size(), {});
            for (auto [u, v] : d.arcs()) {
                if (u == v) {
                    cand[u] &= t.loops;
                    continue;
                }
                int id = int(constraints.size());
                constraints.emplace_back(u, v);
                incident[u].push_back(id);
                incident[v].push_back(id);
            }
        }

        // remove values of y without support under the constraint; true if changed
        bool revise(int cid, int y)
        {
            auto [u, v] = constraints[cid];
            bool changed = false;
            if (y == u) {
                for (int a = cand[u].first(); a >= 0; a = cand[u].next(a))
                    if (! t.out[a].intersects(cand[v])) {
                        cand[u].reset(a);
                        changed = true;
                    }
            }
            else {
                for (int b = cand[v].first(); b >= 0; b = cand[v].next(b))
                    if (! t.in[b].intersects(cand[u])) {
                        cand[v].reset(b);
                        changed = true;
                    }
            }
            return changed;
        }

        bool propagate(int start_var)
        {
            std::deque<int> queue{start_var};
            std::vector<bool> queued(d.size(), false);
            queued[start_var] = true;
            while (! queue.empty()) {
                int x = queue.front();
                queue.pop_front();
                queued[x] = false;
                for (int cid : incident[x]) {
                    auto [u, v] = constraints[cid];
                    int y = (x == u) ? v : u;
                    if (revise(cid, y)) {
                        if (cand[y].none())
                            return false;
                        if (! queued[y]) {
                            queued[y] = true;
                            queue.push_back(y);
                        }
                    }
                }
            }
            return true;
        }

        bool initial_consistency()
        {
            for (int v = 0; v < d.size(); ++v)
                if (cand[v].none())
                    return false;
            if (budget.consistency == Consistency::none)
                return true;
            for (int v = 0; v < d.size(); ++v)
                if (! propagate(v))
                    return false;
            if (budget.consistency == Consistency::arc_plus_singleton) {
                for (int v = 0; v < d.size(); ++v) {
                    bool changed = false;
                    for (int a = cand[v].first(); a >= 0; a = cand[v].next(a)) {
                        auto saved = cand;
                        Bitset single(t.n);
                        single.set(a);
                        cand[v] = single;
                        bool ok = propagate(v);
                        cand = std::move(saved);
                        if (! ok) {
                            cand[v].reset(a);
                            changed = true;
                        }
                    }
                    if (changed) {
                        if (cand[v].none())
                            return false;
                        if (! propagate(v))
                            return false;
                    }
                }
            }
            return true;
        }

        int pick_var() const
        {
            int best = -1, best_count = 0;
            for (int v = 0; v < d.size(); ++v) {
                int c = cand[v].count();
                if (c > 1 && (best == -1 || c < best_count)) {
                    best = v;
                    best_count = c;
                }
            }
            return best;
        }

        bool assigned_consistent(int v) const
        {
            // plain backtracking path: arcs against singleton-decided neighbours
            int a = cand[v].first();
            for (int cid : incident[v]) {
                auto [x, y] = constraints[cid];
                int o = (x == v) ? y : x;
                if (cand[o].count() != 1)
                    continue;
                int b = cand[o].first();
                if (x == v && ! t.out[a].test(b))
                    return false;
                if (y == v && ! t.in[a].test(b))
                    return false;
            }
            return true;
        }

        bool solve()
        {
            int v = pick_var();
            if (v == -1) {
                if (budget.consistency != Consistency::none)
                    return true; // all singleton + arc consistent = solution
                // verify fully for the unpropagated path
                for (auto [u, w] : constraints)
                    if (! t.out[cand[u].first()].test(cand[w].first()))
                        return false;
                return true;
            }
            Bitset values = cand[v];
            for (int a = values.first(); a >= 0; a = values.next(a)) {
                ++nodes;
                if (budget.max_nodes && nodes > budget.max_nodes) {
                    budget_hit = true;
                    return false;
                }
                auto saved = cand;
                Bitset single(t.n);
                single.set(a);
                cand[v] = single;
                bool ok = budget.consistency == Consistency::none ? assigned_consistent(v) : propagate(v);
                if (ok && solve())
                    return true;
                cand = std::move(saved);
                if (budget_hit)
                    return false;
            }
            return false;
        }

        HomResult run()
        {
            if (d.size() == 0)
                return {HomStatus::found, std::vector<int>{}};
            if (t.n == 0)
                return {HomStatus::none, std::nullopt};
            if (! initial_consistency())
                return {HomStatus::none, std::nullopt};
            if (! solve())
                return {budget_hit ? HomStatus::budget_exhausted : HomStatus::none, std::nullopt};
            std::vector<int> map(d.size());
            for (int v = 0; v < d.size(); ++v)
                map[v] = cand[v].first();
            return {HomStatus::found, std::move(map)};
        }
    };
}

HomResult find_hom_with_candidates(
    const Digraph & d, const Digraph & h, std::vector<Bitset> candidates, const SearchBudget & budget)
{
    TargetRows rows(h);
    Searcher s(d, rows, std::move(candidates), budget);
    return s.run();
}

HomResult find_hom(const Digraph & d, const Digraph & h, const SearchBudget & budget)
{
    std::vector<Bitset> cand(d.size(), Bitset(h.size(), true));
    return find_hom_with_candidates(d, h, std::move(cand), budget);
}

HomResult find_hom(const MarkedDigraph & d, const MarkedDigraph & h, const SearchBudget & budget)
{
    if (! d.marks.empty() && h.marks.empty())
        throw precondition_error("marked instance against plain target");
    std::vector<Bitset> cand(d.base.size(), Bitset(h.base.size(), true));
    if (! d.marks.empty()) {
        Bitset mark_bits(h.base.size());
        for (int v : h.marks)
            mark_bits.set(v);
        for (int v : d.marks)
            cand[v] &= mark_bits;
    }
    return find_hom_with_candidates(d.base, h.base, std::move(cand), budget);
}

bool verify_hom(const Digraph & d, const Digraph & h, const std::vector<int> & map)
{
    if (int(map.size()) != d.size())
        return false;
    for (int v : map)
        if (v < 0 || v >= h.size())
            return false;
    for (auto [u, v] : d.arcs())
        if (! h.has_arc(map[u], map[v]))
            return false;
    return true;
}

bool verify_hom(const MarkedDigraph & d, const MarkedDigraph & h, const std::vector<int> & map)
{
    if (! verify_hom(d.base, h.base, map))
        return false;
    for (int v : d.marks)
        if (! h.marked(map[v]))
            return false;
    return true;
}

bool hom_equivalent(const Digraph & a, const Digraph & b)
{
    return find_hom(a, b).found() && find_hom(b, a).found();
}

namespace
{
    // lexicographically first endomorphism avoiding value w, forward checking only
    std::optional<std::vector<int>> lex_endo_avoiding(const Digraph & h, int w)
    {
        int n = h.size();
        std::vector<int> map(n, -1);
        auto consistent = [&](int v, int a) {
            if (h.has_arc(v, v) && ! h.has_arc(a, a))
                return false;
            for (int u = 0; u < v; ++u) {
                if (h.has_arc(u, v) && ! h.has_arc(map[u], a))
                    return false;
                if (h.has_arc(v, u) && ! h.has_arc(a, map[u]))
                    return false;
            }
            return true;
        };
        auto rec = [&](auto && self, int v) -> bool {
            if (v == n)
                return true;
            for (int a = 0; a < n; ++a) {
                if (a == w)
                    continue;
                if (! consistent(v, a))
                    continue;
                map[v] = a;
                if (self(self, v + 1))
                    return true;
            }
            map[v] = -1;
            return false;
        };
        if (rec(rec, 0))
            return map;
        return std::nullopt;
    }
}

CoreResult core(const Digraph & h, int cap)
{
    if (h.size() > cap)
        throw cap_exceeded("core computation capped at n <= " + std::to_string(cap));
    Digraph cur = h;
    std::vector<int> verts(h.size());
    for (int v = 0; v < h.size(); ++v)
        verts[v] = v;
    std::vector<int> retraction = verts;

    while (true) {
        std::optional<std::vector<int>> best;
        for (int w = 0; w < cur.size(); ++w) {
            auto endo = lex_endo_avoiding(cur, w);
            if (endo && (! best || *endo < *best))
                best = endo;
        }
        if (! best)
            break;
        std::vector<int> image = *best;
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        std::vector<int> pos(cur.size(), -1);
        for (size_t i = 0; i < image.size(); ++i)
            pos[image[i]] = int(i);
        for (auto & r : retraction)
            r = pos[(*best)[r]];
        std::vector<int> new_verts;
        for (int v : image)
            new_verts.push_back(verts[v]);
        verts = std::move(new_verts);
        cur = induced_subdigraph(cur, image);
    }
    return {std::move(cur), std::move(verts), std::move(retraction)};
}

SmoothClass classify_smooth(const Digraph & h, int core_cap)
{
    for (int v = 0; v < h.size(); ++v)
        if (h.out(v).empty() || h.in(v).empty())
            return SmoothClass::not_smooth;
    auto c = core(h, core_cap);
    for (int v = 0; v < c.core.size(); ++v)
        if (c.core.out(v).size() != 1 || c.core.in(v).size() != 1)
            return SmoothClass::np_complete;
    return SmoothClass::poly_time;
}

}
