#include <dcsp/poly.hpp>

#include <dcsp/hom.hpp>
#include <dcsp/pp.hpp>
#include <dcsp/rcsp.hpp>

#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dcsp
{

IdentitySpec siggers_spec()
{
    IdentitySpec s;
    s.arity = 4;
    s.var_count = 3;
    s.patterns.push_back({{0, 1, 2, 0}, {1, 0, 1, 2}});
    return s;
}

IdentitySpec majority_spec(bool conservative)
{
    IdentitySpec s;
    s.arity = 3;
    s.var_count = 2;
    s.idempotent = true;
    s.conservative = conservative;
    // f(x,x,y) = f(x,y,x) = f(y,x,x) = f(x,x,x), which with idempotence pins
    // every repeated-entry triple to the majority value
    s.patterns.push_back({{0, 0, 1}, {0, 0, 0}});
    s.patterns.push_back({{0, 1, 0}, {0, 0, 0}});
    s.patterns.push_back({{1, 0, 0}, {0, 0, 0}});
    return s;
}

int FunctionTable::apply(const std::vector<int> & args) const
{
    return table[encode_tuple(args, domain.size())];
}

namespace
{
    struct UF
    {
        std::vector<int> p;
        explicit UF(size_t n) : p(n)
        {
            std::iota(p.begin(), p.end(), 0);
        }
        int find(int x)
        {
            while (p[x] != x)
                x = p[x] = p[p[x]];
            return x;
        }
        void unite(int a, int b)
        {
            a = find(a);
            b = find(b);
            if (a != b)
                p[std::max(a, b)] = std::min(a, b);
        }
    };
}

Indicator build_indicator(const Digraph & h, const IdentitySpec & spec, uint64_t cap, int jobs)
{
    int hn = h.size(), n = spec.arity, m = spec.var_count;
    uint64_t tuples = tuple_count(hn, n);
    if (tuples > cap)
        throw cap_exceeded("indicator tuple count " + std::to_string(tuples) + " exceeds cap");
    int t = int(tuples);

    UF uf{size_t(t)};
    uint64_t assigns = tuple_count(hn, m);
    std::vector<int> a(m), ta(n), tb(n);
    for (uint64_t ai = 0; ai < assigns; ++ai) {
        a = decode_tuple(ai, hn, m);
        for (const auto & pat : spec.patterns) {
            for (int i = 0; i < n; ++i) {
                ta[i] = a[pat.sigma[i]];
                tb[i] = a[pat.rho[i]];
            }
            uf.unite(int(encode_tuple(ta, hn)), int(encode_tuple(tb, hn)));
        }
    }

    Indicator ind;
    ind.cls.assign(t, -1);
    std::vector<int> dense(t, -1);
    int next = 0;
    for (int i = 0; i < t; ++i) {
        int r = uf.find(i);
        if (dense[r] == -1)
            dense[r] = next++;
        ind.cls[i] = dense[r];
    }
    ind.classes = next;
    ind.class_size.assign(next, 0);
    for (int i = 0; i < t; ++i)
        ++ind.class_size[ind.cls[i]];

    // arcs: componentwise arc-tuples projected to classes
    const auto & arcs = h.arcs();
    int e = int(arcs.size());
    uint64_t arc_tuples = tuple_count(e, n);
    auto emit_range = [&](uint64_t lo, uint64_t hi, std::vector<Arc> & out) {
        std::vector<int> src(n), dst(n);
        for (uint64_t idx = lo; idx < hi; ++idx) {
            auto sel = decode_tuple(idx, e, n);
            for (int i = 0; i < n; ++i) {
                src[i] = arcs[sel[i]].first;
                dst[i] = arcs[sel[i]].second;
            }
            out.emplace_back(ind.cls[encode_tuple(src, hn)], ind.cls[encode_tuple(dst, hn)]);
        }
    };

    std::vector<Arc> all;
    if (jobs <= 1 || arc_tuples < 1024) {
        emit_range(0, arc_tuples, all);
    }
    else {
        int parts = jobs * 4;
        std::vector<std::vector<Arc>> per(parts);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
#endif
        for (int p = 0; p < parts; ++p) {
            uint64_t lo = arc_tuples * p / parts, hi = arc_tuples * (p + 1) / parts;
            emit_range(lo, hi, per[p]);
        }
        for (auto & v : per)
            all.insert(all.end(), v.begin(), v.end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    ind.digraph = Digraph(next, std::move(all));
    return ind;
}

std::optional<FunctionTable> find_polymorphism(const Digraph & h, const IdentitySpec & spec, uint64_t cap, int jobs)
{
    int hn = h.size(), n = spec.arity;
    auto ind = build_indicator(h, spec, cap, jobs);
    std::vector<Bitset> cand(ind.classes, Bitset(hn, true));

    if (spec.idempotent) {
        for (int v = 0; v < hn; ++v) {
            std::vector<int> diag(n, v);
            int c = ind.cls[encode_tuple(diag, hn)];
            Bitset s(hn);
            s.set(v);
            cand[c] &= s;
            if (cand[c].none())
                return std::nullopt;
        }
    }
    if (spec.conservative) {
        uint64_t tuples = tuple_count(hn, n);
        std::vector<Bitset> allowed(ind.classes, Bitset(hn, true));
        for (uint64_t i = 0; i < tuples; ++i) {
            auto tup = decode_tuple(i, hn, n);
            Bitset s(hn);
            for (int v : tup)
                s.set(v);
            allowed[ind.cls[i]] &= s;
        }
        for (int c = 0; c < ind.classes; ++c) {
            cand[c] &= allowed[c];
            if (cand[c].none())
                return std::nullopt;
        }
    }

    auto r = find_hom_with_candidates(ind.digraph, h, std::move(cand));
    if (! r.found())
        return std::nullopt;

    FunctionTable f;
    f.domain = h;
    f.arity = n;
    f.table.resize(tuple_count(hn, n));
    for (size_t i = 0; i < f.table.size(); ++i)
        f.table[i] = (*r.map)[ind.cls[i]];
    return f;
}

bool verify_polymorphism(const FunctionTable & f, std::string * why)
{
    int hn = f.domain.size(), n = f.arity;
    const auto & arcs = f.domain.arcs();
    int e = int(arcs.size());
    uint64_t arc_tuples = tuple_count(e, n);
    std::vector<int> src(n), dst(n);
    for (uint64_t idx = 0; idx < arc_tuples; ++idx) {
        auto sel = decode_tuple(idx, e, n);
        for (int i = 0; i < n; ++i) {
            src[i] = arcs[sel[i]].first;
            dst[i] = arcs[sel[i]].second;
        }
        int u = f.table[encode_tuple(src, hn)];
        int v = f.table[encode_tuple(dst, hn)];
        if (! f.domain.has_arc(u, v)) {
            if (why)
                *why = "arc tuple " + std::to_string(idx) + " maps to a non-arc";
            return false;
        }
    }
    return true;
}

bool verify_function_table(const FunctionTable & f, const IdentitySpec & spec, std::string * why)
{
    int hn = f.domain.size(), n = f.arity;
    if (n != spec.arity) {
        if (why)
            *why = "arity mismatch";
        return false;
    }
    if (f.table.size() != tuple_count(hn, n)) {
        if (why)
            *why = "table not total";
        return false;
    }
    for (int v : f.table)
        if (v < 0 || v >= hn) {
            if (why)
                *why = "table value out of range";
            return false;
        }

    if (! verify_polymorphism(f, why))
        return false;

    uint64_t assigns = tuple_count(hn, spec.var_count);
    std::vector<int> ta(n), tb(n);
    for (uint64_t ai = 0; ai < assigns; ++ai) {
        auto a = decode_tuple(ai, hn, spec.var_count);
        for (const auto & pat : spec.patterns) {
            for (int i = 0; i < n; ++i) {
                ta[i] = a[pat.sigma[i]];
                tb[i] = a[pat.rho[i]];
            }
            if (f.table[encode_tuple(ta, hn)] != f.table[encode_tuple(tb, hn)]) {
                if (why)
                    *why = "pattern violated at assignment " + std::to_string(ai);
                return false;
            }
        }
    }
    if (spec.idempotent) {
        for (int v = 0; v < hn; ++v) {
            std::vector<int> diag(n, v);
            if (f.table[encode_tuple(diag, hn)] != v) {
                if (why)
                    *why = "not idempotent at " + std::to_string(v);
                return false;
            }
        }
    }
    if (spec.conservative) {
        uint64_t tuples = tuple_count(hn, n);
        for (uint64_t i = 0; i < tuples; ++i) {
            auto tup = decode_tuple(i, hn, n);
            if (std::find(tup.begin(), tup.end(), f.table[i]) == tup.end()) {
                if (why)
                    *why = "not conservative at tuple " + std::to_string(i);
                return false;
            }
        }
    }
    return true;
}

bool table_preserves_marks(const FunctionTable & f, const std::vector<int> & marks)
{
    int hn = f.domain.size(), n = f.arity;
    Bitset m(hn);
    for (int v : marks)
        m.set(v);
    uint64_t tuples = tuple_count(hn, n);
    for (uint64_t i = 0; i < tuples; ++i) {
        auto tup = decode_tuple(i, hn, n);
        bool all_marked = true;
        for (int v : tup)
            if (! m.test(v)) {
                all_marked = false;
                break;
            }
        if (all_marked && ! m.test(f.table[i]))
            return false;
    }
    return true;
}

namespace
{
    // value-order hint for the GU completion: the piecewise rule the search
    // tries first on each triple of three distinct vertices (1-indexed)
    int gu_rule(int x, int y, int z)
    {
        auto has = [&](int v) { return x == v || y == v || z == v; };
        if (has(1) && (has(3) || has(7)))
            return 1;
        if (has(2) && (has(6) || has(7)))
            return 2;
        if (has(3) && (has(5) || has(7)))
            return 3;
        if (has(4) && has(6))
            return 4;
        bool is567 = has(5) && has(6) && has(7);
        if (is567)
            return 6;
        return x;
    }
}

FunctionTable conservative_majority_gu()
{
    auto gu = named_digraph("GU");
    const Digraph & g = gu.base;
    int n = g.size(); // 7

    FunctionTable f;
    f.domain = g;
    f.arity = 3;
    f.table.assign(tuple_count(n, 3), -1);

    // majority on every triple with a repeated entry
    std::vector<uint64_t> open;
    for (uint64_t i = 0; i < f.table.size(); ++i) {
        auto t = decode_tuple(i, n, 3);
        if (t[0] == t[1] || t[0] == t[2])
            f.table[i] = t[0];
        else if (t[1] == t[2])
            f.table[i] = t[1];
        else
            open.push_back(i);
    }

    // deterministic completion: ascending tuple order, preferred value first,
    // then the remaining entries of the triple in ascending order; backtrack
    // on arc violations against already-decided entries
    auto violates = [&](uint64_t changed) -> bool {
        auto tc = decode_tuple(changed, n, 3);
        const auto & arcs = g.arcs();
        int e = int(arcs.size());
        // all arc-triples whose source or destination tuple is `changed`
        for (int sel0 = 0; sel0 < e; ++sel0)
            for (int sel1 = 0; sel1 < e; ++sel1)
                for (int sel2 = 0; sel2 < e; ++sel2) {
                    const auto & a0 = arcs[sel0];
                    const auto & a1 = arcs[sel1];
                    const auto & a2 = arcs[sel2];
                    bool src_is = (a0.first == tc[0] && a1.first == tc[1] && a2.first == tc[2]);
                    bool dst_is = (a0.second == tc[0] && a1.second == tc[1] && a2.second == tc[2]);
                    if (! src_is && ! dst_is)
                        continue;
                    int su = f.table[(uint64_t(a0.first) * n + a1.first) * n + a2.first];
                    int sv = f.table[(uint64_t(a0.second) * n + a1.second) * n + a2.second];
                    if (su >= 0 && sv >= 0 && ! g.has_arc(su, sv))
                        return true;
                }
        return false;
    };

    auto values_for = [&](uint64_t idx) {
        auto t = decode_tuple(idx, n, 3);
        int pref = gu_rule(t[0] + 1, t[1] + 1, t[2] + 1) - 1;
        std::vector<int> vals{pref};
        std::vector<int> rest{t[0], t[1], t[2]};
        std::sort(rest.begin(), rest.end());
        for (int v : rest)
            if (v != pref)
                vals.push_back(v);
        return vals;
    };

    auto rec = [&](auto && self, size_t k) -> bool {
        if (k == open.size())
            return true;
        uint64_t idx = open[k];
        for (int v : values_for(idx)) {
            f.table[idx] = v;
            if (! violates(idx) && self(self, k + 1))
                return true;
        }
        f.table[idx] = -1;
        return false;
    };
    if (! rec(rec, 0))
        throw std::logic_error("GU conservative majority completion failed");
    return f;
}

FunctionTable slice(const FunctionTable & f, const Digraph & h, int k, int level)
{
    auto prod = product(h, make_family(Family::transitive_tournament, k));
    if (! (f.domain == prod))
        throw precondition_error("table domain is not the product of the given digraph with TT_k");
    if (level < 0 || level >= k)
        throw precondition_error("slice level out of range");
    int hn = h.size();
    FunctionTable out;
    out.domain = h;
    out.arity = f.arity;
    out.table.resize(tuple_count(hn, f.arity));
    std::vector<int> lifted(f.arity);
    for (uint64_t i = 0; i < out.table.size(); ++i) {
        auto tup = decode_tuple(i, hn, f.arity);
        for (int j = 0; j < f.arity; ++j)
            lifted[j] = tup[j] * k + level;
        out.table[i] = f.table[encode_tuple(lifted, hn * k)] / k;
    }
    return out;
}

HardLevelReport minimal_hard_level(const Digraph & h, int nmax, uint64_t cap, int jobs)
{
    HardLevelReport rep;
    auto spec = siggers_spec();
    for (int k = 1; k <= nmax; ++k) {
        auto prod = product(h, make_family(Family::transitive_tournament, k));
        auto f = find_polymorphism(prod, spec, cap, jobs);
        ++rep.levels_checked;
        rep.siggers_present.push_back(f.has_value());
        if (! f) {
            rep.level = k;
            // monotonicity spot check at the next level when it fits the cap
            if (k + 1 <= nmax || tuple_count(h.size() * (k + 1), spec.arity) <= cap) {
                auto prod2 = product(h, make_family(Family::transitive_tournament, k + 1));
                if (tuple_count(prod2.size(), spec.arity) <= cap) {
                    auto f2 = find_polymorphism(prod2, spec, cap, jobs);
                    rep.monotonicity_spot_checked = true;
                    if (f2.has_value())
                        throw std::logic_error("monotonicity violated: polymorphism reappeared one level up");
                }
            }
            return rep;
        }
    }
    return rep;
}

}
