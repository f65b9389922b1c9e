#include <dcsp/digraph.hpp>

#include <algorithm>
#include <array>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace dcsp
{

Digraph::Digraph(int n, std::vector<Arc> arcs) : n_(n)
{
    if (n < 0)
        throw std::invalid_argument("negative vertex count");
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    for (auto [u, v] : arcs)
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("arc endpoint out of range");
    arcs_ = std::move(arcs);
    out_.assign(n_, {});
    in_.assign(n_, {});
    for (auto [u, v] : arcs_) {
        out_[u].push_back(v);
        in_[v].push_back(u);
    }
    for (auto & vs : in_)
        std::sort(vs.begin(), vs.end());
}

bool Digraph::has_arc(int u, int v) const
{
    const auto & o = out_[u];
    return std::binary_search(o.begin(), o.end(), v);
}

bool Digraph::has_loop() const
{
    for (auto [u, v] : arcs_)
        if (u == v)
            return true;
    return false;
}

MarkedDigraph::MarkedDigraph(Digraph d, std::vector<int> m) : base(std::move(d)), marks(std::move(m))
{
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
    for (int v : marks)
        if (v < 0 || v >= base.size())
            throw std::invalid_argument("mark out of range");
}

bool MarkedDigraph::marked(int v) const
{
    return std::binary_search(marks.begin(), marks.end(), v);
}

OrientationWord parse_word(const std::string & s)
{
    OrientationWord w;
    for (char c : s) {
        if (c == '>' || c == 'f')
            w.push_back(Letter::forward);
        else if (c == '<' || c == 'b')
            w.push_back(Letter::backward);
        else
            throw parse_error("orientation word: expected one of > < f b, got '" + std::string(1, c) + "'");
    }
    return w;
}

Digraph make_path(const OrientationWord & w)
{
    std::vector<Arc> arcs;
    for (size_t i = 0; i < w.size(); ++i) {
        if (w[i] == Letter::forward)
            arcs.emplace_back(int(i), int(i + 1));
        else
            arcs.emplace_back(int(i + 1), int(i));
    }
    return Digraph(int(w.size()) + 1, std::move(arcs));
}

Digraph directed_path(int k)
{
    return make_path(OrientationWord(k - 1, Letter::forward));
}

Digraph make_family(Family kind, int k)
{
    if (k < 1)
        throw std::invalid_argument("family size must be positive");
    std::vector<Arc> arcs;
    switch (kind) {
    case Family::transitive_tournament:
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                arcs.emplace_back(i, j);
        break;
    case Family::directed_cycle:
        for (int i = 0; i < k; ++i)
            arcs.emplace_back(i, (i + 1) % k);
        break;
    case Family::complete:
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (i != j)
                    arcs.emplace_back(i, j);
        break;
    case Family::tc:
        if (k < 2)
            throw std::invalid_argument("tc needs n >= 2");
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (! (i == 0 && j == k - 1))
                    arcs.emplace_back(i, j);
        arcs.emplace_back(k - 1, 0);
        break;
    }
    return Digraph(k, std::move(arcs));
}

Digraph make_loop()
{
    return Digraph(1, {{0, 0}});
}

namespace
{
    // figure arc lists are 1-indexed
    Digraph from_one_indexed(int n, std::vector<Arc> arcs)
    {
        for (auto & [u, v] : arcs) {
            --u;
            --v;
        }
        return Digraph(n, std::move(arcs));
    }
}

MarkedDigraph named_digraph(const std::string & name)
{
    if (name == "C3plus")
        return MarkedDigraph(from_one_indexed(3, {{1, 2}, {2, 3}, {3, 1}, {3, 2}}), {});
    if (name == "C3plusplus")
        return MarkedDigraph(from_one_indexed(3, {{1, 2}, {2, 3}, {3, 1}, {3, 2}, {1, 3}}), {});
    if (name == "K3")
        return MarkedDigraph(make_family(Family::complete, 3), {});
    if (name == "T4")
        return MarkedDigraph(make_family(Family::transitive_tournament, 4), {});
    if (name == "TC4")
        return MarkedDigraph(make_family(Family::tc, 4), {});
    if (name == "T4a")
        return MarkedDigraph(from_one_indexed(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {4, 2}, {3, 4}}), {});
    if (name == "T4b")
        return MarkedDigraph(from_one_indexed(4, {{2, 1}, {3, 1}, {4, 1}, {2, 3}, {4, 2}, {3, 4}}), {});
    if (name == "RT5")
        return MarkedDigraph(
            from_one_indexed(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {3, 1}, {1, 4}, {4, 2}, {2, 5}, {5, 3}}), {});
    if (name == "T5c")
        return MarkedDigraph(
            from_one_indexed(5, {{1, 2}, {2, 3}, {3, 4}, {1, 3}, {1, 4}, {2, 4}, {5, 1}, {5, 2}, {3, 5}, {4, 5}}), {});
    if (name == "GU")
        return MarkedDigraph(from_one_indexed(7, {{3, 2}, {2, 1}, {3, 4}, {5, 4}, {6, 5}, {6, 1}, {6, 7}, {7, 1}}),
            {0, 1, 2, 3, 4, 5});
    throw std::invalid_argument("unknown digraph name: " + name);
}

std::vector<std::string> named_digraph_names()
{
    return {"C3plus", "C3plusplus", "K3", "T4", "TC4", "T4a", "T4b", "RT5", "T5c", "GU"};
}

Digraph disjoint_union(const Digraph & a, const Digraph & b)
{
    std::vector<Arc> arcs = a.arcs();
    for (auto [u, v] : b.arcs())
        arcs.emplace_back(u + a.size(), v + a.size());
    return Digraph(a.size() + b.size(), std::move(arcs));
}

Digraph induced_subdigraph(const Digraph & d, const std::vector<int> & vertices)
{
    std::vector<int> pos(d.size(), -1);
    for (size_t i = 0; i < vertices.size(); ++i)
        pos[vertices[i]] = int(i);
    std::vector<Arc> arcs;
    for (auto [u, v] : d.arcs())
        if (pos[u] >= 0 && pos[v] >= 0)
            arcs.emplace_back(pos[u], pos[v]);
    return Digraph(int(vertices.size()), std::move(arcs));
}

Digraph reverse_digraph(const Digraph & d)
{
    std::vector<Arc> arcs;
    for (auto [u, v] : d.arcs())
        arcs.emplace_back(v, u);
    return Digraph(d.size(), std::move(arcs));
}

std::optional<int> longest_directed_walk(const Digraph & d)
{
    int n = d.size();
    // Kahn layering; cycle detection falls out of the topological sort
    std::vector<int> indeg(n, 0);
    for (auto [u, v] : d.arcs())
        ++indeg[v];
    std::vector<int> level(n, 1), order;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0)
            order.push_back(v);
    for (size_t i = 0; i < order.size(); ++i) {
        int u = order[i];
        for (int v : d.out(u)) {
            level[v] = std::max(level[v], level[u] + 1);
            if (--indeg[v] == 0)
                order.push_back(v);
        }
    }
    if (int(order.size()) != n)
        return std::nullopt;
    int best = 0;
    for (int v = 0; v < n; ++v)
        best = std::max(best, level[v]);
    return best;
}

std::vector<std::vector<int>> weak_components(const Digraph & d)
{
    int n = d.size();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1)
            continue;
        int id = int(out.size());
        out.push_back({});
        std::vector<int> stack{s};
        comp[s] = id;
        while (! stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            out[id].push_back(u);
            for (int v : d.out(u))
                if (comp[v] == -1) {
                    comp[v] = id;
                    stack.push_back(v);
                }
            for (int v : d.in(u))
                if (comp[v] == -1) {
                    comp[v] = id;
                    stack.push_back(v);
                }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

namespace
{
    // shortest cycle in the underlying simple graph; loops count as 1-cycles
    std::optional<int> underlying_girth(const Digraph & d)
    {
        int n = d.size();
        for (auto [u, v] : d.arcs())
            if (u == v)
                return 1;
        std::vector<std::vector<int>> adj(n);
        for (auto [u, v] : d.arcs()) {
            if (d.has_arc(v, u) && v < u)
                continue; // symmetric pair contributes one undirected edge
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        for (auto & a : adj) {
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
        // symmetric pair = 2-cycle in the incidence sense
        for (auto [u, v] : d.arcs())
            if (u < v && d.has_arc(v, u))
                return 2;
        int best = -1;
        // BFS from every vertex, tracking parent edge
        for (int s = 0; s < n; ++s) {
            std::vector<int> dist(n, -1), par(n, -1);
            std::queue<int> q;
            dist[s] = 0;
            q.push(s);
            while (! q.empty()) {
                int u = q.front();
                q.pop();
                for (int v : adj[u]) {
                    if (dist[v] == -1) {
                        dist[v] = dist[u] + 1;
                        par[v] = u;
                        q.push(v);
                    }
                    else if (v != par[u]) {
                        int len = dist[u] + dist[v] + 1;
                        if (best == -1 || len < best)
                            best = len;
                    }
                }
            }
        }
        if (best == -1)
            return std::nullopt;
        return best;
    }
}

StructuralReport structural_predicates(const Digraph & d)
{
    StructuralReport r;
    r.has_loop = d.has_loop();
    bool symmetric_pair = false;
    for (auto [u, v] : d.arcs())
        if (u < v && d.has_arc(v, u))
            symmetric_pair = true;
    r.is_oriented = ! symmetric_pair && ! r.has_loop;
    r.is_acyclic = longest_directed_walk(d).has_value();
    if (symmetric_pair)
        r.girth = 2;
    else
        r.girth = underlying_girth(d);
    r.weak_components = int(weak_components(d).size());
    for (int v = 0; v < d.size(); ++v) {
        if (d.in(v).empty())
            r.sources.push_back(v);
        if (d.out(v).empty())
            r.sinks.push_back(v);
    }
    return r;
}

std::optional<std::vector<int>> contains_subgraph(const Digraph & d, const Digraph & f, SubgraphMode mode)
{
    int nf = f.size(), nd = d.size();
    if (nf > nd)
        return std::nullopt;
    std::vector<int> map(nf, -1);
    std::vector<bool> used(nd, false);

    auto consistent = [&](int fv, int dv) {
        if (f.has_arc(fv, fv) != d.has_arc(dv, dv)) {
            if (mode == SubgraphMode::induced)
                return false;
            if (f.has_arc(fv, fv) && ! d.has_arc(dv, dv))
                return false;
        }
        for (int fu = 0; fu < nf; ++fu) {
            if (map[fu] == -1 || fu == fv)
                continue;
            int du = map[fu];
            bool fw = f.has_arc(fu, fv), bw = f.has_arc(fv, fu);
            bool dfw = d.has_arc(du, dv), dbw = d.has_arc(dv, du);
            if (mode == SubgraphMode::induced) {
                if (fw != dfw || bw != dbw)
                    return false;
            }
            else {
                if ((fw && ! dfw) || (bw && ! dbw))
                    return false;
            }
        }
        return true;
    };

    auto rec = [&](auto && self, int fv) -> bool {
        if (fv == nf)
            return true;
        for (int dv = 0; dv < nd; ++dv) {
            if (used[dv])
                continue;
            if (! consistent(fv, dv))
                continue;
            map[fv] = dv;
            used[dv] = true;
            if (self(self, fv + 1))
                return true;
            used[dv] = false;
            map[fv] = -1;
        }
        return false;
    };

    if (rec(rec, 0))
        return map;
    return std::nullopt;
}

std::vector<int> smooth_reduct_vertices(const Digraph & d)
{
    int n = d.size();
    std::vector<bool> alive(n, true);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> outdeg(n, 0), indeg(n, 0);
        for (auto [u, v] : d.arcs())
            if (alive[u] && alive[v]) {
                ++outdeg[u];
                ++indeg[v];
            }
        for (int v = 0; v < n; ++v)
            if (alive[v] && (outdeg[v] == 0 || indeg[v] == 0)) {
                alive[v] = false;
                changed = true;
            }
    }
    std::vector<int> kept;
    for (int v = 0; v < n; ++v)
        if (alive[v])
            kept.push_back(v);
    return kept;
}

Digraph smooth_reduct(const Digraph & d)
{
    return induced_subdigraph(d, smooth_reduct_vertices(d));
}

uint64_t adjacency_mask(const Digraph & d)
{
    int n = d.size();
    if (n > 8)
        throw cap_exceeded("adjacency mask needs n <= 8");
    uint64_t m = 0;
    for (auto [u, v] : d.arcs())
        m |= uint64_t{1} << (u * n + v);
    return m;
}

Digraph digraph_from_mask(int n, uint64_t mask)
{
    std::vector<Arc> arcs;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if ((mask >> (u * n + v)) & 1)
                arcs.emplace_back(u, v);
    return Digraph(n, std::move(arcs));
}

namespace
{
    // Matrices are ordered by the staircase code: for pos = 0..n-1 the chunk
    // A[0][pos..A[pos-1][pos], A[pos][0]..A[pos][pos] is decided when vertex
    // `pos` is placed, so branch-and-bound prunes are exact.
    uint32_t staircase_chunk(const std::array<uint8_t, 8> & adj_rows, const int * perm, int pos)
    {
        uint32_t c = 0;
        for (int i = 0; i < pos; ++i)
            c = (c << 1) | ((adj_rows[perm[i]] >> perm[pos]) & 1);
        for (int j = 0; j <= pos; ++j)
            c = (c << 1) | ((adj_rows[perm[pos]] >> perm[j]) & 1);
        return c;
    }

    struct CanonSearch
    {
        int n = 0;
        std::array<uint8_t, 8> adj{};
        std::array<int, 8> perm{};
        std::array<bool, 8> taken{};
        std::array<uint32_t, 8> best{};

        void run()
        {
            for (auto & b : best)
                b = ~uint32_t{0};
            search(0);
        }

        void search(int pos)
        {
            if (pos == n)
                return;
            for (int v = 0; v < n; ++v) {
                if (taken[v])
                    continue;
                perm[pos] = v;
                uint32_t c = staircase_chunk(adj, perm.data(), pos);
                if (c > best[pos])
                    continue;
                if (c < best[pos]) {
                    best[pos] = c;
                    for (int q = pos + 1; q < n; ++q)
                        best[q] = ~uint32_t{0};
                }
                taken[v] = true;
                search(pos + 1);
                taken[v] = false;
            }
        }
    };
}

uint64_t canonical_key(const Digraph & d)
{
    int n = d.size();
    if (n > 8)
        throw cap_exceeded("canonical form supported for n <= 8");
    if (n == 0)
        return 0;
    CanonSearch cs;
    cs.n = n;
    for (auto [u, v] : d.arcs())
        cs.adj[u] |= uint8_t(1u << v);
    cs.run();
    // rebuild the minimal matrix from the chunks
    uint64_t key = 0;
    for (int pos = 0; pos < n; ++pos) {
        uint32_t c = cs.best[pos];
        for (int j = pos; j >= 0; --j) {
            if (c & 1)
                key |= uint64_t{1} << (pos * n + j);
            c >>= 1;
        }
        for (int i = pos - 1; i >= 0; --i) {
            if (c & 1)
                key |= uint64_t{1} << (i * n + pos);
            c >>= 1;
        }
    }
    return key;
}

std::optional<std::vector<int>> find_isomorphism(const Digraph & a, const Digraph & b)
{
    if (a.size() != b.size() || a.arc_count() != b.arc_count())
        return std::nullopt;
    int n = a.size();
    // invariant = (outdeg, indeg, loop); candidates must match
    auto inv = [](const Digraph & d, int v) {
        return std::tuple(int(d.out(v).size()), int(d.in(v).size()), d.has_arc(v, v));
    };
    {
        std::vector<std::tuple<int, int, bool>> ia, ib;
        for (int v = 0; v < n; ++v) {
            ia.push_back(inv(a, v));
            ib.push_back(inv(b, v));
        }
        auto sa = ia, sb = ib;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb)
            return std::nullopt;
    }
    std::vector<int> map(n, -1);
    std::vector<bool> used(n, false);
    // order a-vertices by rarity of invariant for faster failure
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    auto consistent = [&](int av, int bv) {
        if (inv(a, av) != inv(b, bv))
            return false;
        for (int au = 0; au < n; ++au) {
            if (map[au] == -1 || au == av)
                continue;
            if (a.has_arc(au, av) != b.has_arc(map[au], bv))
                return false;
            if (a.has_arc(av, au) != b.has_arc(bv, map[au]))
                return false;
        }
        return true;
    };
    auto rec = [&](auto && self, int idx) -> bool {
        if (idx == n)
            return true;
        int av = order[idx];
        for (int bv = 0; bv < n; ++bv) {
            if (used[bv] || ! consistent(av, bv))
                continue;
            map[av] = bv;
            used[bv] = true;
            if (self(self, idx + 1))
                return true;
            used[bv] = false;
            map[av] = -1;
        }
        return false;
    };
    if (rec(rec, 0))
        return map;
    return std::nullopt;
}

bool isomorphic(const Digraph & a, const Digraph & b)
{
    if (a.size() != b.size() || a.arc_count() != b.arc_count())
        return false;
    if (a.size() <= 8)
        return canonical_key(a) == canonical_key(b);
    return find_isomorphism(a, b).has_value();
}

}
