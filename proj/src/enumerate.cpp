#include <dcsp/enumerate.hpp>

#include <array>
#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dcsp
{

namespace
{
    struct Matrix
    {
        int n = 0;
        std::array<uint8_t, 8> row{}; // row[i] bit j = arc (i,j)

        bool arc(int i, int j) const { return (row[i] >> j) & 1; }
        void set(int i, int j) { row[i] |= uint8_t(1u << j); }
        void clear(int i, int j) { row[i] &= uint8_t(~(1u << j)); }
    };

    // Staircase code: chunk(pos) = column entries A[0..pos-1][pos] then row
    // entries A[pos][0..pos]; matrices compared lexicographically by chunks.
    // Canonical representative = labeling with the minimal code; each search
    // step decides a whole chunk, so prunes against the identity are exact.
    uint32_t chunk_of(const Matrix & m, const int * perm, int pos)
    {
        uint32_t c = 0;
        for (int i = 0; i < pos; ++i)
            c = (c << 1) | unsigned(m.arc(perm[i], perm[pos]));
        for (int j = 0; j <= pos; ++j)
            c = (c << 1) | unsigned(m.arc(perm[pos], perm[j]));
        return c;
    }

    bool is_canonical(const Matrix & m)
    {
        int n = m.n;
        static const std::array<int, 8> identity{0, 1, 2, 3, 4, 5, 6, 7};
        std::array<uint32_t, 8> ref{};
        for (int pos = 0; pos < n; ++pos)
            ref[pos] = chunk_of(m, identity.data(), pos);

        std::array<int, 8> perm{};
        std::array<bool, 8> taken{};
        bool smaller = false;
        auto rec = [&](auto && self, int pos) -> void {
            if (smaller || pos == n)
                return;
            for (int v = 0; v < n && ! smaller; ++v) {
                if (taken[v])
                    continue;
                perm[pos] = v;
                uint32_t c = chunk_of(m, perm.data(), pos);
                if (c > ref[pos])
                    continue;
                if (c < ref[pos]) {
                    smaller = true;
                    return;
                }
                taken[v] = true;
                self(self, pos + 1);
                taken[v] = false;
            }
        };
        rec(rec, 0);
        return ! smaller;
    }

    bool triple_is_induced_p3(const Matrix & m, int a, int b, int c)
    {
        if (m.arc(a, a) || m.arc(b, b) || m.arc(c, c))
            return false;
        int arcs = m.arc(a, b) + m.arc(b, a) + m.arc(a, c) + m.arc(c, a) + m.arc(b, c) + m.arc(c, b);
        if (arcs != 2)
            return false;
        const std::array<std::array<int, 3>, 6> orders{{{a, b, c}, {a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}}};
        for (auto [x, y, z] : orders)
            if (m.arc(x, y) && m.arc(y, z))
                return true;
        return false;
    }

    bool weakly_connected_mask(const Matrix & m)
    {
        int n = m.n;
        if (n == 0)
            return true;
        std::array<int, 8> uf{};
        for (int i = 0; i < n; ++i)
            uf[i] = i;
        auto find = [&](int x) {
            while (uf[x] != x)
                x = uf[x] = uf[uf[x]];
            return x;
        };
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && m.arc(i, j))
                    uf[find(i)] = find(j);
        int root = find(0);
        for (int i = 1; i < n; ++i)
            if (find(i) != root)
                return false;
        return true;
    }

    Digraph to_digraph(const Matrix & m)
    {
        std::vector<Arc> arcs;
        for (int i = 0; i < m.n; ++i)
            for (int j = 0; j < m.n; ++j)
                if (m.arc(i, j))
                    arcs.emplace_back(i, j);
        return Digraph(m.n, std::move(arcs));
    }

    struct EnumCtx
    {
        const EnumFilters & f;
        bool dedup;
        uint64_t budget;
        std::atomic<uint64_t> leaves{0};
        std::atomic<bool> stop{false};
    };

    // pattern for new vertex k: 2 bits per earlier vertex (bit0 = arc j->k,
    // bit1 = arc k->j), plus a loop bit on top
    bool apply_pattern(Matrix & m, int k, uint64_t pattern, const EnumFilters & f)
    {
        for (int j = 0; j < k; ++j) {
            int bits = int((pattern >> (2 * j)) & 3);
            if (f.tournament && (bits == 0 || bits == 3))
                return false;
            if (f.oriented && bits == 3)
                return false;
            if (bits & 1)
                m.set(j, k);
            if (bits & 2)
                m.set(k, j);
        }
        bool loop = (pattern >> (2 * k)) & 1;
        if (loop) {
            if (f.loopless || f.oriented || f.tournament)
                return false;
            m.set(k, k);
        }
        if (f.induced_p3_free) {
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j)
                    if (triple_is_induced_p3(m, i, j, k))
                        return false;
        }
        return true;
    }

    void clear_pattern(Matrix & m, int k)
    {
        for (int j = 0; j < k; ++j) {
            m.clear(j, k);
            m.clear(k, j);
        }
        m.clear(k, k);
    }

    uint64_t pattern_count(int k, const EnumFilters & f)
    {
        uint64_t per = (f.loopless || f.oriented || f.tournament) ? 1 : 2;
        uint64_t total = per;
        for (int j = 0; j < k; ++j)
            total *= 4;
        return total;
    }

    template <typename Leaf>
    void dfs(Matrix & m, int k, int n, EnumCtx & ctx, Leaf && leaf)
    {
        if (ctx.stop.load(std::memory_order_relaxed))
            return;
        if (k == n) {
            if (ctx.f.weakly_connected && ! weakly_connected_mask(m))
                return;
            if (ctx.budget) {
                uint64_t c = ctx.leaves.fetch_add(1) + 1;
                if (c > ctx.budget) {
                    ctx.stop.store(true);
                    return;
                }
            }
            if (! ctx.dedup || is_canonical(m))
                leaf(m);
            return;
        }
        uint64_t pc = pattern_count(k, ctx.f);
        for (uint64_t p = 0; p < pc; ++p) {
            if (ctx.stop.load(std::memory_order_relaxed))
                return;
            if (apply_pattern(m, k, p, ctx.f))
                dfs(m, k + 1, n, ctx, leaf);
            clear_pattern(m, k);
        }
    }
}

EnumStatus enumerate_digraphs(int n, const EnumFilters & filters, bool dedup, uint64_t labeled_budget,
    const std::function<void(const Digraph &)> & visit, int jobs)
{
    if (n < 0 || n > 8)
        throw cap_exceeded("enumeration supports 0 <= n <= 8");
    EnumCtx ctx{filters, dedup, labeled_budget};
    if (n == 0) {
        visit(Digraph(0, {}));
        return EnumStatus::complete;
    }

    if (jobs <= 1) {
        Matrix m;
        m.n = n;
        dfs(m, 0, n, ctx, [&](const Matrix & mm) { visit(to_digraph(mm)); });
    }
    else {
        // split the tree at a fixed depth, workers own whole subtrees
        int depth = std::min(n, 3);
        std::vector<Matrix> tasks;
        {
            Matrix m;
            m.n = n;
            EnumCtx top{filters, false, 0};
            auto collectTasks = [&](auto && self, Matrix & mm, int k) -> void {
                if (k == depth) {
                    tasks.push_back(mm);
                    return;
                }
                uint64_t pc = pattern_count(k, filters);
                for (uint64_t p = 0; p < pc; ++p) {
                    if (apply_pattern(mm, k, p, filters))
                        self(self, mm, k + 1);
                    clear_pattern(mm, k);
                }
            };
            collectTasks(collectTasks, m, 0);
        }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
#endif
        for (size_t t = 0; t < tasks.size(); ++t) {
            Matrix m = tasks[t];
            dfs(m, depth, n, ctx, [&](const Matrix & mm) { visit(to_digraph(mm)); });
        }
    }
    return ctx.stop.load() ? EnumStatus::budget_exceeded : EnumStatus::complete;
}

std::vector<Digraph> collect_digraphs(int n, const EnumFilters & filters, bool dedup, int jobs)
{
    std::vector<Digraph> out;
    if (jobs <= 1) {
        enumerate_digraphs(n, filters, dedup, 0, [&](const Digraph & d) { out.push_back(d); }, 1);
        return out;
    }
    std::vector<std::pair<uint64_t, Digraph>> keyed;
#ifdef _OPENMP
    std::vector<std::vector<std::pair<uint64_t, Digraph>>> per(jobs);
    enumerate_digraphs(n, filters, dedup, 0,
        [&](const Digraph & d) { per[omp_get_thread_num() % jobs].emplace_back(adjacency_mask(d), d); }, jobs);
    for (auto & v : per)
        for (auto & kd : v)
            keyed.push_back(std::move(kd));
#else
    enumerate_digraphs(n, filters, dedup, 0, [&](const Digraph & d) { keyed.emplace_back(adjacency_mask(d), d); }, 1);
#endif
    std::sort(keyed.begin(), keyed.end(), [](const auto & a, const auto & b) { return a.first < b.first; });
    for (auto & kd : keyed)
        out.push_back(std::move(kd.second));
    return out;
}

std::vector<Digraph> collect_tournaments(int n, int jobs)
{
    EnumFilters f;
    f.tournament = true;
    f.loopless = true;
    f.oriented = true;
    return collect_digraphs(n, f, true, jobs);
}

}
