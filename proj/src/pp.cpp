#include <dcsp/pp.hpp>

#include <dcsp/hom.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dcsp
{

uint64_t tuple_count(int base, int length)
{
    uint64_t c = 1;
    for (int i = 0; i < length; ++i)
        c *= uint64_t(base);
    return c;
}

std::vector<int> decode_tuple(uint64_t index, int base, int length)
{
    std::vector<int> t(length);
    for (int i = length - 1; i >= 0; --i) {
        t[i] = int(index % base);
        index /= base;
    }
    return t;
}

uint64_t encode_tuple(const std::vector<int> & tuple, int base)
{
    uint64_t idx = 0;
    for (int v : tuple)
        idx = idx * base + uint64_t(v);
    return idx;
}

PPDefinition trivial_pp()
{
    PPDefinition d;
    d.dimension = 1;
    d.num_vars = 2;
    d.free_vars = {0, 1};
    d.atoms = {{0, 1}};
    d.var_names = {"x", "y"};
    return d;
}

namespace
{
    struct Token
    {
        std::string text;
        int line, col;
    };

    std::vector<Token> tokenize(const std::string & text)
    {
        std::vector<Token> out;
        int line = 1, col = 1;
        size_t i = 0;
        auto bump = [&](char c) {
            if (c == '\n') {
                ++line;
                col = 1;
            }
            else
                ++col;
        };
        while (i < text.size()) {
            char c = text[i];
            if (c == '#') {
                while (i < text.size() && text[i] != '\n')
                    bump(text[i++]);
                continue;
            }
            if (isspace(static_cast<unsigned char>(c))) {
                bump(c);
                ++i;
                continue;
            }
            int tl = line, tc = col;
            if (isalnum(static_cast<unsigned char>(c)) || c == '_') {
                std::string word;
                while (i < text.size() && (isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                    word += text[i];
                    bump(text[i++]);
                }
                out.push_back({word, tl, tc});
                continue;
            }
            if (c == ':' && i + 1 < text.size() && text[i + 1] == '=') {
                out.push_back({":=", tl, tc});
                bump(text[i++]);
                bump(text[i++]);
                continue;
            }
            if (std::string("(),.&=").find(c) != std::string::npos) {
                out.push_back({std::string(1, c), tl, tc});
                bump(c);
                ++i;
                continue;
            }
            throw parse_error("pp definition: unexpected character '" + std::string(1, c) + "' at line " +
                std::to_string(line) + ":" + std::to_string(col));
        }
        return out;
    }

    struct UnionFind
    {
        std::vector<int> parent;
        explicit UnionFind(int n) : parent(n)
        {
            std::iota(parent.begin(), parent.end(), 0);
        }
        int find(int x)
        {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        }
        void unite(int a, int b)
        {
            a = find(a);
            b = find(b);
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b); // keep lowest id
        }
    };
}

PPDefinition parse_pp(const std::string & text)
{
    auto toks = tokenize(text);
    size_t pos = 0;
    auto where = [&]() -> std::string {
        if (pos < toks.size())
            return "line " + std::to_string(toks[pos].line) + ":" + std::to_string(toks[pos].col);
        return "end of input";
    };
    auto expect = [&](const std::string & t) {
        if (pos >= toks.size() || toks[pos].text != t)
            throw parse_error("pp definition: expected '" + t + "' at " + where());
        ++pos;
    };
    auto peek = [&](const std::string & t) { return pos < toks.size() && toks[pos].text == t; };
    auto ident = [&]() {
        if (pos >= toks.size() || ! isalpha(static_cast<unsigned char>(toks[pos].text[0])))
            throw parse_error("pp definition: expected identifier at " + where());
        return toks[pos++].text;
    };

    expect("def");
    expect("E");
    expect("(");
    std::vector<std::string> frees;
    frees.push_back(ident());
    while (peek(",")) {
        ++pos;
        frees.push_back(ident());
    }
    expect(")");
    expect(":=");

    if (frees.size() % 2 != 0)
        throw parse_error("pp definition: free variable list must have even length (got " +
            std::to_string(frees.size()) + ")");
    int d = int(frees.size()) / 2;
    // canonical names: x,y for d=1 (or x1,y1), else x1..xd,y1..yd
    auto expected_name = [&](int i) -> std::vector<std::string> {
        bool is_x = i < d;
        int idx = is_x ? i + 1 : i - d + 1;
        std::string base = is_x ? "x" : "y";
        if (d == 1)
            return {base, base + "1"};
        return {base + std::to_string(idx)};
    };
    for (int i = 0; i < 2 * d; ++i) {
        auto ok = expected_name(i);
        if (std::find(ok.begin(), ok.end(), frees[i]) == ok.end())
            throw parse_error("pp definition: inconsistent dimension: free variable #" + std::to_string(i + 1) +
                " should be '" + ok.front() + "', got '" + frees[i] + "'");
    }

    std::map<std::string, int> var_id;
    std::vector<std::string> names;
    for (int i = 0; i < 2 * d; ++i) {
        var_id[frees[i]] = i;
        names.push_back(frees[i]);
    }

    if (peek("exists")) {
        ++pos;
        while (true) {
            auto z = ident();
            if (var_id.count(z))
                throw parse_error("pp definition: duplicate variable '" + z + "'");
            var_id[z] = int(names.size());
            names.push_back(z);
            if (peek(","))
                ++pos;
            else
                break;
        }
        expect(".");
    }

    auto lookup = [&](const std::string & v) {
        auto it = var_id.find(v);
        if (it == var_id.end())
            throw parse_error("pp definition: undeclared variable '" + v + "'");
        return it->second;
    };

    std::vector<PPAtom> raw_atoms;
    std::vector<std::pair<int, int>> equalities;
    while (true) {
        if (peek("E")) {
            ++pos;
            expect("(");
            int a = lookup(ident());
            expect(",");
            int b = lookup(ident());
            expect(")");
            raw_atoms.push_back({a, b});
        }
        else {
            auto a = lookup(ident());
            expect("=");
            auto b = lookup(ident());
            equalities.emplace_back(a, b);
        }
        if (peek("&"))
            ++pos;
        else
            break;
    }
    if (pos != toks.size())
        throw parse_error("pp definition: trailing input at " + where());

    // merge equality classes; representative = lowest id, so frees win
    UnionFind uf(int(names.size()));
    for (auto [a, b] : equalities)
        uf.unite(a, b);
    std::vector<int> rep(names.size()), dense(names.size(), -1);
    int next = 0;
    for (size_t v = 0; v < names.size(); ++v) {
        int r = uf.find(int(v));
        if (dense[r] == -1)
            dense[r] = next++;
        rep[v] = dense[r];
    }

    PPDefinition def;
    def.dimension = d;
    def.num_vars = next;
    def.var_names.assign(next, "");
    for (size_t v = 0; v < names.size(); ++v)
        if (def.var_names[rep[v]].empty())
            def.var_names[rep[v]] = names[v];
    for (int i = 0; i < 2 * d; ++i)
        def.free_vars.push_back(rep[i]);
    for (auto & at : raw_atoms)
        def.atoms.push_back({rep[at.a], rep[at.b]});
    std::sort(def.atoms.begin(), def.atoms.end(), [](const PPAtom & a, const PPAtom & b) {
        return std::tie(a.a, a.b) < std::tie(b.a, b.b);
    });
    def.atoms.erase(std::unique(def.atoms.begin(), def.atoms.end()), def.atoms.end());
    return def;
}

std::string pp_to_string(const PPDefinition & def)
{
    int d = def.dimension;
    auto pos_name = [&](int i) {
        bool is_x = i < d;
        if (d == 1)
            return std::string(is_x ? "x" : "y");
        return (is_x ? "x" : "y") + std::to_string(is_x ? i + 1 : i - d + 1);
    };
    // a merged free variable keeps the name of its first position; later
    // positions reappear as equality atoms
    std::vector<std::string> name(def.num_vars);
    std::vector<std::string> eqs;
    for (int i = 0; i < 2 * d; ++i) {
        int v = def.free_vars[i];
        if (name[v].empty())
            name[v] = pos_name(i);
        else
            eqs.push_back(pos_name(i) + "=" + name[v]);
    }
    std::vector<std::string> exists;
    for (int v = 0; v < def.num_vars; ++v)
        if (name[v].empty()) {
            name[v] = "z" + std::to_string(exists.size() + 1);
            exists.push_back(name[v]);
        }
    std::ostringstream s;
    s << "def E(";
    for (int i = 0; i < 2 * d; ++i)
        s << (i ? "," : "") << pos_name(i);
    s << ") := ";
    if (! exists.empty()) {
        s << "exists ";
        for (size_t i = 0; i < exists.size(); ++i)
            s << (i ? "," : "") << exists[i];
        s << " . ";
    }
    bool first = true;
    for (const auto & at : def.atoms) {
        s << (first ? "" : " & ") << "E(" << name[at.a] << "," << name[at.b] << ")";
        first = false;
    }
    for (const auto & e : eqs) {
        s << (first ? "" : " & ") << e;
        first = false;
    }
    return s.str();
}

CanonicalDatabase canonical_database(const PPDefinition & def)
{
    std::vector<Arc> arcs;
    for (const auto & at : def.atoms)
        arcs.emplace_back(at.a, at.b);
    return {Digraph(def.num_vars, std::move(arcs)), def.free_vars};
}

namespace
{
    // does A satisfy the formula with the distinguished variables pinned?
    bool satisfies(const PPDefinition & def, const CanonicalDatabase & db, const Digraph & a,
        const std::vector<int> & xs, const std::vector<int> & ys)
    {
        int d = def.dimension;
        std::vector<int> pin(def.num_vars, -1);
        for (int i = 0; i < d; ++i) {
            int var = def.free_vars[i];
            if (pin[var] != -1 && pin[var] != xs[i])
                return false;
            pin[var] = xs[i];
        }
        for (int i = 0; i < d; ++i) {
            int var = def.free_vars[d + i];
            if (pin[var] != -1 && pin[var] != ys[i])
                return false;
            pin[var] = ys[i];
        }
        std::vector<Bitset> cand(def.num_vars, Bitset(a.size(), true));
        for (int v = 0; v < def.num_vars; ++v)
            if (pin[v] != -1) {
                Bitset s(a.size());
                s.set(pin[v]);
                cand[v] = s;
            }
        return find_hom_with_candidates(db.gadget, a, std::move(cand)).found();
    }
}

Digraph pp_power(const PPDefinition & def, const Digraph & a, uint64_t size_cap, int jobs)
{
    uint64_t n = tuple_count(a.size(), def.dimension);
    if (n > size_cap)
        throw cap_exceeded("pp power size " + std::to_string(n) + " exceeds cap");
    auto db = canonical_database(def);
    int nn = int(n);
    std::vector<std::vector<int>> tuples(nn);
    for (int i = 0; i < nn; ++i)
        tuples[i] = decode_tuple(i, a.size(), def.dimension);

    std::vector<Arc> arcs;
    if (jobs <= 1) {
        for (int i = 0; i < nn; ++i)
            for (int j = 0; j < nn; ++j)
                if (satisfies(def, db, a, tuples[i], tuples[j]))
                    arcs.emplace_back(i, j);
    }
    else {
        std::vector<std::vector<Arc>> per(nn);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
#endif
        for (int i = 0; i < nn; ++i)
            for (int j = 0; j < nn; ++j)
                if (satisfies(def, db, a, tuples[i], tuples[j]))
                    per[i].emplace_back(i, j);
        for (auto & v : per)
            arcs.insert(arcs.end(), v.begin(), v.end());
    }
    return Digraph(nn, std::move(arcs));
}

Digraph gadget_replacement(const PPDefinition & def, const Digraph & b)
{
    int d = def.dimension;
    auto db = canonical_database(def);
    int per_arc = def.num_vars;
    int block_vertices = b.size() * d;
    int total = block_vertices + int(b.arcs().size()) * per_arc;

    UnionFind uf(total);
    int fresh = block_vertices;
    for (auto [u, v] : b.arcs()) {
        int base = fresh;
        fresh += per_arc;
        // identify distinguished tuple with the endpoint blocks
        for (int i = 0; i < d; ++i) {
            uf.unite(base + def.free_vars[i], u * d + i);
            uf.unite(base + def.free_vars[d + i], v * d + i);
        }
    }
    // quotient: dense ids in ascending representative order
    std::vector<int> dense(total, -1);
    int next = 0;
    for (int v = 0; v < total; ++v) {
        int r = uf.find(v);
        if (dense[r] == -1)
            dense[r] = next++;
    }
    auto cls = [&](int v) { return dense[uf.find(v)]; };

    std::vector<Arc> arcs;
    fresh = block_vertices;
    for (auto [u, v] : b.arcs()) {
        int base = fresh;
        fresh += per_arc;
        (void)u;
        (void)v;
        for (const auto & at : def.atoms)
            arcs.emplace_back(cls(base + at.a), cls(base + at.b));
    }
    return Digraph(next, std::move(arcs));
}

PPDefinition compose_pp(const PPDefinition & d1, const PPDefinition & d2)
{
    int da = d1.dimension, db = d2.dimension;
    PPDefinition out;
    out.dimension = da * db;
    // every d1-variable becomes a block of db fresh variables; blocks for the
    // free variables of d1 make up the composed free tuple
    int blocks = d1.num_vars;
    out.num_vars = blocks * db;
    out.var_names.assign(out.num_vars, "");
    for (int v = 0; v < blocks; ++v)
        for (int j = 0; j < db; ++j)
            out.var_names[v * db + j] = d1.var_names[v] + "_" + std::to_string(j + 1);
    for (int i = 0; i < 2 * da; ++i)
        for (int j = 0; j < db; ++j)
            out.free_vars.push_back(d1.free_vars[i] * db + j);
    // substitute each d1 atom by a copy of d2 with fresh existentials
    for (const auto & at : d1.atoms) {
        int extra = d2.num_vars - 2 * db;
        int base = out.num_vars;
        out.num_vars += extra;
        for (int e = 0; e < extra; ++e)
            out.var_names.push_back(d2.var_names[2 * db + e] + "_a" + std::to_string(base + e));
        auto map_var = [&](int v2) {
            if (v2 < db)
                return at.a * db + v2; // x-block of the substituted atom
            if (v2 < 2 * db)
                return at.b * db + (v2 - db);
            return base + (v2 - 2 * db);
        };
        for (const auto & at2 : d2.atoms)
            out.atoms.push_back({map_var(at2.a), map_var(at2.b)});
    }
    std::sort(out.atoms.begin(), out.atoms.end(),
        [](const PPAtom & a, const PPAtom & b) { return std::tie(a.a, a.b) < std::tie(b.a, b.b); });
    out.atoms.erase(std::unique(out.atoms.begin(), out.atoms.end()), out.atoms.end());
    return out;
}

}
