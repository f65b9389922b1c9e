#include <dcsp/satgadgets.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace dcsp
{

void OneInThreeInstance::validate() const
{
    std::vector<bool> seen(variables, false);
    for (const auto & c : clauses) {
        for (int v : c) {
            if (v < 0 || v >= variables)
                throw precondition_error("clause variable out of range");
            seen[v] = true;
        }
        if (c[0] == c[1] || c[0] == c[2] || c[1] == c[2])
            throw precondition_error("clause variables must be pairwise distinct");
    }
    for (int v = 0; v < variables; ++v)
        if (! seen[v])
            throw precondition_error("variable " + std::to_string(v + 1) + " occurs in no clause");
    if (clauses.empty())
        throw precondition_error("instance has no clauses");
}

OneInThreeInstance read_1in3(std::istream & in)
{
    OneInThreeInstance inst;
    std::string line;
    int expect_clauses = -1, lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tok;
        if (! (ls >> tok))
            continue;
        if (tok == "p") {
            std::string kind;
            if (! (ls >> kind >> inst.variables >> expect_clauses) || kind != "1in3")
                throw parse_error("line " + std::to_string(lineno) + ": expected 'p 1in3 <V> <C>'");
        }
        else {
            if (expect_clauses < 0)
                throw parse_error("line " + std::to_string(lineno) + ": clause before header");
            int a = std::stoi(tok), b, c;
            if (! (ls >> b >> c))
                throw parse_error("line " + std::to_string(lineno) + ": expected three variable ids");
            inst.clauses.push_back({a - 1, b - 1, c - 1});
        }
    }
    if (expect_clauses != int(inst.clauses.size()))
        throw parse_error("clause count mismatch: header says " + std::to_string(expect_clauses) + ", got " +
            std::to_string(inst.clauses.size()));
    inst.validate();
    return inst;
}

OneInThreeInstance read_1in3_file(const std::string & path)
{
    std::ifstream in(path);
    if (! in)
        throw std::runtime_error("cannot open " + path);
    return read_1in3(in);
}

std::string to_dimacs_like(const OneInThreeInstance & i)
{
    std::ostringstream s;
    s << "p 1in3 " << i.variables << " " << i.clauses.size() << "\n";
    for (const auto & c : i.clauses)
        s << c[0] + 1 << " " << c[1] + 1 << " " << c[2] + 1 << "\n";
    return s.str();
}

bool brute_force_1in3(const OneInThreeInstance & i)
{
    i.validate();
    if (i.variables > 24)
        throw cap_exceeded("brute force oracle capped at 24 variables");
    for (uint32_t mask = 0; mask < (uint32_t{1} << i.variables); ++mask) {
        bool ok = true;
        for (const auto & c : i.clauses) {
            int t = ((mask >> c[0]) & 1) + ((mask >> c[1]) & 1) + ((mask >> c[2]) & 1);
            if (t != 1) {
                ok = false;
                break;
            }
        }
        if (ok)
            return true;
    }
    return false;
}

namespace
{
    struct UF
    {
        std::vector<int> p;
        void ensure(int n)
        {
            while (int(p.size()) < n)
                p.push_back(int(p.size()));
        }
        int find(int x)
        {
            ensure(x + 1);
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

    struct Builder
    {
        const OneInThreeInstance & inst;
        ReductionOptions opts;
        bool symmetric_linkage; // C3plusplus variant

        std::vector<Arc> arcs;
        UF uf;
        int next;

        std::vector<std::array<int, 3>> tops;              // per clause
        std::map<int, std::vector<int>> occurrences;       // variable -> top ids, clause-major

        Builder(const OneInThreeInstance & i, const ReductionOptions & o, bool sym)
            : inst(i), opts(o), symmetric_linkage(sym), next(0)
        {
            if (opts.spacing < 0)
                throw precondition_error("spacing must be nonnegative");
            if (opts.spacing > 0 && opts.variable_mode == VariableMode::identify)
                throw precondition_error("spacing is only used with cycle mode");
            i.validate();
        }

        void link(int a, int b)
        {
            arcs.emplace_back(a, b);
            if (symmetric_linkage)
                arcs.emplace_back(b, a);
        }

        // back-and-forward pair (plain arcs) or symmetric equivalence gadget
        int pair_gadget(int p, int q)
        {
            int r = next++;
            link(r, p);
            link(r, q);
            return r;
        }

        void clause_gadgets()
        {
            // per clause: tops 0,1,2; middles 3,4,5; bottoms 6,7,8 (row order
            // as drawn); middles point to top and bottom, bottoms form the
            // directed triangle
            for (size_t ci = 0; ci < inst.clauses.size(); ++ci) {
                int base = next;
                next += 9;
                for (int col = 0; col < 3; ++col) {
                    link(base + 3 + col, base + col);     // middle -> top
                    link(base + 3 + col, base + 6 + col); // middle -> bottom
                }
                arcs.emplace_back(base + 6, base + 7);
                arcs.emplace_back(base + 7, base + 8);
                arcs.emplace_back(base + 8, base + 6);
                tops.push_back({base + 0, base + 1, base + 2});
                for (int col = 0; col < 3; ++col)
                    occurrences[inst.clauses[ci][col]].push_back(base + col);
            }
        }

        void variable_linkage()
        {
            if (opts.variable_mode == VariableMode::identify) {
                for (auto & [v, occ] : occurrences)
                    for (size_t j = 1; j < occ.size(); ++j)
                        uf.unite(occ[0], occ[j]);
                return;
            }
            // spacer chains first fix the junction vertex per occurrence
            std::map<int, std::vector<int>> junction;
            for (auto & [v, occ] : occurrences) {
                for (int t : occ) {
                    int cur = t;
                    for (int s = 0; s < opts.spacing; ++s) {
                        int sink = next++;
                        pair_gadget(cur, sink);
                        cur = sink;
                    }
                    junction[v].push_back(cur);
                }
            }
            // multigraph cycle on the junction vertices: one source per edge
            for (auto & [v, js] : junction) {
                int k = int(js.size());
                if (k == 1) {
                    pair_gadget(js[0], js[0]); // degenerate: both sinks identified
                    continue;
                }
                for (int j = 0; j < k; ++j)
                    pair_gadget(js[j], js[(j + 1) % k]);
            }
        }

        Digraph build()
        {
            clause_gadgets();
            variable_linkage();
            uf.ensure(next);
            // quotient with dense renumbering in ascending representative order
            std::vector<int> dense(next, -1);
            int out_n = 0;
            for (int v = 0; v < next; ++v) {
                int r = uf.find(v);
                if (dense[r] == -1)
                    dense[r] = out_n++;
            }
            std::vector<Arc> out_arcs;
            out_arcs.reserve(arcs.size());
            for (auto [a, b] : arcs)
                out_arcs.emplace_back(dense[uf.find(a)], dense[uf.find(b)]);
            for (auto & t : tops)
                for (auto & x : t)
                    x = dense[uf.find(x)];
            return Digraph(out_n, std::move(out_arcs));
        }
    };
}

Digraph reduce_to_c3plus(const OneInThreeInstance & i, const ReductionOptions & opts)
{
    Builder b(i, opts, false);
    return b.build();
}

Digraph reduce_to_tcn(const OneInThreeInstance & i, int n, const ReductionOptions & opts)
{
    if (n < 4)
        throw precondition_error("reduction target needs n >= 4");
    Builder b(i, opts, false);
    return b.build();
}

Digraph reduce_to_c3pp(const OneInThreeInstance & i, const ReductionOptions & opts)
{
    Builder b(i, opts, true);
    return b.build();
}

std::vector<std::array<int, 3>> clause_tops(const OneInThreeInstance & i, VariableMode mode)
{
    ReductionOptions opts;
    opts.variable_mode = mode;
    Builder b(i, opts, false);
    b.build();
    return b.tops;
}

namespace
{
    bool claw_free(const Digraph & d, int out_deg, int in_deg, std::vector<int> & witness)
    {
        for (int v = 0; v < d.size(); ++v) {
            std::vector<int> outs, ins;
            for (int w : d.out(v))
                if (w != v)
                    outs.push_back(w);
            for (int w : d.in(v))
                if (w != v)
                    ins.push_back(w);
            if (int(outs.size()) < out_deg || int(ins.size()) < in_deg)
                continue;
            std::vector<int> all = outs;
            all.insert(all.end(), ins.begin(), ins.end());
            std::sort(all.begin(), all.end());
            all.erase(std::unique(all.begin(), all.end()), all.end());
            if (int(all.size()) < out_deg + in_deg)
                continue;
            // greedy distinct pick always works at these tiny degrees
            witness = {v};
            return false;
        }
        return true;
    }

    AuditItem subgraph_free(const Digraph & d, const std::string & name, const Digraph & f, SubgraphMode mode)
    {
        auto w = contains_subgraph(d, f, mode);
        return {name, ! w.has_value(), w.value_or(std::vector<int>{})};
    }
}

bool AuditReport::all_pass() const
{
    for (const auto & it : items)
        if (! it.pass)
            return false;
    return true;
}

AuditReport structural_audit(const Digraph & d, AuditProfile profile)
{
    AuditReport rep;
    if (profile == AuditProfile::c3plus_p4free || profile == AuditProfile::tcn_p4free) {
        rep.items.push_back(subgraph_free(d, "P5-subgraph-free", directed_path(5), SubgraphMode::subgraph));
        rep.items.push_back(
            subgraph_free(d, "P5<<>>-subgraph-free", make_path(parse_word("<<>>")), SubgraphMode::subgraph));
        rep.items.push_back(
            subgraph_free(d, "P5>><<-subgraph-free", make_path(parse_word(">><<")), SubgraphMode::subgraph));
        rep.items.push_back(subgraph_free(d, "induced-P4-free", directed_path(4), SubgraphMode::induced));
        {
            AuditItem deg{"total-degree-at-most-3", true, {}};
            for (int v = 0; v < d.size(); ++v)
                if (int(d.out(v).size() + d.in(v).size()) > 3) {
                    deg.pass = false;
                    deg.witness = {v};
                    break;
                }
            rep.items.push_back(deg);
        }
        {
            AuditItem claw{"claw-source-free", true, {}};
            claw.pass = claw_free(d, 3, 0, claw.witness);
            rep.items.push_back(claw);
        }
        {
            AuditItem claw{"claw-out2-in1-free", true, {}};
            claw.pass = claw_free(d, 2, 1, claw.witness);
            rep.items.push_back(claw);
        }
    }
    else {
        rep.items.push_back({"loopless", ! d.has_loop(), {}});
        rep.items.push_back(subgraph_free(d, "induced-P3-free", directed_path(3), SubgraphMode::induced));
        rep.items.push_back(
            subgraph_free(d, "induced-P3<>-free", make_path(parse_word("<>")), SubgraphMode::induced));
        rep.items.push_back(
            subgraph_free(d, "induced-P3><-free", make_path(parse_word("><")), SubgraphMode::induced));
    }
    return rep;
}

}
