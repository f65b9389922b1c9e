#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <dcsp/util.hpp>

namespace dcsp
{

using Arc = std::pair<int, int>;

// Immutable finite digraph. Vertices are 0..n-1, arcs form a set with
// deterministic ascending iteration. Loops are representable.
class Digraph
{
public:
    Digraph() = default;
    Digraph(int n, std::vector<Arc> arcs);

    int size() const { return n_; }
    int arc_count() const { return int(arcs_.size()); }
    const std::vector<Arc> & arcs() const { return arcs_; }
    const std::vector<int> & out(int v) const { return out_[v]; }
    const std::vector<int> & in(int v) const { return in_[v]; }
    bool has_arc(int u, int v) const;
    bool has_loop() const;

    bool operator==(const Digraph & o) const { return n_ == o.n_ && arcs_ == o.arcs_; }

private:
    int n_ = 0;
    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> out_, in_;
};

struct MarkedDigraph
{
    Digraph base;
    std::vector<int> marks; // sorted, subset of vertices

    MarkedDigraph() = default;
    MarkedDigraph(Digraph d, std::vector<int> m);
    bool marked(int v) const;
    bool operator==(const MarkedDigraph & o) const = default;
};

enum class Letter
{
    forward,
    backward
};
using OrientationWord = std::vector<Letter>;

// "><" or "fb" style, e.g. ">><" and "ffb" both denote forward,forward,backward
OrientationWord parse_word(const std::string & s);

Digraph make_path(const OrientationWord & w);
Digraph directed_path(int k); // all-forward path on k vertices

enum class Family
{
    transitive_tournament,
    directed_cycle,
    complete,
    tc
};

Digraph make_family(Family kind, int k);
Digraph make_loop(); // one vertex with a loop

// catalog names: C3plus, C3plusplus, K3, T4, TC4, T4a, T4b, RT5, T5c, GU
MarkedDigraph named_digraph(const std::string & name);
std::vector<std::string> named_digraph_names();

Digraph disjoint_union(const Digraph & a, const Digraph & b);
Digraph induced_subdigraph(const Digraph & d, const std::vector<int> & vertices);
Digraph reverse_digraph(const Digraph & d);

// nullopt = unbounded (a directed cycle exists)
std::optional<int> longest_directed_walk(const Digraph & d);

struct StructuralReport
{
    bool is_oriented;
    bool has_loop;
    bool is_acyclic;
    std::optional<int> girth; // nullopt = infinite (forest)
    int weak_components;
    std::vector<int> sources, sinks;
};

StructuralReport structural_predicates(const Digraph & d);

std::vector<std::vector<int>> weak_components(const Digraph & d);

enum class SubgraphMode
{
    subgraph,
    induced
};

// injective m with m(arcs F) ⊆ arcs D; induced additionally pulls back exactly
std::optional<std::vector<int>> contains_subgraph(const Digraph & d, const Digraph & f, SubgraphMode mode);

Digraph smooth_reduct(const Digraph & d);
std::vector<int> smooth_reduct_vertices(const Digraph & d);

// lexicographically minimal adjacency matrix over all vertex permutations,
// packed row-major into a word; requires n ≤ 8
uint64_t canonical_key(const Digraph & d);
uint64_t adjacency_mask(const Digraph & d);
Digraph digraph_from_mask(int n, uint64_t mask);

bool isomorphic(const Digraph & a, const Digraph & b);
std::optional<std::vector<int>> find_isomorphism(const Digraph & a, const Digraph & b);

}
