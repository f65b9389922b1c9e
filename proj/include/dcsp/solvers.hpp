#pragma once

#include <optional>
#include <string>
#include <vector>

#include <dcsp/digraph.hpp>
#include <dcsp/poly.hpp>

namespace dcsp
{

struct SolverOutcome
{
    bool yes = false;
    std::optional<std::vector<int>> certificate; // hom into the solver's template
    std::string reason;                          // populated on no
    std::vector<std::string> notes;              // e.g. oracle fallbacks
};

bool p4_subgraph_free(const Digraph & d);
bool induced_p3_free(const Digraph & d);

// acyclic with longest directed walk <= k; certificate = level map into TT_k
SolverOutcome solve_via_levels(const Digraph & d, int k);

// loopless P4-subgraph-free digraphs are 3-colourable, constructively
SolverOutcome solve_k3_p4subfree(const Digraph & d);

// loopless P4-subgraph-free: homomorphism to C3plusplus unless K3 occurs
SolverOutcome solve_c3pp_p4subfree(const Digraph & d);

// P4-subgraph-free instances of CSP(C3plus); drop_reversed picks which arc of
// each symmetric pair is removed in the reduction
SolverOutcome solve_c3plus_p4subfree(const Digraph & d, bool drop_reversed = false);

// (2,3)-consistency + greedy extraction for templates with a verified majority
// polymorphism
SolverOutcome majority_consistency_solve(
    const MarkedDigraph & instance, const MarkedDigraph & templ, const FunctionTable & majority);

// induced-P3-free instances of CSP(C3plus): seeded deterministic extension;
// components containing a directed 3-cycle fall back to the hom search (logged)
SolverOutcome solve_c3plus_p3free(const Digraph & d);

// induced-P3-free instances of CSP(TC_n): decision by the finite obstruction set
SolverOutcome solve_tcn_p3free(const Digraph & d, int n);

// verified projection of the (G,U) template onto C3plus, used to turn
// consistency certificates into C3plus certificates
const std::vector<int> & gu_to_c3plus_projection();

}
