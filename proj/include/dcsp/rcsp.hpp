#pragma once

#include <dcsp/digraph.hpp>
#include <dcsp/hom.hpp>
#include <dcsp/pp.hpp>

namespace dcsp
{

// vertices = A x B pairs, row-major (a * |B| + b)
Digraph product(const Digraph & a, const Digraph & b, int jobs = 1);

// vertices = functions B -> A as |B|-tuples over A, row-major by ascending
// B-vertex; arc (f,g) iff every arc (b1,b2) of B yields an arc (f(b1),g(b2))
Digraph exponential(const Digraph & a, const Digraph & b, uint64_t size_cap = 200000, int jobs = 1);

// d = |B| definition whose pp power is the exponential by construction
PPDefinition exponential_pp_definition(const Digraph & b);

struct RCSPTemplate
{
    Digraph domain;      // A
    Digraph restriction; // B, nonempty
};

enum class RCSPRoute
{
    direct,
    via_exponential
};

enum class RCSPStatus
{
    yes,
    no,
    promise_violation
};

struct RCSPOutcome
{
    RCSPStatus status;
    std::optional<std::vector<int>> hom; // instance -> A certificate on yes
};

RCSPOutcome rcsp_solve(
    const RCSPTemplate & t, const Digraph & instance, RCSPRoute route, uint64_t exp_cap = 200000);

}
