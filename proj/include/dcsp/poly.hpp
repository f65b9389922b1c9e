#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <dcsp/digraph.hpp>

namespace dcsp
{

// linear identities f(x_{σ(1)},..,x_{σ(n)}) = f(x_{ρ(1)},..,x_{ρ(n)}) over m variables
struct IdentityPattern
{
    std::vector<int> sigma, rho; // length n, values in 0..m-1
};

struct IdentitySpec
{
    int arity = 0;
    int var_count = 0;
    std::vector<IdentityPattern> patterns;
    bool idempotent = false;
    bool conservative = false;
};

IdentitySpec siggers_spec();  // f(x1,x2,x3,x1) = f(x2,x1,x2,x3)
IdentitySpec majority_spec(bool conservative);

struct FunctionTable
{
    Digraph domain;
    int arity = 0;
    std::vector<int> table; // row-major over domain^arity, first coordinate major

    int apply(const std::vector<int> & args) const;
};

struct Indicator
{
    Digraph digraph;             // quotient of domain^n by the identity classes
    std::vector<int> cls;        // tuple index -> class
    std::vector<int> class_size; // members per class
    int classes = 0;
};

Indicator build_indicator(const Digraph & h, const IdentitySpec & spec, uint64_t cap = 2000000, int jobs = 1);

std::optional<FunctionTable> find_polymorphism(
    const Digraph & h, const IdentitySpec & spec, uint64_t cap = 2000000, int jobs = 1);

// exhaustive: arc preservation over all arc-tuples, every pattern over all
// assignments, flags when set
bool verify_function_table(const FunctionTable & f, const IdentitySpec & spec, std::string * why = nullptr);
bool verify_polymorphism(const FunctionTable & f, std::string * why = nullptr);

// mark preservation for tables over a marked template
bool table_preserves_marks(const FunctionTable & f, const std::vector<int> & marks);

// the 7-element conservative majority table for the catalog's (G,U) template:
// majority on triples with a repeated entry; the remaining entries are filled
// by a fixed-order backtracking completion that preserves the arcs
FunctionTable conservative_majority_gu();

// f over product(H, TT_k): slice i restricts all coordinates to level i and
// projects back to H
FunctionTable slice(const FunctionTable & f, const Digraph & h, int k, int level);

struct HardLevelReport
{
    std::optional<int> level;             // smallest k <= nmax with no Siggers polymorphism
    int levels_checked = 0;
    std::vector<bool> siggers_present;    // per level 1..levels_checked
    bool monotonicity_spot_checked = false;
};

HardLevelReport minimal_hard_level(const Digraph & h, int nmax, uint64_t cap = 2000000, int jobs = 1);

}
