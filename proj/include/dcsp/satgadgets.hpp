#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <dcsp/digraph.hpp>

namespace dcsp
{

// positive 1-IN-3-SAT: clauses of three pairwise distinct variables, satisfied
// when exactly one variable per clause is true
struct OneInThreeInstance
{
    int variables = 0;
    std::vector<std::array<int, 3>> clauses;

    void validate() const; // invariant check, throws
};

// format: "p 1in3 <V> <C>" then C lines of 3 distinct 1-based variable ids
OneInThreeInstance read_1in3(std::istream & in);
OneInThreeInstance read_1in3_file(const std::string & path);
std::string to_dimacs_like(const OneInThreeInstance & i);

bool brute_force_1in3(const OneInThreeInstance & i); // V <= 24

enum class VariableMode
{
    cycle,
    identify
};

struct ReductionOptions
{
    VariableMode variable_mode = VariableMode::cycle;
    int spacing = 0; // back-and-forward pairs chained at each junction, cycle mode only
};

Digraph reduce_to_c3plus(const OneInThreeInstance & i, const ReductionOptions & opts);
Digraph reduce_to_tcn(const OneInThreeInstance & i, int n, const ReductionOptions & opts);
Digraph reduce_to_c3pp(const OneInThreeInstance & i, const ReductionOptions & opts);

// indices of the clause-top vertices (variable occurrences), clause-major
std::vector<std::array<int, 3>> clause_tops(const OneInThreeInstance & i, VariableMode mode);

enum class AuditProfile
{
    c3plus_p4free,
    tcn_p4free,
    c3pp_p3free
};

struct AuditItem
{
    std::string property;
    bool pass;
    std::vector<int> witness; // on fail
};

struct AuditReport
{
    std::vector<AuditItem> items;
    bool all_pass() const;
};

AuditReport structural_audit(const Digraph & d, AuditProfile profile);

}
