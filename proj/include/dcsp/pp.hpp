#pragma once

#include <string>
#include <vector>

#include <dcsp/digraph.hpp>

namespace dcsp
{

struct PPAtom
{
    int a, b; // variable ids
    bool operator==(const PPAtom &) const = default;
};

// primitive positive definition of one binary output relation; equalities are
// eliminated at parse by variable merging
struct PPDefinition
{
    int dimension = 1;
    int num_vars = 0;                   // merged variables, frees first
    std::vector<int> free_vars;         // 2*dimension entries, may repeat
    std::vector<PPAtom> atoms;          // deduplicated, sorted
    std::vector<std::string> var_names; // one per merged variable

    bool operator==(const PPDefinition &) const = default;
};

PPDefinition trivial_pp(); // E(x,y) := E(x,y)

// grammar: def E(<free-list>) := [exists <z-list> .] <atom> { & <atom> }
// free-list "x,y" (d=1) or "x1,..,xd,y1,..,yd"; atoms E(a,b) or a=b
PPDefinition parse_pp(const std::string & text);
std::string pp_to_string(const PPDefinition & def);

struct CanonicalDatabase
{
    Digraph gadget;
    std::vector<int> distinguished; // 2*dimension vertices, may repeat
};

CanonicalDatabase canonical_database(const PPDefinition & def);

// vertex set = d-tuples over A in row-major order (first coordinate major)
Digraph pp_power(const PPDefinition & def, const Digraph & a, uint64_t size_cap = 200000, int jobs = 1);

Digraph gadget_replacement(const PPDefinition & def, const Digraph & b);

// dimension d1*d2; satisfies pp_power(compose_pp(d1,d2), A) == pp_power(d1, pp_power(d2, A))
PPDefinition compose_pp(const PPDefinition & d1, const PPDefinition & d2);

// tuple index helpers shared with the exponential construction
uint64_t tuple_count(int base, int length);
std::vector<int> decode_tuple(uint64_t index, int base, int length);
uint64_t encode_tuple(const std::vector<int> & tuple, int base);

}
