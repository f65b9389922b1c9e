#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <dcsp/digraph.hpp>

namespace dcsp
{

struct ObstructionReport
{
    bool maps = false;
    std::string witness_name;        // on obstructed: which obstruction fired
    std::vector<int> witness_map;    // injective embedding into the subject
    std::string theorem;             // checker id ("tc4" or "tcn")
};

// (D -> TT_k decided by search, longest directed walk <= k); callers assert agreement
std::pair<bool, bool> path_tt_duality(const Digraph & d, int k);

// true iff no member of the family admits a homomorphism into d
bool in_forb(const Digraph & d, const std::vector<Digraph> & family);

// precondition: induced-P3-free (checked)
ObstructionReport tc4_characterization(const Digraph & d);
ObstructionReport tcn_min_obstructions(const Digraph & d, int n);

// tournaments on <= max_size vertices (up to iso) with no embedding into TC_n
std::vector<Digraph> compute_Fn(int n, int max_size, int jobs = 1);

enum class CheckerKind
{
    tc4,
    tcn
};

struct CounterexampleSearch
{
    std::optional<Digraph> counterexample;
    uint64_t exhaustive_checked = 0;
    uint64_t sampled_checked = 0;
    uint64_t sample_attempts = 0;
};

// enumerates induced-P3-free loopless oriented weakly connected digraphs up to
// nmax (exhaustive dedup for n <= 5, seeded sampling beyond) and returns the
// first digraph where the characterization disagrees with the hom search
CounterexampleSearch search_counterexample(
    CheckerKind checker, int n, int nmax, std::optional<uint64_t> sample, uint64_t seed, int jobs = 1);

}
