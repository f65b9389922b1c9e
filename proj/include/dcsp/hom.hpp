#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <dcsp/digraph.hpp>

namespace dcsp
{

enum class Consistency
{
    none,
    arc,
    arc_plus_singleton
};

struct SearchBudget
{
    uint64_t max_nodes = 0; // 0 = unlimited
    Consistency consistency = Consistency::arc;
};

enum class HomStatus
{
    found,
    none,
    budget_exhausted
};

struct HomResult
{
    HomStatus status = HomStatus::none;
    std::optional<std::vector<int>> map;

    bool found() const { return status == HomStatus::found; }
};

HomResult find_hom(const Digraph & d, const Digraph & h, const SearchBudget & budget = {});
HomResult find_hom(const MarkedDigraph & d, const MarkedDigraph & h, const SearchBudget & budget = {});

// candidate sets restrict each instance vertex; used by the polymorphism search
HomResult find_hom_with_candidates(
    const Digraph & d, const Digraph & h, std::vector<Bitset> candidates, const SearchBudget & budget = {});

bool verify_hom(const Digraph & d, const Digraph & h, const std::vector<int> & map);
bool verify_hom(const MarkedDigraph & d, const MarkedDigraph & h, const std::vector<int> & map);

bool hom_equivalent(const Digraph & a, const Digraph & b);

struct CoreResult
{
    Digraph core;
    std::vector<int> vertices;   // original vertex ids of the core
    std::vector<int> retraction; // original vertex -> core index
};

CoreResult core(const Digraph & h, int cap = 10);

enum class SmoothClass
{
    poly_time,
    np_complete,
    not_smooth
};

SmoothClass classify_smooth(const Digraph & h, int core_cap = 10);

}
