#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <dcsp/digraph.hpp>

namespace dcsp
{

struct EnumFilters
{
    bool loopless = false;
    bool oriented = false;
    bool tournament = false;
    bool induced_p3_free = false;
    bool weakly_connected = false;
};

enum class EnumStatus
{
    complete,
    budget_exceeded
};

// Visits every labeled digraph on n vertices passing the filters; with dedup,
// exactly one representative per isomorphism class (the canonical labeling).
// labeled_budget bounds the number of labeled leaves visited (0 = unlimited).
// With jobs > 1 the visitor is invoked from multiple workers.
EnumStatus enumerate_digraphs(int n, const EnumFilters & filters, bool dedup, uint64_t labeled_budget,
    const std::function<void(const Digraph &)> & visit, int jobs = 1);

// deterministic order regardless of jobs
std::vector<Digraph> collect_digraphs(int n, const EnumFilters & filters, bool dedup, int jobs = 1);

std::vector<Digraph> collect_tournaments(int n, int jobs = 1);

}
