#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vdwforge/group.hpp"
#include "vdwforge/progressions.hpp"

namespace vdw {

// Ground truth by exhaustive backtracking, three-valued: exact results,
// truncated lower bounds when a limit stops the search, or indeterminate
// when the node budget runs out (never reported as a definite answer).
enum class SearchKind { exact, at_least, indeterminate };

struct VdwResult {
    int k = 0;
    int r = 0;
    SearchKind kind = SearchKind::indeterminate;
    std::uint64_t value = 0;  // exact w(k;r), or the ". >= value" bound
    // extremal coloring of [value-1] (positions 1..value-1) for exact results;
    // for truncated results a valid coloring of [n_limit]
    std::vector<std::uint16_t> witness;
    std::uint64_t nodes = 0;
    double seconds = 0.0;
};

// Least N <= n_limit such that no r-coloring of [N] avoids a monochromatic
// k-AP; interval semantics (integer differences d >= 1, no wraparound).
// First position's color is fixed to break palette symmetry.
VdwResult vdw(int k, int r, int n_limit, std::uint64_t node_budget = 2'000'000'000);

// Independent interval checker used to re-verify oracle witnesses (separate
// code path from the group verifier on purpose: 1-based positions, d >= 1,
// no wraparound).
bool interval_has_mono_ap(const std::vector<std::uint16_t>& colors, int k);

struct ExistsResult {
    SearchKind kind = SearchKind::indeterminate;  // exact = search exhausted
    std::optional<Coloring> coloring;             // set iff a coloring exists
    std::uint64_t nodes = 0;
};

// Exhaustive search for an r-coloring of G with all classes k-AP-free.
// Canonical element order, incremental pruning, palette-symmetry breaking.
// Budget exhaustion is reported as indeterminate, never as "none".
ExistsResult exists_coloring(const Group& g, int r, int k,
                             std::uint64_t node_budget = 500'000'000);

struct KappaResult {
    std::uint64_t n = 0;
    int r = 0;
    SearchKind kind = SearchKind::indeterminate;
    int value = 0;  // exact kappa, or the ". >= value" bound
    std::optional<Coloring> witness;
    std::uint64_t nodes = 0;
};

// Smallest k <= k_limit with an r-coloring of Z/NZ whose classes are all
// k-AP-free, by running exists_coloring for k = 2, 3, ...
KappaResult kappa_cyclic(std::uint64_t n, int r, int k_limit,
                         std::uint64_t node_budget = 500'000'000);

}  // namespace vdw
