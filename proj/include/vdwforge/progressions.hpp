#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vdwforge/group.hpp"

namespace vdw {

// Total r-coloring of a group, colors 1..r, stored flat in the group's
// canonical element order.
struct Coloring {
    Group group;
    int palette_size = 1;
    std::vector<std::uint16_t> colors;

    Coloring(Group g, int r) : group(std::move(g)), palette_size(r) {
        colors.assign(group.order_u64(), 1);
    }
    Coloring(Group g, int r, std::vector<std::uint16_t> c)
        : group(std::move(g)), palette_size(r), colors(std::move(c)) {
        validate();
    }

    std::uint16_t color_of_index(std::uint64_t idx) const { return colors[idx]; }
    std::uint16_t color_of(const Element& g) const { return colors[group.index_of(g)]; }
    void validate() const;  // throws when length or color range is broken
};

// A concrete monochromatic (or set-contained) non-trivial k-AP.
struct APWitness {
    Element start;
    Element diff;   // never the identity
    int k = 0;
    std::optional<int> color;       // absent for set-freeness witnesses
    std::vector<Element> elements;  // distinct values of start + i*diff, first-appearance order
};

struct ApSequence {
    std::vector<Element> sequence;  // x, x+d, ..., x+(k-1)d
    std::vector<Element> distinct;  // first-appearance order
};

// The ordered AP sequence and its set of distinct values; the set may have
// fewer than k members when d has small order.
ApSequence make_ap(const Group& g, const Element& x, const Element& d, int k);

struct FreeCheck {
    bool free = true;
    std::optional<APWitness> witness;
};

// Reference oracle: naive double loop over (d, x). k >= 2; the empty set is
// free. Witness is the lowest (d, x) in canonical enumeration order.
FreeCheck is_k_ap_free(const Group& g, const std::vector<Element>& s, int k);

// Index-set variant used throughout the library (indices in canonical order).
FreeCheck is_k_ap_free_indices(const Group& g, const std::vector<std::uint64_t>& s, int k);

enum class VerifyMode { naive, fast };

// Finds a monochromatic non-trivial k-AP, or nullopt when every color class
// is k-AP-free.
//
// naive: reference triple loop; witness is the lowest (color, d, x) in
//   canonical order.
// fast: word-packed membership masks per color class with iterated
//   shift-and-intersect and early exit; the difference loop is halved (a
//   witness with difference d implies one with -d). Cyclic groups only;
//   product groups fall back to the naive path. Verdicts always agree with
//   naive; the witness identity may differ.
//
// threads > 1 parallelizes the fast kernel over the difference range; the
// returned witness is independent of the thread count (lowest (d, x) wins
// within the first witnessing color).
std::optional<APWitness> find_mono_ap(const Coloring& c, int k,
                                      VerifyMode mode = VerifyMode::fast,
                                      int threads = 1);

// Returns exactly the witness the naive reference returns (the lowest
// (color, d, x) triple), but runs the packed kernel over the full difference
// range when the group is cyclic. Used where witness identity must be
// reproducible, e.g. resampling.
std::optional<APWitness> find_mono_ap_canonical(const Coloring& c, int k);

namespace detail {

// Fast kernel over one membership mask of a cyclic group: least (d, x) with
// {x + j*d : j < k} contained in the mask, d ranging over [d_lo, d_hi].
std::optional<std::pair<std::uint64_t, std::uint64_t>> first_ap_in_mask(
    const std::vector<std::uint64_t>& mask_words, std::uint64_t n, int k,
    std::uint64_t d_lo, std::uint64_t d_hi);

}  // namespace detail

}  // namespace vdw
