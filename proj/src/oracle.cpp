#include "vdwforge/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace vdw {

bool interval_has_mono_ap(const std::vector<std::uint16_t>& colors, int k) {
    const int n = static_cast<int>(colors.size());
    for (int d = 1; (k - 1) * d <= n - 1; ++d) {
        for (int start = 0; start + (k - 1) * d < n; ++start) {
            const std::uint16_t c = colors[start];
            bool mono = true;
            for (int j = 1; j < k; ++j) {
                if (colors[start + j * d] != c) {
                    mono = false;
                    break;
                }
            }
            if (mono) return true;
        }
    }
    return false;
}

namespace {

// true when coloring position `pos` (1-based) with its current color
// completes a monochromatic k-AP ending at pos
bool completes_ap(const std::vector<std::uint16_t>& colors, int pos, int k) {
    const std::uint16_t c = colors[pos - 1];
    for (int d = 1; pos - (k - 1) * d >= 1; ++d) {
        bool mono = true;
        for (int j = 1; j < k; ++j) {
            if (colors[pos - 1 - j * d] != c) {
                mono = false;
                break;
            }
        }
        if (mono) return true;
    }
    return false;
}

}  // namespace

VdwResult vdw(int k, int r, int n_limit, std::uint64_t node_budget) {
    if (k < 3 || r < 2) throw std::invalid_argument("vdw: need k >= 3, r >= 2");
    if (n_limit < 1) throw std::invalid_argument("vdw: n_limit < 1");
    const auto t_start = std::chrono::steady_clock::now();

    VdwResult res;
    res.k = k;
    res.r = r;

    std::vector<std::uint16_t> colors(static_cast<std::size_t>(n_limit), 0);
    // palette symmetry: position pos may use colors up to one past the
    // maximum used before it (canonical relabeling preserves validity);
    // this implies the first position is pinned to color 1
    std::vector<std::uint16_t> max_used(static_cast<std::size_t>(n_limit) + 1, 0);
    int best = 0;
    std::vector<std::uint16_t> best_witness;
    bool budget_hit = false;
    bool limit_reached = false;

    // iterative DFS over valid partial colorings; colors[pos-1] holds the
    // color currently tried at position pos
    int pos = 1;
    while (pos >= 1) {
        if (limit_reached || budget_hit) break;
        std::uint16_t next = colors[static_cast<std::size_t>(pos - 1)] + 1;
        const std::uint16_t cap = std::min<std::uint16_t>(
            static_cast<std::uint16_t>(r),
            static_cast<std::uint16_t>(max_used[static_cast<std::size_t>(pos - 1)] + 1));
        if (next > cap) {
            colors[static_cast<std::size_t>(pos - 1)] = 0;
            --pos;
            continue;
        }
        colors[static_cast<std::size_t>(pos - 1)] = next;
        if (++res.nodes > node_budget) {
            budget_hit = true;
            break;
        }
        if (completes_ap(colors, pos, k)) continue;
        if (pos > best) {
            best = pos;
            best_witness.assign(colors.begin(), colors.begin() + pos);
        }
        if (pos == n_limit) {
            limit_reached = true;
            break;
        }
        max_used[static_cast<std::size_t>(pos)] =
            std::max(max_used[static_cast<std::size_t>(pos - 1)],
                     colors[static_cast<std::size_t>(pos - 1)]);
        ++pos;
    }

    res.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t_start)
                      .count();
    res.witness = std::move(best_witness);
    if (budget_hit) {
        res.kind = SearchKind::indeterminate;
        res.value = static_cast<std::uint64_t>(best + 1);
    } else if (limit_reached) {
        res.kind = SearchKind::at_least;
        res.value = static_cast<std::uint64_t>(n_limit + 1);
    } else {
        // exhausted: no valid coloring of [best+1] exists anywhere in the tree
        res.kind = SearchKind::exact;
        res.value = static_cast<std::uint64_t>(best + 1);
    }
    return res;
}

namespace {

struct ApCatalog {
    // all distinct non-trivial k-AP element sets, as sorted index lists;
    // aps_by_last[i] lists APs whose largest member index is i
    std::vector<std::vector<std::uint32_t>> aps;
    std::vector<std::vector<std::uint32_t>> aps_by_last;
};

ApCatalog build_catalog(const Group& g, int k) {
    const std::uint64_t n = g.order_u64();
    ApCatalog cat;
    cat.aps_by_last.resize(n);
    std::vector<std::vector<std::uint32_t>> seen;
    for (std::uint64_t d_idx = 1; d_idx < n; ++d_idx) {
        const Element d = g.element_at(d_idx);
        for (std::uint64_t x_idx = 0; x_idx < n; ++x_idx) {
            Element cur = g.element_at(x_idx);
            std::vector<std::uint32_t> members{static_cast<std::uint32_t>(x_idx)};
            for (int j = 1; j < k; ++j) {
                cur = g.add(cur, d);
                const std::uint32_t idx = static_cast<std::uint32_t>(g.index_of(cur));
                if (std::find(members.begin(), members.end(), idx) == members.end())
                    members.push_back(idx);
            }
            std::sort(members.begin(), members.end());
            seen.push_back(std::move(members));
        }
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (auto& ap : seen) {
        const std::uint32_t last = ap.back();
        cat.aps_by_last[last].push_back(static_cast<std::uint32_t>(cat.aps.size()));
        cat.aps.push_back(std::move(ap));
    }
    return cat;
}

}  // namespace

ExistsResult exists_coloring(const Group& g, int r, int k, std::uint64_t node_budget) {
    if (r < 1) throw std::invalid_argument("exists_coloring: r < 1");
    if (k < 2) throw std::invalid_argument("exists_coloring: k < 2");
    const std::uint64_t n = g.order_u64();
    ExistsResult res;
    if (n == 1) {
        res.kind = SearchKind::exact;
        res.coloring = Coloring(g, r);  // single element, color 1
        res.nodes = 1;
        return res;
    }

    const ApCatalog cat = build_catalog(g, k);
    std::vector<std::uint16_t> colors(n, 0);
    bool budget_hit = false;

    // DFS with palette-symmetry breaking: element i may use colors up to
    // 1 + (max color used by elements < i), capped at r
    std::vector<std::uint16_t> max_used(n + 1, 0);
    std::uint64_t pos = 0;
    while (true) {
        if (pos == n) {
            res.kind = SearchKind::exact;
            res.coloring = Coloring(g, r, colors);
            return res;
        }
        std::uint16_t next = colors[pos] + 1;
        const std::uint16_t cap =
            std::min<std::uint16_t>(static_cast<std::uint16_t>(r),
                                    static_cast<std::uint16_t>(max_used[pos] + 1));
        if (next > cap) {
            colors[pos] = 0;
            if (pos == 0) break;
            --pos;
            continue;
        }
        colors[pos] = next;
        if (++res.nodes > node_budget) {
            budget_hit = true;
            break;
        }
        bool ok = true;
        for (std::uint32_t ap_id : cat.aps_by_last[pos]) {
            const auto& ap = cat.aps[ap_id];
            bool mono = true;
            for (std::uint32_t m : ap) {
                if (colors[m] != next) {
                    mono = false;
                    break;
                }
            }
            if (mono) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        max_used[pos + 1] = std::max(max_used[pos], next);
        ++pos;
    }

    res.kind = budget_hit ? SearchKind::indeterminate : SearchKind::exact;
    res.coloring.reset();
    return res;
}

KappaResult kappa_cyclic(std::uint64_t n, int r, int k_limit,
                         std::uint64_t node_budget) {
    if (n < 1 || r < 1) throw std::invalid_argument("kappa_cyclic: need N >= 1, r >= 1");
    if (k_limit < 2) throw std::invalid_argument("kappa_cyclic: k_limit < 2");
    const Group g = Group::cyclic(n);
    KappaResult res;
    res.n = n;
    res.r = r;
    for (int k = 2; k <= k_limit; ++k) {
        ExistsResult e = exists_coloring(g, r, k, node_budget);
        res.nodes += e.nodes;
        if (e.kind == SearchKind::indeterminate) {
            res.kind = SearchKind::indeterminate;
            res.value = k;  // kappa >= k is all we know
            return res;
        }
        if (e.coloring) {
            res.kind = SearchKind::exact;
            res.value = k;
            res.witness = std::move(e.coloring);
            return res;
        }
    }
    res.kind = SearchKind::at_least;
    res.value = k_limit + 1;
    return res;
}

}  // namespace vdw
