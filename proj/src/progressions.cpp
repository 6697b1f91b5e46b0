#include "vdwforge/progressions.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace vdw {

void Coloring::validate() const {
    if (palette_size < 1) throw std::invalid_argument("Coloring: palette_size < 1");
    if (colors.size() != group.order_u64())
        throw std::invalid_argument("Coloring: color array length != group order");
    for (std::uint16_t c : colors) {
        if (c < 1 || c > palette_size)
            throw std::invalid_argument("Coloring: color outside [1, r]");
    }
}

ApSequence make_ap(const Group& g, const Element& x, const Element& d, int k) {
    if (k < 1) throw std::invalid_argument("make_ap: k < 1");
    ApSequence out;
    out.sequence.reserve(static_cast<std::size_t>(k));
    Element cur = g.add(x, g.zero());  // normalizes coordinates
    for (int i = 0; i < k; ++i) {
        out.sequence.push_back(cur);
        if (std::find(out.distinct.begin(), out.distinct.end(), cur) == out.distinct.end())
            out.distinct.push_back(cur);
        cur = g.add(cur, d);
    }
    return out;
}

namespace {

APWitness witness_from(const Group& g, std::uint64_t x_idx, std::uint64_t d_idx, int k,
                       std::optional<int> color) {
    APWitness w;
    w.start = g.element_at(x_idx);
    w.diff = g.element_at(d_idx);
    w.k = k;
    w.color = color;
    w.elements = make_ap(g, w.start, w.diff, k).distinct;
    return w;
}

}  // namespace

FreeCheck is_k_ap_free_indices(const Group& g, const std::vector<std::uint64_t>& s, int k) {
    if (k < 2) throw std::invalid_argument("is_k_ap_free: k < 2");
    FreeCheck out;
    if (s.empty()) return out;
    const std::uint64_t n = g.order_u64();
    std::vector<char> member(n, 0);
    for (std::uint64_t idx : s) member.at(idx) = 1;

    for (std::uint64_t d_idx = 1; d_idx < n; ++d_idx) {
        const Element d = g.element_at(d_idx);
        for (std::uint64_t x_idx = 0; x_idx < n; ++x_idx) {
            if (!member[x_idx]) continue;
            Element cur = g.element_at(x_idx);
            bool contained = true;
            for (int j = 1; j < k; ++j) {
                cur = g.add(cur, d);
                if (!member[g.index_of(cur)]) {
                    contained = false;
                    break;
                }
            }
            if (contained) {
                out.free = false;
                out.witness = witness_from(g, x_idx, d_idx, k, std::nullopt);
                return out;
            }
        }
    }
    return out;
}

FreeCheck is_k_ap_free(const Group& g, const std::vector<Element>& s, int k) {
    std::vector<std::uint64_t> idx;
    idx.reserve(s.size());
    for (const Element& e : s) idx.push_back(g.index_of(e));
    return is_k_ap_free_indices(g, idx, k);
}

namespace {

std::optional<APWitness> find_mono_ap_naive(const Coloring& c, int k) {
    const Group& g = c.group;
    const std::uint64_t n = g.order_u64();
    for (int color = 1; color <= c.palette_size; ++color) {
        for (std::uint64_t d_idx = 1; d_idx < n; ++d_idx) {
            const Element d = g.element_at(d_idx);
            for (std::uint64_t x_idx = 0; x_idx < n; ++x_idx) {
                if (c.colors[x_idx] != color) continue;
                Element cur = g.element_at(x_idx);
                bool mono = true;
                for (int j = 1; j < k; ++j) {
                    cur = g.add(cur, d);
                    if (c.colors[g.index_of(cur)] != color) {
                        mono = false;
                        break;
                    }
                }
                if (mono) return witness_from(g, x_idx, d_idx, k, color);
            }
        }
    }
    return std::nullopt;
}

// Doubled membership buffer: bit i = mask bit (i mod n), for i < 2n, with a
// spare word so 64-bit windows can be loaded at any bit offset.
std::vector<std::uint64_t> double_mask(const std::vector<std::uint64_t>& mask,
                                       std::uint64_t n) {
    std::vector<std::uint64_t> d((2 * n + 63) / 64 + 1, 0);
    for (std::uint64_t i = 0; i < 2 * n; ++i) {
        const std::uint64_t src = i % n;
        if (mask[src >> 6] >> (src & 63) & 1) d[i >> 6] |= 1ULL << (i & 63);
    }
    return d;
}

inline std::uint64_t load_window(const std::vector<std::uint64_t>& doubled,
                                 std::uint64_t bit_offset) {
    const std::uint64_t q = bit_offset >> 6, o = bit_offset & 63;
    if (o == 0) return doubled[q];
    return (doubled[q] >> o) | (doubled[q + 1] << (64 - o));
}

}  // namespace

namespace detail {

std::optional<std::pair<std::uint64_t, std::uint64_t>> first_ap_in_mask(
    const std::vector<std::uint64_t>& mask_words, std::uint64_t n, int k,
    std::uint64_t d_lo, std::uint64_t d_hi) {
    const std::uint64_t words = (n + 63) / 64;
    const auto doubled = double_mask(mask_words, n);
    std::vector<std::uint64_t> acc(words);
    for (std::uint64_t d = d_lo; d <= d_hi; ++d) {
        acc = mask_words;
        bool alive = true;
        std::uint64_t shift = 0;
        for (int j = 1; j < k && alive; ++j) {
            shift += d;
            if (shift >= n) shift -= n;
            alive = false;
            for (std::uint64_t w = 0; w < words; ++w) {
                acc[w] &= load_window(doubled, w * 64 + shift);
                alive |= acc[w] != 0;
            }
        }
        if (alive) {
            for (std::uint64_t w = 0; w < words; ++w) {
                if (acc[w]) {
                    const std::uint64_t x = w * 64 +
                        static_cast<std::uint64_t>(__builtin_ctzll(acc[w]));
                    return std::make_pair(d, x);
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace detail

namespace {

std::optional<APWitness> find_mono_ap_fast(const Coloring& c, int k, int threads) {
    const Group& g = c.group;
    const std::uint64_t n = g.order_u64();
    if (n <= 1) return std::nullopt;
    const std::uint64_t words = (n + 63) / 64;
    const std::uint64_t d_max = n / 2;  // difference d implies difference n-d

    for (int color = 1; color <= c.palette_size; ++color) {
        std::vector<std::uint64_t> mask(words, 0);
        bool any = false;
        for (std::uint64_t i = 0; i < n; ++i) {
            if (c.colors[i] == color) {
                mask[i >> 6] |= 1ULL << (i & 63);
                any = true;
            }
        }
        if (!any) continue;

        std::optional<std::pair<std::uint64_t, std::uint64_t>> best;
        const int nthreads = std::max(1, std::min<int>(threads, static_cast<int>(d_max)));
        if (nthreads == 1) {
            best = detail::first_ap_in_mask(mask, n, k, 1, d_max);
        } else {
            // Chunked scan with a shared upper bound so workers skip
            // differences beyond the best found so far; the min-reduction
            // keeps the result independent of scheduling.
            std::atomic<std::uint64_t> best_d{UINT64_MAX};
            std::vector<std::optional<std::pair<std::uint64_t, std::uint64_t>>> results(
                static_cast<std::size_t>(nthreads));
            std::atomic<std::uint64_t> next_chunk{0};
            const std::uint64_t chunk = 64;
            auto worker = [&](int tid) {
                for (;;) {
                    const std::uint64_t start = 1 + chunk * next_chunk.fetch_add(1);
                    if (start > d_max) return;
                    if (start > best_d.load(std::memory_order_relaxed)) return;
                    const std::uint64_t stop = std::min(d_max, start + chunk - 1);
                    auto hit = detail::first_ap_in_mask(mask, n, k, start, stop);
                    if (hit) {
                        auto& slot = results[static_cast<std::size_t>(tid)];
                        if (!slot || hit->first < slot->first) slot = hit;
                        std::uint64_t cur = best_d.load();
                        while (hit->first < cur &&
                               !best_d.compare_exchange_weak(cur, hit->first)) {
                        }
                    }
                }
            };
            std::vector<std::thread> pool;
            for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
            for (auto& t : pool) t.join();
            for (const auto& r : results) {
                if (r && (!best || r->first < best->first ||
                          (r->first == best->first && r->second < best->second)))
                    best = r;
            }
        }
        if (best) return witness_from(g, best->second, best->first, k, color);
    }
    return std::nullopt;
}

}  // namespace

std::optional<APWitness> find_mono_ap(const Coloring& c, int k, VerifyMode mode,
                                      int threads) {
    if (k < 2) throw std::invalid_argument("find_mono_ap: k < 2");
    if (mode == VerifyMode::fast && c.group.is_cyclic_presentation())
        return find_mono_ap_fast(c, k, threads);
    return find_mono_ap_naive(c, k);
}

std::optional<APWitness> find_mono_ap_canonical(const Coloring& c, int k) {
    if (k < 2) throw std::invalid_argument("find_mono_ap: k < 2");
    const Group& g = c.group;
    if (!g.is_cyclic_presentation()) return find_mono_ap_naive(c, k);
    const std::uint64_t n = g.order_u64();
    if (n <= 1) return std::nullopt;
    const std::uint64_t words = (n + 63) / 64;
    for (int color = 1; color <= c.palette_size; ++color) {
        std::vector<std::uint64_t> mask(words, 0);
        for (std::uint64_t i = 0; i < n; ++i) {
            if (c.colors[i] == color) mask[i >> 6] |= 1ULL << (i & 63);
        }
        auto hit = detail::first_ap_in_mask(mask, n, k, 1, n - 1);
        if (hit) return witness_from(g, hit->second, hit->first, k, color);
    }
    return std::nullopt;
}

}  // namespace vdw
