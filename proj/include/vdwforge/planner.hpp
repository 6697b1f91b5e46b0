#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vdwforge/bigint.hpp"

namespace vdw {

// Exact evaluation of the synthesis-lemma hypotheses for one blow-up stage.
// Every verdict is decided in integer/rational arithmetic; no float ever
// decides feasibility.
struct FeasibilityReport {
    // inputs
    std::uint64_t p = 0;
    unsigned t = 0;
    std::uint64_t q = 0;  // claimed minimum non-identity order of H1
    int k = 0;
    BigInt order_g;                              // |G| = |H1 x H2|
    std::optional<std::uint64_t> min_order_h1;   // exact value when known
    std::optional<std::string> kappa_evidence;   // content hashes of verified factor colorings

    Rational delta;  // 1 - (1 - 1/p)^t
    bool cond1 = false;  // kappa bounds evidenced (verifier-passed colorings)
    bool cond2 = false;  // min_order(H1) >= Q, exact when min_order_h1 known
    bool cond3 = false;  // delta^-min{Q,k} >= |G|^2, via big-integer identity
    BigInt cond3_margin;  // (p^t)^m - |G|^2 (p^t - (p-1)^t)^m, m = min{Q,k}

    std::string to_text() const;  // key-value block embedded in certificates
};

// All primes in ((1-eps)k, k], or in (lo, hi] when a window override is
// given. Deterministic sieve; an empty result is valid.
std::vector<std::uint64_t> primes_in_window(
    int k, const Rational& eps,
    std::optional<std::pair<std::uint64_t, std::uint64_t>> window_override = std::nullopt);

// floor(k (1-2 eps) log(base) / log(k)). Float estimate first; the floor
// boundary is confirmed by the big-integer comparison
// k^(t den) <= base^(k (den - 2 num)) whenever that power fits the budget.
unsigned exponent_t(int k, int base, const Rational& eps);

// (p^t - (p-1)^t) / p^t in lowest terms.
Rational delta_exact(std::uint64_t p, unsigned t);

FeasibilityReport check_synth(std::uint64_t p, unsigned t, std::uint64_t q, int k,
                              const BigInt& order_g,
                              std::optional<std::uint64_t> min_order_h1 = std::nullopt,
                              std::optional<std::string> kappa_evidence = std::nullopt);

struct GcolCheck {
    bool ok = false;        // both conditions
    bool ord_ok = false;    // min_order >= k
    bool degree_ok = false; // 4 k^2 |G| <= r^(k-1)
    BigInt margin;          // r^(k-1) - 4 k^2 |G|
};

// Hypotheses of the hypergraph-coloring corollary: ord(G) >= k and
// |G| <= r^(k-1) / 4k^2. The trivial group passes vacuously (it has no
// progressions at all, so the degree bound is moot).
GcolCheck check_gcol(const BigInt& order_g, int r, int k, std::uint64_t min_order);

// r = a + 3b with a in {2,3,4}.
struct PaletteSplit {
    int a = 0;
    int b = 0;
};
PaletteSplit decompose_palette(int r);

struct BoundRow {
    int k = 0;
    Rational erdos_lovasz;  // r^(k-1) / 4k
};

struct BoundTable {
    int r = 0;
    int a = 0;
    int b = 0;
    BigInt blowup_base;  // a * 3^b
    bool improves = false;  // blowup_base > r
    std::vector<BoundRow> rows;
};

BoundTable bound_table(int r, int k_lo, int k_hi);

}  // namespace vdw
