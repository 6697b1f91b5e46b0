#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vdwforge/bigint.hpp"
#include "vdwforge/certificate.hpp"
#include "vdwforge/group.hpp"
#include "vdwforge/planner.hpp"
#include "vdwforge/progressions.hpp"

namespace vdw {

// Residues n in Z/p^tZ whose base-p digits all lie in 1..p-1, via the
// recursion A_{t+1} = A_1 + p A_t. Sorted; |result| = (p-1)^t; p-AP-free.
std::vector<std::uint64_t> erdos_turan_set(std::uint64_t p, unsigned t);

struct MtResult {
    std::optional<Coloring> coloring;  // set iff the verifier found no witness
    std::uint64_t resamples = 0;
    bool success() const { return coloring.has_value(); }
};

// Colors the group uniformly at random, then repeatedly recolors all
// elements of the canonical first monochromatic non-trivial k-AP until the
// verifier finds none or resample_cap is hit. The output is certified by
// the verifier, never by the probabilistic argument.
MtResult mt_coloring(const Group& g, int r, int k, std::uint64_t seed,
                     std::uint64_t resample_cap);

struct FiberUnion {
    Group product_group;
    std::vector<Element> set;  // {(x, y) : x in S, y in Y_x}
};

// Union of fibers over a k-AP-free base set; k-AP-free in H1 x H2 for all
// valid inputs. Inputs are re-checked eagerly at small scale; fiber keys
// outside S are rejected. Missing keys mean an empty fiber.
FiberUnion fiber_union(const Group& h1, const Group& h2, int k,
                       const std::vector<Element>& s,
                       const std::map<Element, std::vector<Element>>& fibers);

struct SparsifyResult {
    Coloring coloring;          // r' + 1 colors, color 1 = the digit set
    Rational delta;             // exact heavy-tail fraction 1 - (1 - 1/p)^t
    std::uint64_t class1_size;  // (p-1)^t
};

// Re-colors Z/p^tZ so that color 1 is the Erdos-Turan digit set and every
// other element keeps 1 + its old color. Requires p <= k; c2's classes are
// re-verified eagerly at small scale.
SparsifyResult sparsify_coloring(const Coloring& c2, std::uint64_t p, unsigned t, int k);

struct BlowupParams {
    int r1 = 1;
    int r2 = 1;
    int r3 = 0;
    int k = 3;
    std::uint64_t seed = 0;
    std::uint64_t retry_cap = 1;  // >= 1
    std::uint64_t q_claim = 1;    // claimed minimum order of H1
    int threads = 1;              // verifier threads
};

struct BlowupResult {
    bool verified = false;
    Coloring coloring;  // verified output, or the last attempt when !verified
    std::uint64_t attempts = 0;
    std::optional<APWitness> witness;  // last witness when !verified
};

// Randomized blow-up: draws an independent uniform shift y_x in H2 for every
// x in H1, colors (x, y) by (C1(x), C2(y - y_x)) with overflow colors passed
// through, and identifies ([r1] x [r2]) u [r3] with [r1 r2 + r3] by
// (i, j) -> (i-1) r2 + j and overflow i -> r1 r2 + i. Las Vegas: each failed
// verification redraws all shifts, up to retry_cap attempts.
BlowupResult blowup(const Coloring& c1, const Coloring& c2, const BlowupParams& params);

enum class PipelineMode { strict, forced };

struct StagePlan {
    std::uint64_t prime = 0;
    unsigned exponent = 0;
    std::uint64_t h_order = 0;  // prime^exponent
    int colors_added = 0;       // palette of the factor coloring
    GcolCheck gcol;             // hypothesis for the factor's own coloring
    std::optional<FeasibilityReport> synth;  // absent for stage 0
};

struct PipelinePlan {
    int k = 0;
    int r = 0;
    Rational eps;
    int a = 0;
    int b = 0;
    std::vector<std::uint64_t> primes;  // p_0, ..., p_b (descending)
    unsigned t0 = 0;
    unsigned tprime = 0;
    BigInt predicted_n;
    std::vector<StagePlan> stages;
    bool feasible_strict = false;  // every gcol + synth cond2/cond3 verdict
    std::string to_text() const;
};

// Planning only: primes, exponents, per-stage feasibility. Throws when the
// window has too few primes (the error message suggests an override).
PipelinePlan plan_pipeline(int k, int r, const Rational& eps,
                           std::optional<std::pair<std::uint64_t, std::uint64_t>>
                               window_override = std::nullopt);

struct PipelineOptions {
    std::uint64_t retry_cap = 100;
    std::uint64_t resample_cap = 200000;
    int threads = 1;
};

struct PipelineResult {
    enum class Status { verified, infeasible, retry_exhausted };
    Status status = Status::infeasible;
    std::optional<Certificate> certificate;  // set iff status == verified
    std::optional<PipelinePlan> plan;
    std::string message;      // failure detail / feasibility report text
    std::uint64_t attempts = 0;
};

// The full construction: base coloring of Z/p_0^{t_0}Z with a colors, then
// one sparsify + blow-up stage per remaining prime (3 colors each), CRT
// flattening to Z/NZ, and a final verification pass over the flat coloring.
PipelineResult build_pipeline(int k, int r, const Rational& eps, std::uint64_t seed,
                              PipelineMode mode,
                              std::optional<std::pair<std::uint64_t, std::uint64_t>>
                                  window_override = std::nullopt,
                              const PipelineOptions& opts = {});

// FNV-1a over the palette and color array; identifies verified factor
// colorings inside feasibility reports.
std::string coloring_content_hash(const Coloring& c);

}  // namespace vdw
