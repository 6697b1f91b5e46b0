#include "vdwforge/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "vdwforge/rng.hpp"

namespace vdw {

std::vector<std::uint64_t> erdos_turan_set(std::uint64_t p, unsigned t) {
    if (!is_prime_u64(p)) throw std::invalid_argument("erdos_turan_set: p is not prime");
    if (t < 1) throw std::invalid_argument("erdos_turan_set: t < 1");
    // keep p^t (and the set itself) within the desk budget
    BigInt modulus = big_pow(p, t);
    if (modulus > BigInt(1) << 40)
        throw std::invalid_argument("erdos_turan_set: p^t exceeds budget");

    std::vector<std::uint64_t> acc{0};
    std::uint64_t scale = 1;
    for (unsigned i = 0; i < t; ++i) {
        std::vector<std::uint64_t> next;
        next.reserve(acc.size() * (p - 1));
        for (std::uint64_t digit = 1; digit < p; ++digit) {
            for (std::uint64_t base : acc) next.push_back(base + digit * scale);
        }
        acc = std::move(next);
        scale *= p;
    }
    std::sort(acc.begin(), acc.end());
    return acc;
}

namespace {

void check_classes_free(const Coloring& c, int k, const char* context) {
    // eager re-verification at small scale; larger inputs are the caller's
    // contract (everything in the pipeline arrives pre-verified)
    const std::uint64_t n = c.group.order_u64();
    const bool cyclic = c.group.is_cyclic_presentation();
    if ((cyclic && n <= 65536) || (!cyclic && n <= 1024)) {
        auto w = find_mono_ap(c, k, cyclic ? VerifyMode::fast : VerifyMode::naive);
        if (w) {
            std::ostringstream os;
            os << context << ": input coloring has a monochromatic " << k
               << "-AP in color " << *w->color;
            throw std::invalid_argument(os.str());
        }
    }
}

}  // namespace

MtResult mt_coloring(const Group& g, int r, int k, std::uint64_t seed,
                     std::uint64_t resample_cap) {
    if (r < 1) throw std::invalid_argument("mt_coloring: r < 1");
    if (k < 2) throw std::invalid_argument("mt_coloring: k < 2");
    const std::uint64_t n = g.order_u64();
    Rng rng(seed);

    Coloring c(g, r);
    for (std::uint64_t i = 0; i < n; ++i)
        c.colors[i] = static_cast<std::uint16_t>(1 + rng.bounded(static_cast<std::uint64_t>(r)));

    MtResult out;
    for (;;) {
        auto witness = find_mono_ap_canonical(c, k);
        if (!witness) {
            out.coloring = std::move(c);
            return out;
        }
        if (out.resamples >= resample_cap) return out;  // failure, stats only
        ++out.resamples;
        for (const Element& e : witness->elements) {
            c.colors[g.index_of(e)] =
                static_cast<std::uint16_t>(1 + rng.bounded(static_cast<std::uint64_t>(r)));
        }
    }
}

FiberUnion fiber_union(const Group& h1, const Group& h2, int k,
                       const std::vector<Element>& s,
                       const std::map<Element, std::vector<Element>>& fibers) {
    for (const auto& [key, fiber] : fibers) {
        if (std::find(s.begin(), s.end(), key) == s.end())
            throw std::invalid_argument("fiber_union: fiber key not in S");
    }
    if (h1.order_u64() <= 4096) {
        auto chk = is_k_ap_free(h1, s, k);
        if (!chk.free) throw std::invalid_argument("fiber_union: S is not k-AP-free");
    }
    FiberUnion out{product(h1, h2), {}};
    for (const Element& x : s) {
        auto it = fibers.find(x);
        if (it == fibers.end()) continue;
        if (h2.order_u64() <= 4096) {
            auto chk = is_k_ap_free(h2, it->second, k);
            if (!chk.free)
                throw std::invalid_argument("fiber_union: a fiber is not k-AP-free");
        }
        for (const Element& y : it->second) {
            Element g = x;
            g.insert(g.end(), y.begin(), y.end());
            out.set.push_back(std::move(g));
        }
    }
    return out;
}

SparsifyResult sparsify_coloring(const Coloring& c2, std::uint64_t p, unsigned t, int k) {
    if (!c2.group.is_cyclic_presentation())
        throw std::invalid_argument("sparsify_coloring: H2 must be presented as Z/p^tZ");
    if (t < 1) throw std::invalid_argument("sparsify_coloring: t < 1");
    if (!is_prime_u64(p)) throw std::invalid_argument("sparsify_coloring: p not prime");
    if (p > static_cast<std::uint64_t>(k))
        throw std::invalid_argument("sparsify_coloring: requires p <= k");
    const std::uint64_t n = c2.group.order_u64();
    if (big_pow(p, t) != BigInt(n))
        throw std::invalid_argument("sparsify_coloring: |H2| != p^t");
    check_classes_free(c2, k, "sparsify_coloring");

    const auto digit_set = erdos_turan_set(p, t);
    std::vector<std::uint16_t> colors(n);
    for (std::uint64_t y = 0; y < n; ++y)
        colors[y] = static_cast<std::uint16_t>(1 + c2.colors[y]);
    for (std::uint64_t member : digit_set) colors[member] = 1;

    SparsifyResult out{
        Coloring(c2.group, c2.palette_size + 1, std::move(colors)),
        delta_exact(p, t),
        digit_set.size(),
    };
    return out;
}

namespace {

struct FlatVerifier {
    // Verifies product-group colorings through the CRT permutation when the
    // factors are pairwise coprime; falls back to the naive scan otherwise.
    std::optional<CrtMap> map;
    std::vector<std::uint64_t> perm;  // product index -> flat residue
    Coloring flat;

    FlatVerifier(const Group& g, int palette)
        : flat(Group::trivial(), 1) {
        try {
            map.emplace(g);
        } catch (const std::invalid_argument&) {
            return;  // non-coprime factors: naive path
        }
        const std::uint64_t n = g.order_u64();
        perm.resize(n);
        for (std::uint64_t i = 0; i < n; ++i) perm[i] = map->to_cyclic(g.element_at(i));
        flat = Coloring(map->flat(), palette);
    }

    std::optional<APWitness> verify(const Coloring& c, int k, int threads) {
        if (!map) return find_mono_ap(c, k, VerifyMode::naive);
        for (std::uint64_t i = 0; i < perm.size(); ++i)
            flat.colors[perm[i]] = c.colors[i];
        auto w = find_mono_ap(flat, k, VerifyMode::fast, threads);
        if (!w) return std::nullopt;
        APWitness back;
        back.k = w->k;
        back.color = w->color;
        back.start = map->from_cyclic(w->start[0]);
        back.diff = map->from_cyclic(w->diff[0]);
        for (const Element& e : w->elements) back.elements.push_back(map->from_cyclic(e[0]));
        return back;
    }
};

}  // namespace

BlowupResult blowup(const Coloring& c1, const Coloring& c2, const BlowupParams& params) {
    if (params.r1 != c1.palette_size)
        throw std::invalid_argument("blowup: r1 != C1 palette");
    if (params.r2 < 1 || params.r3 < 0 || params.r2 + params.r3 != c2.palette_size)
        throw std::invalid_argument("blowup: r2 + r3 != C2 palette");
    if (params.retry_cap < 1) throw std::invalid_argument("blowup: retry_cap < 1");
    if (params.k < 2) throw std::invalid_argument("blowup: k < 2");
    check_classes_free(c1, params.k, "blowup C1");
    check_classes_free(c2, params.k, "blowup C2");

    const Group& h1 = c1.group;
    const Group& h2 = c2.group;
    const Group g = product(h1, h2);
    const std::uint64_t n1 = h1.order_u64();
    const std::uint64_t n2 = h2.order_u64();
    const int palette = params.r1 * params.r2 + params.r3;
    const bool h2_cyclic = h2.is_cyclic_presentation();

    // general-group subtraction table is only needed off the cyclic fast path
    std::vector<std::uint64_t> neg_index;
    if (!h2_cyclic) {
        neg_index.resize(n2);
        for (std::uint64_t i = 0; i < n2; ++i)
            neg_index[i] = h2.index_of(h2.neg(h2.element_at(i)));
    }

    Rng rng(params.seed);
    FlatVerifier verifier(g, palette);
    BlowupResult out{false, Coloring(g, palette), 0, std::nullopt};
    std::vector<std::uint64_t> shifts(n1);

    // addition table for non-cyclic H2, built lazily once
    std::vector<std::uint64_t> add_table;
    if (!h2_cyclic) {
        add_table.resize(n2 * n2);
        for (std::uint64_t a = 0; a < n2; ++a) {
            const Element ea = h2.element_at(a);
            for (std::uint64_t b = 0; b < n2; ++b)
                add_table[a * n2 + b] = h2.index_of(h2.add(ea, h2.element_at(b)));
        }
    }

    while (out.attempts < params.retry_cap) {
        ++out.attempts;
        for (std::uint64_t x = 0; x < n1; ++x) shifts[x] = rng.bounded(n2);

        for (std::uint64_t x = 0; x < n1; ++x) {
            const int c1v = c1.colors[x];
            const std::uint64_t base = x * n2;
            const std::uint64_t s = shifts[x];
            for (std::uint64_t y = 0; y < n2; ++y) {
                std::uint64_t rel;  // index of y - y_x
                if (h2_cyclic) {
                    rel = y >= s ? y - s : y + (n2 - s);
                } else {
                    rel = add_table[y * n2 + neg_index[s]];
                }
                const int c2v = c2.colors[rel];
                const int color = c2v <= params.r2
                                      ? (c1v - 1) * params.r2 + c2v
                                      : params.r1 * params.r2 + (c2v - params.r2);
                out.coloring.colors[base + y] = static_cast<std::uint16_t>(color);
            }
        }

        out.witness = verifier.verify(out.coloring, params.k, params.threads);
        if (!out.witness) {
            out.verified = true;
            return out;
        }
    }
    return out;
}

std::string coloring_content_hash(const Coloring& c) {
    std::uint64_t h = 14695981039346656037ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    for (std::uint64_t f : c.group.factors()) mix(f);
    mix(static_cast<std::uint64_t>(c.palette_size));
    for (std::uint16_t v : c.colors) mix(v);
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

std::string PipelinePlan::to_text() const {
    std::ostringstream os;
    os << "plan.k " << k << "\n"
       << "plan.r " << r << " = " << a << " + 3*" << b << "\n"
       << "plan.eps " << rational_to_string(eps) << "\n"
       << "plan.primes";
    for (std::uint64_t p : primes) os << " " << p;
    os << "\n"
       << "plan.t0 " << t0 << "\n"
       << "plan.tprime " << tprime << "\n"
       << "plan.N " << predicted_n.str() << "\n";
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const StagePlan& st = stages[i];
        os << "stage" << i << ".factor Z/" << st.prime << "^" << st.exponent
           << "Z order " << st.h_order << " colors " << st.colors_added << "\n"
           << "stage" << i << ".gcol "
           << (st.gcol.ok ? "ok" : "FAIL")
           << " (ord " << (st.gcol.ord_ok ? "ok" : "FAIL") << ", degree "
           << (st.gcol.degree_ok ? "ok" : "FAIL") << ", margin "
           << st.gcol.margin.str() << ")\n";
        if (st.synth) os << st.synth->to_text();
    }
    os << "plan.strict_feasible " << (feasible_strict ? "yes" : "no") << "\n";
    return os.str();
}

PipelinePlan plan_pipeline(int k, int r, const Rational& eps,
                           std::optional<std::pair<std::uint64_t, std::uint64_t>>
                               window_override) {
    if (r < 2) throw std::invalid_argument("plan_pipeline: r < 2");
    if (k < 3) throw std::invalid_argument("plan_pipeline: k < 3");
    if (eps <= 0 || eps >= Rational(1, 10))
        throw std::invalid_argument("plan_pipeline: eps outside (0, 1/10)");

    PipelinePlan plan;
    plan.k = k;
    plan.r = r;
    plan.eps = eps;
    const PaletteSplit split = decompose_palette(r);
    plan.a = split.a;
    plan.b = split.b;

    auto window_primes = primes_in_window(k, eps, window_override);
    if (window_primes.size() < static_cast<std::size_t>(split.b + 1)) {
        std::ostringstream os;
        os << "need " << split.b + 1 << " distinct primes but the window holds "
           << window_primes.size() << "; widen it with a window override (lo:hi]";
        throw std::invalid_argument(os.str());
    }
    // largest primes first; p_0 pairs with the base-a exponent
    std::sort(window_primes.rbegin(), window_primes.rend());
    plan.primes.assign(window_primes.begin(),
                       window_primes.begin() + split.b + 1);

    plan.t0 = exponent_t(k, split.a, eps);
    plan.tprime = split.b > 0 ? exponent_t(k, 3, eps) : 0;
    if (plan.t0 < 1 || (split.b > 0 && plan.tprime < 1))
        throw std::invalid_argument("plan_pipeline: exponent formula gives t = 0");

    plan.predicted_n = 1;
    std::uint64_t min_prime_so_far = kInfiniteOrder;
    bool all_ok = true;
    for (int i = 0; i <= split.b; ++i) {
        StagePlan st;
        st.prime = plan.primes[static_cast<std::size_t>(i)];
        st.exponent = i == 0 ? plan.t0 : plan.tprime;
        const BigInt h_order = big_pow(st.prime, st.exponent);
        st.h_order = h_order.convert_to<std::uint64_t>();
        st.colors_added = i == 0 ? split.a : 3;
        st.gcol = check_gcol(h_order, st.colors_added, k, st.prime);
        all_ok = all_ok && st.gcol.ok;
        if (i > 0) {
            const BigInt order_g = plan.predicted_n * h_order;
            st.synth = check_synth(st.prime, st.exponent, min_prime_so_far, k, order_g,
                                   min_prime_so_far);
            all_ok = all_ok && st.synth->cond2 && st.synth->cond3;
        }
        plan.predicted_n *= h_order;
        min_prime_so_far = std::min(min_prime_so_far, st.prime);
        plan.stages.push_back(std::move(st));
    }
    plan.feasible_strict = all_ok;
    return plan;
}

PipelineResult build_pipeline(int k, int r, const Rational& eps, std::uint64_t seed,
                              PipelineMode mode,
                              std::optional<std::pair<std::uint64_t, std::uint64_t>>
                                  window_override,
                              const PipelineOptions& opts) {
    PipelineResult res;
    PipelinePlan plan;
    try {
        plan = plan_pipeline(k, r, eps, window_override);
    } catch (const std::invalid_argument& e) {
        res.status = PipelineResult::Status::infeasible;
        res.message = e.what();
        return res;
    }
    res.plan = plan;
    if (mode == PipelineMode::strict && !plan.feasible_strict) {
        res.status = PipelineResult::Status::infeasible;
        res.message = "strict mode: feasibility conditions fail";
        return res;
    }
    if (plan.predicted_n > BigInt(UINT64_MAX)) {
        res.status = PipelineResult::Status::infeasible;
        res.message = "predicted N exceeds the 64-bit build budget";
        return res;
    }

    Rng master(seed);
    std::ostringstream mt_stats;

    // stage 0: base coloring with a colors
    const Group h0 = Group::cyclic(plan.stages[0].h_order);
    MtResult base = mt_coloring(h0, plan.a, k, master.next(), opts.resample_cap);
    mt_stats << base.resamples;
    if (!base.success()) {
        res.status = PipelineResult::Status::retry_exhausted;
        res.message = "base coloring: resample cap exhausted after " +
                      std::to_string(base.resamples) + " resamples";
        return res;
    }
    Coloring current = std::move(*base.coloring);
    std::uint64_t min_prime = plan.primes[0];

    for (int i = 1; i <= plan.b; ++i) {
        StagePlan& st = plan.stages[static_cast<std::size_t>(i)];
        const Group hi = Group::cyclic(st.h_order);
        MtResult stage_mt = mt_coloring(hi, 3, k, master.next(), opts.resample_cap);
        mt_stats << "," << stage_mt.resamples;
        if (!stage_mt.success()) {
            res.status = PipelineResult::Status::retry_exhausted;
            res.message = "stage " + std::to_string(i) +
                          " coloring: resample cap exhausted";
            return res;
        }
        SparsifyResult spars =
            sparsify_coloring(*stage_mt.coloring, st.prime, st.exponent, k);

        // attach verifier evidence to the stage report
        st.synth = check_synth(st.prime, st.exponent, min_prime, k,
                               BigInt(current.group.order()) * st.h_order, min_prime,
                               coloring_content_hash(current) + "," +
                                   coloring_content_hash(spars.coloring));

        BlowupParams bp;
        bp.r1 = current.palette_size;
        bp.r2 = 1;
        bp.r3 = 3;
        bp.k = k;
        bp.seed = master.next();
        bp.retry_cap = opts.retry_cap;
        bp.q_claim = min_prime;
        bp.threads = opts.threads;
        BlowupResult bl = blowup(current, spars.coloring, bp);
        res.attempts += bl.attempts;
        if (!bl.verified) {
            res.status = PipelineResult::Status::retry_exhausted;
            std::ostringstream os;
            os << "stage " << i << " blow-up: retry cap exhausted after "
               << bl.attempts << " attempts";
            res.message = os.str();
            res.plan = plan;
            return res;
        }
        current = std::move(bl.coloring);
        min_prime = std::min(min_prime, st.prime);
    }
    res.plan = plan;

    // flatten to Z/NZ
    Coloring flat(Group::trivial(), 1);
    if (current.group.is_cyclic_presentation()) {
        flat = current;
    } else {
        CrtMap map(current.group);
        flat = Coloring(map.flat(), current.palette_size);
        for (std::uint64_t i = 0; i < current.colors.size(); ++i)
            flat.colors[map.to_cyclic(current.group.element_at(i))] = current.colors[i];
    }

    auto final_check = find_mono_ap(flat, k, VerifyMode::fast, opts.threads);
    if (final_check) {
        // cannot happen if the CRT map is an isomorphism; treat as a hard bug
        throw std::logic_error("build_pipeline: flattened coloring failed verification");
    }

    Certificate cert;
    cert.n = flat.group.order_u64();
    cert.k = k;
    cert.r = r;
    cert.seed = seed;
    {
        std::ostringstream ps;
        ps << "mode=" << (mode == PipelineMode::strict ? "strict" : "forced")
           << " eps=" << rational_to_string(eps) << " a=" << plan.a << " b=" << plan.b
           << " primes=";
        for (std::size_t i = 0; i < plan.primes.size(); ++i)
            ps << (i ? "," : "") << plan.primes[i];
        ps << " t0=" << plan.t0 << " tprime=" << plan.tprime
           << " mt_resamples=" << mt_stats.str();
        cert.params = ps.str();
    }
    cert.attempts = res.attempts;
    cert.colors = flat.colors;
    cert.verified = true;

    res.status = PipelineResult::Status::verified;
    res.certificate = std::move(cert);
    return res;
}

}  // namespace vdw
