#include "vdwforge/planner.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vdwforge/group.hpp"

namespace vdw {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const BigInt num(text.substr(0, slash));
        const BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
        return Rational(num, den);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(BigInt(text));
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if (frac.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("parse_rational: bad decimal " + text);
    const bool negative = !whole.empty() && whole[0] == '-';
    BigInt scaled = whole.empty() || whole == "-" ? BigInt(0) : BigInt(whole);
    BigInt den = 1;
    for (char c : frac) {
        scaled = scaled * 10 + (negative ? -(c - '0') : (c - '0'));
        den *= 10;
    }
    return Rational(scaled, den);
}

std::string rational_to_string(const Rational& q) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(q);
    if (boost::multiprecision::denominator(q) != 1)
        os << "/" << boost::multiprecision::denominator(q);
    return os.str();
}

std::vector<std::uint64_t> primes_in_window(
    int k, const Rational& eps,
    std::optional<std::pair<std::uint64_t, std::uint64_t>> window_override) {
    std::uint64_t hi;
    // exclusive lower bound as an exact rational
    Rational lo_bound;
    if (window_override) {
        lo_bound = Rational(window_override->first);
        hi = window_override->second;
    } else {
        if (k < 3) throw std::invalid_argument("primes_in_window: k < 3");
        lo_bound = (Rational(1) - eps) * k;
        hi = static_cast<std::uint64_t>(k);
    }
    std::vector<std::uint64_t> out;
    if (hi < 2) return out;
    // deterministic sieve of Eratosthenes up to hi
    std::vector<char> composite(hi + 1, 0);
    for (std::uint64_t i = 2; i * i <= hi; ++i) {
        if (composite[i]) continue;
        for (std::uint64_t j = i * i; j <= hi; j += i) composite[j] = 1;
    }
    for (std::uint64_t p = 2; p <= hi; ++p) {
        if (!composite[p] && Rational(p) > lo_bound) out.push_back(p);
    }
    return out;
}

unsigned exponent_t(int k, int base, const Rational& eps) {
    if (k < 3) throw std::invalid_argument("exponent_t: k < 3");
    if (base < 2) throw std::invalid_argument("exponent_t: base < 2");
    if (eps <= 0 || eps >= Rational(1, 10))
        throw std::invalid_argument("exponent_t: eps outside (0, 1/10)");

    const BigInt num = boost::multiprecision::numerator(eps);
    const BigInt den = boost::multiprecision::denominator(eps);
    // exponent factor k(1-2eps) = k (den - 2 num) / den, positive since eps < 1/2
    const BigInt top = BigInt(k) * (den - 2 * num);

    const double v = static_cast<double>(BigInt(top).convert_to<double>() /
                                         den.convert_to<double>()) *
                     std::log(static_cast<double>(base)) /
                     std::log(static_cast<double>(k));
    long long t = static_cast<long long>(std::floor(v));
    if (t < 0) t = 0;

    // t is correct iff k^(t den) <= base^top < k^((t+1) den). Confirm by exact
    // powers when the operands stay within budget; otherwise trust the float
    // unless it sits inside the guard band (then widen the confirmation cap).
    const double guard = std::fabs(v - std::llround(v));
    const double result_bits =
        static_cast<double>((t + 1)) * den.convert_to<double>() *
        std::log2(static_cast<double>(k));
    const double cap = guard < 1e-9 ? 1e7 : 1e6;
    if (result_bits <= cap) {
        const std::uint64_t den_u = den.convert_to<std::uint64_t>();
        const std::uint64_t top_u = top.convert_to<std::uint64_t>();
        const BigInt rhs = big_pow(base, top_u);
        while (t > 0 && big_pow(k, static_cast<std::uint64_t>(t) * den_u) > rhs) --t;
        while (big_pow(k, static_cast<std::uint64_t>(t + 1) * den_u) <= rhs) ++t;
    }
    return static_cast<unsigned>(t);
}

Rational delta_exact(std::uint64_t p, unsigned t) {
    if (p < 2) throw std::invalid_argument("delta_exact: p < 2");
    if (t < 1) throw std::invalid_argument("delta_exact: t < 1");
    const BigInt pt = big_pow(p, t);
    const BigInt qt = big_pow(BigInt(p) - 1, t);
    return Rational(pt - qt, pt);
}

FeasibilityReport check_synth(std::uint64_t p, unsigned t, std::uint64_t q, int k,
                              const BigInt& order_g,
                              std::optional<std::uint64_t> min_order_h1,
                              std::optional<std::string> kappa_evidence) {
    if (p < 2 || k < 2 || q < 1 || order_g < 1)
        throw std::invalid_argument("check_synth: invalid inputs");
    if (t < 1) throw std::invalid_argument("check_synth: t = 0 rejected (delta would be 0)");
    FeasibilityReport rep;
    rep.p = p;
    rep.t = t;
    rep.q = q;
    rep.k = k;
    rep.order_g = order_g;
    rep.min_order_h1 = min_order_h1;
    rep.kappa_evidence = std::move(kappa_evidence);
    rep.delta = delta_exact(p, t);

    rep.cond1 = rep.kappa_evidence.has_value();
    rep.cond2 = min_order_h1.has_value() && *min_order_h1 >= q;

    // delta^-m >= |G|^2  <=>  (p^t)^m >= |G|^2 (p^t - (p-1)^t)^m,  m = min{Q,k}
    const std::uint64_t m =
        std::min<std::uint64_t>(q, static_cast<std::uint64_t>(k));
    const BigInt pt = big_pow(p, t);
    const BigInt tail = pt - big_pow(BigInt(p) - 1, t);
    const BigInt lhs = big_pow(pt, m);
    const BigInt rhs = order_g * order_g * big_pow(tail, m);
    rep.cond3_margin = lhs - rhs;
    rep.cond3 = rep.cond3_margin >= 0;
    return rep;
}

std::string FeasibilityReport::to_text() const {
    std::ostringstream os;
    os << "synth.p " << p << "\n"
       << "synth.t " << t << "\n"
       << "synth.Q " << q << "\n"
       << "synth.k " << k << "\n"
       << "synth.order_G " << order_g.str() << "\n"
       << "synth.min_order_H1 "
       << (min_order_h1 ? (*min_order_h1 == kInfiniteOrder
                               ? std::string("inf")
                               : std::to_string(*min_order_h1))
                        : std::string("unknown"))
       << "\n"
       << "synth.delta " << rational_to_string(delta) << "\n"
       << "synth.cond1_kappa_evidence "
       << (cond1 ? *kappa_evidence : std::string("none")) << "\n"
       << "synth.cond2_ord " << (cond2 ? "ok" : "FAIL") << "\n"
       << "synth.cond3_union_bound " << (cond3 ? "ok" : "FAIL") << "\n"
       << "synth.cond3_margin " << cond3_margin.str() << "\n";
    return os.str();
}

GcolCheck check_gcol(const BigInt& order_g, int r, int k, std::uint64_t min_order) {
    if (r < 2 || k < 3) throw std::invalid_argument("check_gcol: need r >= 2, k >= 3");
    if (order_g < 1) throw std::invalid_argument("check_gcol: |G| < 1");
    GcolCheck out;
    out.margin = big_pow(r, static_cast<std::uint64_t>(k - 1));
    if (order_g == 1) {
        // no non-trivial progressions exist; both hypotheses are moot
        out.ok = out.ord_ok = out.degree_ok = true;
        return out;
    }
    out.ord_ok = min_order >= static_cast<std::uint64_t>(k);
    const BigInt lhs = BigInt(4) * k * k * order_g;
    out.margin -= lhs;
    out.degree_ok = out.margin >= 0;
    out.ok = out.ord_ok && out.degree_ok;
    return out;
}

PaletteSplit decompose_palette(int r) {
    if (r < 2) throw std::invalid_argument("decompose_palette: r < 2");
    PaletteSplit s;
    s.a = (r - 2) % 3 + 2;
    s.b = (r - s.a) / 3;
    return s;
}

BoundTable bound_table(int r, int k_lo, int k_hi) {
    if (k_lo > k_hi) throw std::invalid_argument("bound_table: empty k range");
    BoundTable t;
    t.r = r;
    const PaletteSplit s = decompose_palette(r);
    t.a = s.a;
    t.b = s.b;
    t.blowup_base = BigInt(s.a) * big_pow(3, static_cast<std::uint64_t>(s.b));
    t.improves = t.blowup_base > r;
    for (int k = k_lo; k <= k_hi; ++k) {
        if (k < 1) continue;
        BoundRow row;
        row.k = k;
        row.erdos_lovasz =
            Rational(big_pow(r, static_cast<std::uint64_t>(k - 1)), BigInt(4) * k);
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace vdw
