#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vdwforge/group.hpp"
#include "vdwforge/planner.hpp"
#include "vdwforge/rng.hpp"

using namespace vdw;

TEST_CASE("parse_rational") {
    CHECK(parse_rational("0.05") == Rational(1, 20));
    CHECK(parse_rational("1/20") == Rational(1, 20));
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("primes_in_window") {
    CHECK(primes_in_window(100, Rational(1, 20)) == std::vector<std::uint64_t>{97});
    CHECK(primes_in_window(10, Rational(1, 20)).empty());
    CHECK(primes_in_window(5, Rational(1, 20),
                           std::make_pair<std::uint64_t, std::uint64_t>(5, 11)) ==
          std::vector<std::uint64_t>{7, 11});
    // exclusive lower bound: 5 itself is not in (5, 11]
    CHECK(primes_in_window(5, Rational(1, 20),
                           std::make_pair<std::uint64_t, std::uint64_t>(4, 5)) ==
          std::vector<std::uint64_t>{5});
}

TEST_CASE("exponent_t") {
    CHECK(exponent_t(100, 3, Rational(1, 20)) == 21);
    CHECK(exponent_t(5, 2, Rational(1, 20)) == 1);
    // base = k: the log ratio is exactly 1, so t = floor(k (1 - 2 eps))
    CHECK(exponent_t(7, 7, Rational(1, 100)) == 6);
    CHECK(exponent_t(50, 50, Rational(1, 100)) == 49);
    CHECK_THROWS_AS(exponent_t(5, 2, Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("exponent_t floor matches exact big-integer characterization") {
    // k^(t den) <= r^(k(den-2num)) < k^((t+1) den) across a grid
    for (int k : {3, 5, 9, 17, 33, 64, 100}) {
        for (int r : {2, 3, 4, 6, 18}) {
            for (const auto& eps : {Rational(1, 20), Rational(1, 12), Rational(3, 40)}) {
                const unsigned t = exponent_t(k, r, eps);
                const BigInt num = boost::multiprecision::numerator(eps);
                const BigInt den = boost::multiprecision::denominator(eps);
                const std::uint64_t den_u = den.convert_to<std::uint64_t>();
                const BigInt rhs =
                    big_pow(r, (BigInt(k) * (den - 2 * num)).convert_to<std::uint64_t>());
                CHECK(big_pow(k, t * den_u) <= rhs);
                CHECK(big_pow(k, (t + 1) * den_u) > rhs);
            }
        }
    }
}

TEST_CASE("delta_exact") {
    CHECK(delta_exact(3, 2) == Rational(5, 9));
    CHECK(delta_exact(3, 3) == Rational(19, 27));
    CHECK(delta_exact(7, 1) == Rational(1, 7));
    CHECK_THROWS_AS(delta_exact(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(delta_exact(1, 2), std::invalid_argument);
}

TEST_CASE("delta_exact monotone in t and p") {
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL}) {
        for (unsigned t = 1; t < 8; ++t)
            CHECK(delta_exact(p, t) < delta_exact(p, t + 1));
    }
    for (unsigned t = 1; t < 8; ++t) {
        std::uint64_t prev = 2;
        for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
            CHECK(delta_exact(p, t) < delta_exact(prev, t));
            prev = p;
        }
    }
}

TEST_CASE("check_synth cond3 examples") {
    // m = min{Q, k} = 5 in both
    const auto rep1 = check_synth(3, 2, 5, 5, BigInt(9));
    CHECK_FALSE(rep1.cond3);
    CHECK(rep1.cond3_margin == BigInt(9ULL * 9 * 9 * 9 * 9) -
                                   BigInt(81) * 5 * 5 * 5 * 5 * 5);

    const auto rep2 = check_synth(3, 2, 5, 5, BigInt(4));
    CHECK(rep2.cond3);

    CHECK_THROWS_AS(check_synth(3, 0, 5, 5, BigInt(9)), std::invalid_argument);
}

TEST_CASE("check_synth cond1/cond2 evidence semantics") {
    auto rep = check_synth(3, 2, 5, 5, BigInt(4));
    CHECK_FALSE(rep.cond1);  // no evidence attached
    CHECK_FALSE(rep.cond2);  // no min_order supplied

    rep = check_synth(3, 2, 5, 5, BigInt(4), 5, std::string("cafe,beef"));
    CHECK(rep.cond1);
    CHECK(rep.cond2);
    rep = check_synth(3, 2, 7, 5, BigInt(4), 5);
    CHECK_FALSE(rep.cond2);  // claimed Q exceeds the true minimum order
    CHECK(rep.to_text().find("synth.delta 5/9") != std::string::npos);
}

TEST_CASE("check_gcol") {
    const auto a = check_gcol(BigInt(101), 4, 5, 101);
    CHECK_FALSE(a.ok);
    CHECK(a.ord_ok);
    CHECK_FALSE(a.degree_ok);

    const auto b = check_gcol(BigInt(1), 2, 3, kInfiniteOrder);
    CHECK(b.ok);

    const auto c = check_gcol(big_pow(3, 15), 3, 20, 23);
    CHECK(c.ord_ok);
    CHECK_FALSE(c.degree_ok);
    CHECK_FALSE(c.ok);
    CHECK(c.margin == big_pow(3, 19) - BigInt(4) * 400 * big_pow(3, 15));
}

TEST_CASE("decompose_palette") {
    CHECK(decompose_palette(5).a == 2);
    CHECK(decompose_palette(5).b == 1);
    CHECK(decompose_palette(2).a == 2);
    CHECK(decompose_palette(2).b == 0);
    CHECK(decompose_palette(8).a == 2);
    CHECK(decompose_palette(8).b == 2);
    CHECK(decompose_palette(3).a == 3);
    CHECK(decompose_palette(4).a == 4);
    CHECK_THROWS_AS(decompose_palette(1), std::invalid_argument);
}

TEST_CASE("bound_table") {
    const BoundTable t5 = bound_table(5, 3, 6);
    CHECK(t5.a == 2);
    CHECK(t5.b == 1);
    CHECK(t5.blowup_base == 6);
    CHECK(t5.improves);
    CHECK(t5.rows.size() == 4);
    CHECK(t5.rows[0].erdos_lovasz == Rational(25, 12));

    const BoundTable t2 = bound_table(2, 3, 3);
    CHECK(t2.blowup_base == 2);
    CHECK_FALSE(t2.improves);

    const BoundTable t8 = bound_table(8, 3, 3);
    CHECK(t8.blowup_base == 18);
    CHECK(t8.improves);
}

TEST_CASE("cond3 big-integer verdict agrees with long-double evaluation") {
    Rng rng(4242);
    int outside_guard = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13}[rng.bounded(6)];
        const unsigned t = 1 + static_cast<unsigned>(rng.bounded(6));
        const std::uint64_t q = 2 + rng.bounded(12);
        const int k = 3 + static_cast<int>(rng.bounded(10));
        const BigInt order_g(1 + rng.bounded(100000));
        const auto rep = check_synth(p, t, q, k, order_g);

        const long double delta =
            1.0L - std::pow(1.0L - 1.0L / static_cast<long double>(p),
                            static_cast<long double>(t));
        const std::uint64_t m = std::min<std::uint64_t>(q, static_cast<std::uint64_t>(k));
        const long double lhs = -static_cast<long double>(m) * std::log(delta);
        const long double rhs = 2.0L * std::log(order_g.convert_to<long double>());
        if (std::fabs(static_cast<double>(lhs - rhs)) < 1e-9) continue;  // guard band
        ++outside_guard;
        CHECK(rep.cond3 == (lhs >= rhs));
    }
    CHECK(outside_guard > 900);
}
