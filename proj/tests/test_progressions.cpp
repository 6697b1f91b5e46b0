#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "vdwforge/progressions.hpp"
#include "vdwforge/rng.hpp"

using namespace vdw;

namespace {

Coloring random_coloring(const Group& g, int r, Rng& rng) {
    Coloring c(g, r);
    for (auto& v : c.colors)
        v = static_cast<std::uint16_t>(1 + rng.bounded(static_cast<std::uint64_t>(r)));
    return c;
}

std::set<Element> as_set(const std::vector<Element>& v) {
    return std::set<Element>(v.begin(), v.end());
}

}  // namespace

TEST_CASE("make_ap") {
    const Group g9 = Group::cyclic(9);
    const auto ap = make_ap(g9, {1}, {3}, 3);
    CHECK(as_set(ap.distinct) == std::set<Element>{{1}, {4}, {7}});
    CHECK(ap.sequence.size() == 3);

    const Group g6 = Group::cyclic(6);
    const auto wrap = make_ap(g6, {0}, {2}, 4);
    CHECK(wrap.sequence.size() == 4);
    CHECK(as_set(wrap.distinct) == std::set<Element>{{0}, {2}, {4}});

    const auto triv = make_ap(g9, {5}, {0}, 4);
    CHECK(as_set(triv.distinct) == std::set<Element>{{5}});
}

TEST_CASE("is_k_ap_free") {
    const Group g9 = Group::cyclic(9);
    CHECK(is_k_ap_free(g9, {{4}, {5}, {7}, {8}}, 3).free);

    const auto hit = is_k_ap_free(g9, {{1}, {2}, {3}}, 3);
    CHECK_FALSE(hit.free);
    REQUIRE(hit.witness.has_value());
    CHECK(hit.witness->start == Element{1});
    CHECK(hit.witness->diff == Element{1});

    CHECK(is_k_ap_free(g9, {}, 3).free);
    CHECK_THROWS_AS(is_k_ap_free(g9, {}, 1), std::invalid_argument);
}

TEST_CASE("find_mono_ap canonical witnesses") {
    const Group g9 = Group::cyclic(9);
    Coloring constant(g9, 1);
    const auto w = find_mono_ap(constant, 3, VerifyMode::naive);
    REQUIRE(w.has_value());
    CHECK(*w->color == 1);
    CHECK(w->start == Element{0});
    CHECK(w->diff == Element{1});

    const Group g5 = Group::cyclic(5);
    Coloring c(g5, 2, {1, 1, 2, 2, 2});
    const auto w3 = find_mono_ap(c, 3, VerifyMode::naive);
    REQUIRE(w3.has_value());
    CHECK(*w3->color == 2);
    CHECK(w3->start == Element{2});
    CHECK(w3->diff == Element{1});

    CHECK_FALSE(find_mono_ap(c, 4, VerifyMode::naive).has_value());
    CHECK_FALSE(find_mono_ap(c, 4, VerifyMode::fast).has_value());
}

TEST_CASE("k = 2 degenerate case: witness iff some class has two elements") {
    const Group g5 = Group::cyclic(5);
    Coloring distinct(g5, 5, {1, 2, 3, 4, 5});
    CHECK_FALSE(find_mono_ap(distinct, 2, VerifyMode::naive).has_value());
    CHECK_FALSE(find_mono_ap(distinct, 2, VerifyMode::fast).has_value());

    Coloring paired(g5, 4, {1, 1, 2, 3, 4});
    CHECK(find_mono_ap(paired, 2, VerifyMode::naive).has_value());
    CHECK(find_mono_ap(paired, 2, VerifyMode::fast).has_value());
}

TEST_CASE("fast/naive verdict agreement: exhaustive small battery") {
    for (std::uint64_t n = 1; n <= 30; ++n) {
        const Group g = Group::cyclic(n);
        Rng rng(n);
        std::vector<Coloring> battery;
        battery.push_back(Coloring(g, 1));  // constant
        {
            Coloring stripes(g, 2);
            for (std::uint64_t i = 0; i < n; ++i)
                stripes.colors[i] = static_cast<std::uint16_t>(1 + i % 2);
            battery.push_back(stripes);
        }
        for (int t = 0; t < 3; ++t)
            battery.push_back(random_coloring(g, 2 + t, rng));
        for (const auto& c : battery) {
            for (int k = 2; k <= 5; ++k) {
                const bool naive = find_mono_ap(c, k, VerifyMode::naive).has_value();
                const bool fast = find_mono_ap(c, k, VerifyMode::fast).has_value();
                CHECK(naive == fast);
                // canonical helper must match the naive witness exactly
                const auto wn = find_mono_ap(c, k, VerifyMode::naive);
                const auto wc = find_mono_ap_canonical(c, k);
                CHECK(wn.has_value() == wc.has_value());
                if (wn && wc) {
                    CHECK(wn->start == wc->start);
                    CHECK(wn->diff == wc->diff);
                    CHECK(*wn->color == *wc->color);
                }
            }
        }
    }
}

TEST_CASE("fast/naive verdict agreement: random instances") {
    Rng rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const std::uint64_t n = 2 + rng.bounded(199);
        const Group g = Group::cyclic(n);
        const int r = 2 + static_cast<int>(rng.bounded(4));
        const Coloring c = random_coloring(g, r, rng);
        const int k = 3 + static_cast<int>(rng.bounded(3));
        CHECK(find_mono_ap(c, k, VerifyMode::naive).has_value() ==
              find_mono_ap(c, k, VerifyMode::fast).has_value());
    }
}

TEST_CASE("reversal symmetry: a witness with difference d yields one with -d") {
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const std::uint64_t n = 4 + rng.bounded(60);
        const Group g = Group::cyclic(n);
        const Coloring c = random_coloring(g, 2, rng);
        const auto w = find_mono_ap(c, 3, VerifyMode::naive);
        if (!w) continue;
        const Element rev_start =
            g.add(w->start, g.scalar_mul(static_cast<std::uint64_t>(w->k - 1), w->diff));
        const Element rev_diff = g.neg(w->diff);
        CHECK_FALSE(g.is_zero(rev_diff));
        Element cur = rev_start;
        bool mono = true;
        for (int j = 0; j < w->k; ++j) {
            if (c.color_of(cur) != *w->color) mono = false;
            cur = g.add(cur, rev_diff);
        }
        CHECK(mono);
    }
}

TEST_CASE("monotonicity: k-AP-free colorings are k'-AP-free for k' >= k") {
    Rng rng(5);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 40; ++trial) {
        const std::uint64_t n = 5 + rng.bounded(40);
        const Group g = Group::cyclic(n);
        const int r = 3 + static_cast<int>(rng.bounded(3));
        const Coloring c = random_coloring(g, r, rng);
        for (int k = 3; k <= 5; ++k) {
            if (!find_mono_ap(c, k, VerifyMode::fast).has_value()) {
                CHECK_FALSE(find_mono_ap(c, k + 1, VerifyMode::fast).has_value());
                CHECK_FALSE(find_mono_ap(c, k + 2, VerifyMode::fast).has_value());
                ++checked;
                break;
            }
        }
    }
    CHECK(checked >= 40);
}

TEST_CASE("subset closure of k-AP-free sets") {
    Rng rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const std::uint64_t n = 5 + rng.bounded(30);
        const Group g = Group::cyclic(n);
        // grow a random free set greedily
        std::vector<Element> s;
        for (std::uint64_t step = 0; step < n; ++step) {
            Element cand{rng.bounded(n)};
            if (std::find(s.begin(), s.end(), cand) != s.end()) continue;
            s.push_back(cand);
            if (!is_k_ap_free(g, s, 3).free) s.pop_back();
        }
        REQUIRE(is_k_ap_free(g, s, 3).free);
        for (int sub = 0; sub < 5; ++sub) {
            std::vector<Element> subset;
            for (const auto& e : s)
                if (rng.bounded(2)) subset.push_back(e);
            CHECK(is_k_ap_free(g, subset, 3).free);
        }
    }
}

TEST_CASE("product groups use the naive path and agree after flattening") {
    Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const Group g = product(Group::cyclic(4), Group::cyclic(9));
        const Coloring c = random_coloring(g, 3, rng);
        const auto naive = find_mono_ap(c, 3, VerifyMode::naive);
        const auto fast = find_mono_ap(c, 3, VerifyMode::fast);  // falls back
        CHECK(naive.has_value() == fast.has_value());

        // flatten through the CRT permutation; verdicts must carry over
        const CrtMap map(g);
        Coloring flat(map.flat(), 3);
        for (std::uint64_t i = 0; i < g.order_u64(); ++i)
            flat.colors[map.to_cyclic(g.element_at(i))] = c.colors[i];
        CHECK(find_mono_ap(flat, 3, VerifyMode::fast).has_value() == naive.has_value());
    }
}

TEST_CASE("homomorphism preserves progressions under projection") {
    Rng rng(55);
    const Group g = product(Group::cyclic(6), Group::cyclic(10));
    for (int trial = 0; trial < 200; ++trial) {
        const Element x{rng.bounded(6), rng.bounded(10)};
        const Element d{rng.bounded(6), rng.bounded(10)};
        const int k = 2 + static_cast<int>(rng.bounded(5));
        const auto ap = make_ap(g, x, d, k);
        const std::size_t block = rng.bounded(2);
        const Group sub = g.sub_product(block, 1);
        const auto projected_ap =
            make_ap(sub, g.project(x, block, 1), g.project(d, block, 1), k);
        std::set<Element> lhs;
        for (const auto& e : ap.distinct) lhs.insert(g.project(e, block, 1));
        CHECK(lhs == as_set(projected_ap.distinct));
    }
}

TEST_CASE("parallel verifier matches single-threaded, witness included") {
    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint64_t n = 100 + rng.bounded(500);
        const Group g = Group::cyclic(n);
        const Coloring c = random_coloring(g, 3, rng);
        for (int k : {3, 5, 9}) {
            const auto w1 = find_mono_ap(c, k, VerifyMode::fast, 1);
            const auto w4 = find_mono_ap(c, k, VerifyMode::fast, 4);
            CHECK(w1.has_value() == w4.has_value());
            if (w1 && w4) {
                CHECK(w1->start == w4->start);
                CHECK(w1->diff == w4->diff);
                CHECK(*w1->color == *w4->color);
            }
        }
    }
}

TEST_CASE("coloring validation") {
    const Group g = Group::cyclic(5);
    CHECK_THROWS_AS(Coloring(g, 2, {1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Coloring(g, 2, {1, 1, 3, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Coloring(g, 2, {0, 1, 1, 1, 1}), std::invalid_argument);
}
