#pragma once

#include <cstdint>
#include <vector>

#include "vdwforge/bigint.hpp"

namespace vdw {

// Sentinel for the minimum non-identity element order of the trivial group
// (no non-identity elements exist, so every "ord >= Q" test passes).
inline constexpr std::uint64_t kInfiniteOrder = UINT64_MAX;

// A group element is its tuple of residues, coords[i] in [0, factors[i]).
using Element = std::vector<std::uint64_t>;

// A finite abelian group presented as a product of cyclic factors
// Z/N_1 x ... x Z/N_m. Value semantics; immutable after construction;
// two groups compare equal iff their factor sequences match.
class Group {
public:
    explicit Group(std::vector<std::uint64_t> factors);

    static Group cyclic(std::uint64_t n);   // rejects n = 0
    static Group trivial() { return cyclic(1); }

    const std::vector<std::uint64_t>& factors() const { return factors_; }
    std::size_t factor_count() const { return factors_.size(); }
    const BigInt& order() const { return order_; }

    // Group order as a machine word; throws when the order exceeds the
    // enumerable budget (all element enumeration goes through this).
    std::uint64_t order_u64() const;
    bool enumerable() const { return fits_u64_; }

    // Smallest order of a non-identity element; kInfiniteOrder for the
    // trivial group. For products of cyclic groups this is the smallest
    // prime dividing any factor > 1.
    std::uint64_t min_order() const { return min_order_; }
    bool is_trivial() const { return min_order_ == kInfiniteOrder; }
    bool is_cyclic_presentation() const { return factors_.size() == 1; }

    // -- canonical enumeration: mixed-radix over coords, first factor most
    //    significant (lexicographic order of coordinate tuples) --
    std::uint64_t index_of(const Element& g) const;
    Element element_at(std::uint64_t index) const;
    Element zero() const { return Element(factors_.size(), 0); }
    bool is_zero(const Element& g) const;

    // -- element arithmetic, componentwise modulo the factors --
    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const;
    Element neg(const Element& a) const;
    Element scalar_mul(std::uint64_t s, const Element& a) const;

    // Projection onto a contiguous block of factors: a homomorphism onto
    // the corresponding sub-product.
    Element project(const Element& g, std::size_t first, std::size_t count) const;
    Group sub_product(std::size_t first, std::size_t count) const;

    bool operator==(const Group& other) const { return factors_ == other.factors_; }
    bool operator!=(const Group& other) const { return !(*this == other); }

    std::string describe() const;  // "Z/3Z x Z/5Z"

private:
    void check_element(const Element& g) const;

    std::vector<std::uint64_t> factors_;
    BigInt order_;
    std::uint64_t order_u64_ = 0;
    bool fits_u64_ = false;
    std::uint64_t min_order_ = kInfiniteOrder;
};

Group product(const Group& g1, const Group& g2);

// Smallest prime factor of n (n for primes, kInfiniteOrder when n = 1).
std::uint64_t smallest_prime_factor(std::uint64_t n);
bool is_prime_u64(std::uint64_t n);

// The isomorphism Z/N_1Z x ... x Z/N_mZ == Z/NZ for pairwise coprime
// factors, built by folding the two-factor Chinese remainder map.
class CrtMap {
public:
    explicit CrtMap(const Group& source);  // rejects non-coprime factor pairs

    const Group& source() const { return source_; }
    const Group& flat() const { return flat_; }

    std::uint64_t to_cyclic(const Element& g) const;
    Element from_cyclic(std::uint64_t residue) const;

private:
    Group source_;
    Group flat_;
    std::vector<std::uint64_t> coeffs_;  // residue = sum coords[i]*coeffs_[i] mod N
};

}  // namespace vdw
