#include "vdwforge/group.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace vdw {

namespace {

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    // a, b < n; avoids overflow for n close to 2^64
    return a >= n - b && b != 0 ? a - (n - b) : a + b;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % n);
}

// Extended gcd; returns g and x with a*x == g (mod m), all in int128 to
// stay exact for full-range u64 inputs.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
    using I = __int128;
    I old_r = static_cast<I>(a % m), r = static_cast<I>(m);
    I old_s = 1, s = 0;
    while (r != 0) {
        I q = old_r / r;
        I tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw std::invalid_argument("inverse_mod: not coprime");
    I res = old_s % static_cast<I>(m);
    if (res < 0) res += static_cast<I>(m);
    return static_cast<std::uint64_t>(res);
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::uint64_t d = 5; d <= n / d; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

std::uint64_t smallest_prime_factor(std::uint64_t n) {
    if (n <= 1) return kInfiniteOrder;
    if (n % 2 == 0) return 2;
    if (n % 3 == 0) return 3;
    for (std::uint64_t d = 5; d <= n / d; d += 6) {
        if (n % d == 0) return d;
        if (n % (d + 2) == 0) return d + 2;
    }
    return n;  // prime
}

Group::Group(std::vector<std::uint64_t> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw std::invalid_argument("Group: factor list empty");
    order_ = 1;
    for (std::uint64_t f : factors_) {
        if (f == 0) throw std::invalid_argument("Group: factor 0 rejected");
        order_ *= f;
        min_order_ = std::min(min_order_, smallest_prime_factor(f));
    }
    if (order_ <= BigInt(UINT64_MAX)) {
        order_u64_ = static_cast<std::uint64_t>(order_);
        fits_u64_ = true;
    }
}

Group Group::cyclic(std::uint64_t n) { return Group(std::vector<std::uint64_t>{n}); }

std::uint64_t Group::order_u64() const {
    if (!fits_u64_) throw std::overflow_error("Group: order exceeds 64-bit enumeration budget");
    return order_u64_;
}

void Group::check_element(const Element& g) const {
    if (g.size() != factors_.size())
        throw std::invalid_argument("Group: coordinate count mismatch");
}

std::uint64_t Group::index_of(const Element& g) const {
    check_element(g);
    (void)order_u64();
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        idx = idx * factors_[i] + g[i] % factors_[i];
    }
    return idx;
}

Element Group::element_at(std::uint64_t index) const {
    if (index >= order_u64()) throw std::out_of_range("Group: element index out of range");
    Element g(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
        g[i] = index % factors_[i];
        index /= factors_[i];
    }
    return g;
}

bool Group::is_zero(const Element& g) const {
    check_element(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] % factors_[i] != 0) return false;
    }
    return true;
}

Element Group::add(const Element& a, const Element& b) const {
    check_element(a);
    check_element(b);
    Element out(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        out[i] = add_mod(a[i] % factors_[i], b[i] % factors_[i], factors_[i]);
    }
    return out;
}

Element Group::sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

Element Group::neg(const Element& a) const {
    check_element(a);
    Element out(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const std::uint64_t v = a[i] % factors_[i];
        out[i] = v == 0 ? 0 : factors_[i] - v;
    }
    return out;
}

Element Group::scalar_mul(std::uint64_t s, const Element& a) const {
    check_element(a);
    Element out(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        out[i] = mul_mod(s % factors_[i], a[i] % factors_[i], factors_[i]);
    }
    return out;
}

Element Group::project(const Element& g, std::size_t first, std::size_t count) const {
    check_element(g);
    if (first + count > factors_.size() || count == 0)
        throw std::out_of_range("Group: projection block out of range");
    return Element(g.begin() + static_cast<std::ptrdiff_t>(first),
                   g.begin() + static_cast<std::ptrdiff_t>(first + count));
}

Group Group::sub_product(std::size_t first, std::size_t count) const {
    if (first + count > factors_.size() || count == 0)
        throw std::out_of_range("Group: projection block out of range");
    return Group(std::vector<std::uint64_t>(
        factors_.begin() + static_cast<std::ptrdiff_t>(first),
        factors_.begin() + static_cast<std::ptrdiff_t>(first + count)));
}

std::string Group::describe() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) os << " x ";
        os << "Z/" << factors_[i] << "Z";
    }
    return os.str();
}

Group product(const Group& g1, const Group& g2) {
    std::vector<std::uint64_t> factors = g1.factors();
    factors.insert(factors.end(), g2.factors().begin(), g2.factors().end());
    return Group(std::move(factors));
}

CrtMap::CrtMap(const Group& source)
    : source_(source), flat_(Group::trivial()) {
    const auto& fs = source.factors();
    for (std::size_t i = 0; i < fs.size(); ++i) {
        for (std::size_t j = i + 1; j < fs.size(); ++j) {
            if (std::gcd(fs[i], fs[j]) != 1) {
                std::ostringstream os;
                os << "crt_flatten: factors " << fs[i] << " (index " << i << ") and "
                   << fs[j] << " (index " << j << ") are not coprime";
                throw std::invalid_argument(os.str());
            }
        }
    }
    const std::uint64_t n = source.order_u64();

    // Fold the two-factor map: with modulus M accumulated so far and next
    // factor f, (a mod M, b mod f) |-> a*alpha + b*beta mod M*f where
    // alpha = f*(f^-1 mod M), beta = M*(M^-1 mod f).
    coeffs_.assign(fs.size(), 0);
    std::uint64_t m = fs[0];
    coeffs_[0] = 1 % m;
    for (std::size_t i = 1; i < fs.size(); ++i) {
        const std::uint64_t f = fs[i];
        const std::uint64_t nm = m * f;  // within u64 by the order check above
        std::uint64_t alpha = 1 % nm, beta = 0;
        if (m > 1) alpha = mul_mod(f % nm, inverse_mod(f, m), nm);
        if (f > 1) beta = mul_mod(m % nm, inverse_mod(m, f), nm);
        for (std::size_t j = 0; j < i; ++j) coeffs_[j] = mul_mod(coeffs_[j], alpha, nm);
        coeffs_[i] = beta;
        m = nm;
    }
    flat_ = Group::cyclic(n);
}

std::uint64_t CrtMap::to_cyclic(const Element& g) const {
    if (g.size() != source_.factor_count())
        throw std::invalid_argument("CrtMap: coordinate count mismatch");
    const std::uint64_t n = flat_.factors()[0];
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        acc = add_mod(acc, mul_mod(g[i] % source_.factors()[i], coeffs_[i], n), n);
    }
    return acc;
}

Element CrtMap::from_cyclic(std::uint64_t residue) const {
    const std::uint64_t n = flat_.factors()[0];
    residue %= n;
    Element g(source_.factor_count());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = residue % source_.factors()[i];
    return g;
}

}  // namespace vdw
