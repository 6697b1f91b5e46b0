#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace vdw {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(const BigInt& base, std::uint64_t exp) {
    BigInt acc = 1;
    BigInt b = base;
    while (exp) {
        if (exp & 1) acc *= b;
        b *= b;
        exp >>= 1;
    }
    return acc;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

// Parses a decimal or fraction literal ("0.05", "1/20", "3") into an exact rational.
Rational parse_rational(const std::string& text);

std::string rational_to_string(const Rational& q);

}  // namespace vdw
