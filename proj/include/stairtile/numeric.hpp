#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace stairtile {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int ipow(Int base, unsigned exp) {
    Int r = 1;
    while (exp) {
        if (exp & 1u) r *= base;
        base *= base;
        exp >>= 1u;
    }
    return r;
}

inline Int pow3(unsigned m) { return ipow(3, m); }
inline Int pow9(unsigned m) { return ipow(9, m); }

inline Rat ipowr(Rat base, unsigned exp) {
    Rat r = 1;
    while (exp) {
        if (exp & 1u) r *= base;
        base *= base;
        exp >>= 1u;
    }
    return r;
}

inline Int numerator(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int denominator(const Rat& r) { return boost::multiprecision::denominator(r); }

// "p/q" with q omitted when 1; the exact-value string used in JSON and CSV output.
std::string rat_to_string(const Rat& r);

// Exact decimal rendering, round-half-away-from-zero at `digits` fractional digits.
std::string rat_to_decimal(const Rat& r, unsigned digits = 6);

// Accepts "p/q", integers, and plain decimals ("0.25", "-1.5"). Throws Error(BadParameters).
Rat parse_rational(const std::string& text);

double rat_to_double(const Rat& r);

} // namespace stairtile
