#pragma once

#include "stairtile/error.hpp"

#include <cstdint>
#include <string>

namespace stairtile {

// Exact scalar (a + b*sqrt(radicand)) / den with int64 components, den > 0,
// radicand 0 for rationals. Large enough for window coordinates and squared
// distances; operations fail loudly if a component would overflow.
struct Quad {
    int64_t a = 0;
    int64_t b = 0;
    int64_t den = 1;
    int64_t radicand = 0;

    static Quad rational(int64_t num, int64_t den = 1);
    static Quad root_multiple(int64_t b, int64_t radicand, int64_t den = 1); // b*sqrt(r)/den
    static Quad make(int64_t a, int64_t b, int64_t radicand, int64_t den);

    bool is_rational() const { return b == 0; }
    double to_double() const;
    std::string to_string() const;

    friend bool operator==(const Quad&, const Quad&) = default;
};

Quad operator+(const Quad& x, const Quad& y);
Quad operator-(const Quad& x, const Quad& y);
Quad operator-(const Quad& x);
Quad operator*(const Quad& x, const Quad& y);

// Sign of x - y, exact (cross-multiplied integer tests, no floats).
int quad_cmp(const Quad& x, const Quad& y);
inline bool quad_lt(const Quad& x, const Quad& y) { return quad_cmp(x, y) < 0; }
inline bool quad_le(const Quad& x, const Quad& y) { return quad_cmp(x, y) <= 0; }

int sign(const Quad& x);

// Exact floor; double estimate corrected by exact comparisons.
int64_t floor_int(const Quad& x);

} // namespace stairtile
