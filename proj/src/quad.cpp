#include "stairtile/quad.hpp"

#include <cmath>
#include <numeric>

namespace stairtile {

namespace {

using I128 = __int128;

int64_t checked_narrow(I128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
        fail(ErrorKind::BadParameters, "quadratic-field component overflow");
    return static_cast<int64_t>(v);
}

// Folds perfect-square radicands into the rational part so that representations
// stay canonical (sqrt(36) never survives as a radical).
Quad normalized(I128 a, I128 b, I128 den, int64_t radicand) {
    if (den == 0) fail(ErrorKind::BadParameters, "zero denominator");
    if (radicand < 0) fail(ErrorKind::BadParameters, "negative radicand");
    if (den < 0) { den = -den; a = -a; b = -b; }
    if (radicand > 0 && b != 0) {
        auto root = static_cast<int64_t>(std::llround(std::sqrt(double(radicand))));
        while (root * root > radicand) --root;
        while ((root + 1) * (root + 1) <= radicand) ++root;
        if (root * root == radicand) {
            a += b * root;
            b = 0;
        }
    }
    if (b == 0) radicand = 0;
    I128 g = std::gcd(std::gcd(a < 0 ? -a : a, b < 0 ? -b : b), den);
    if (g > 1) { a /= g; b /= g; den /= g; }
    Quad q;
    q.a = checked_narrow(a);
    q.b = checked_narrow(b);
    q.den = checked_narrow(den);
    q.radicand = radicand;
    return q;
}

int64_t common_radicand(const Quad& x, const Quad& y) {
    if (x.radicand == 0) return y.radicand;
    if (y.radicand == 0 || x.radicand == y.radicand) return x.radicand;
    fail(ErrorKind::BadParameters, "mixed radicands in quadratic-field arithmetic");
}

int sign_i128(I128 v) { return v > 0 ? 1 : v < 0 ? -1 : 0; }

// Sign of a + b*sqrt(r) for integer a, b (r > 0 when b != 0).
int sign_pair(I128 a, I128 b, int64_t r) {
    if (b == 0) return sign_i128(a);
    if (a == 0) return sign_i128(b);
    int sa = sign_i128(a), sb = sign_i128(b);
    if (sa == sb) return sa;
    // Opposite signs: |a| versus |b|*sqrt(r), squared. The squaring needs
    // headroom: components past 2^55 would overflow the 128-bit compare.
    const I128 cap = I128(1) << 55;
    if (a > cap || a < -cap || b > cap || b < -cap || r > (int64_t(1) << 13))
        fail(ErrorKind::BadParameters, "quadratic-field comparison out of range");
    I128 lhs = a * a;
    I128 rhs = b * b * r;
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
}

} // namespace

Quad Quad::rational(int64_t num, int64_t den) { return normalized(num, 0, den, 0); }

Quad Quad::root_multiple(int64_t b, int64_t radicand, int64_t den) {
    return normalized(0, b, den, radicand);
}

Quad Quad::make(int64_t a, int64_t b, int64_t radicand, int64_t den) {
    return normalized(a, b, den, radicand);
}

double Quad::to_double() const {
    double root = radicand > 0 ? std::sqrt(static_cast<double>(radicand)) : 0.0;
    return (static_cast<double>(a) + static_cast<double>(b) * root) / static_cast<double>(den);
}

std::string Quad::to_string() const {
    std::string s = std::to_string(a);
    if (b != 0)
        s += (b > 0 ? "+" : "") + std::to_string(b) + "*sqrt(" + std::to_string(radicand) + ")";
    if (den != 1) s = "(" + s + ")/" + std::to_string(den);
    return s;
}

Quad operator+(const Quad& x, const Quad& y) {
    int64_t r = common_radicand(x, y);
    return normalized(I128(x.a) * y.den + I128(y.a) * x.den,
                      I128(x.b) * y.den + I128(y.b) * x.den, I128(x.den) * y.den, r);
}

Quad operator-(const Quad& x, const Quad& y) { return x + (-y); }

Quad operator-(const Quad& x) {
    Quad q = x;
    q.a = -q.a;
    q.b = -q.b;
    return q;
}

Quad operator*(const Quad& x, const Quad& y) {
    int64_t r = common_radicand(x, y);
    return normalized(I128(x.a) * y.a + I128(x.b) * y.b * r,
                      I128(x.a) * y.b + I128(x.b) * y.a, I128(x.den) * y.den, r);
}

int sign(const Quad& x) { return sign_pair(x.a, x.b, x.radicand); }

int quad_cmp(const Quad& x, const Quad& y) {
    int64_t r = common_radicand(x, y);
    I128 a = I128(x.a) * y.den - I128(y.a) * x.den;
    I128 b = I128(x.b) * y.den - I128(y.b) * x.den;
    return sign_pair(a, b, r);
}

int64_t floor_int(const Quad& x) {
    auto n = static_cast<int64_t>(std::floor(x.to_double()));
    while (quad_cmp(Quad::rational(n + 1), x) <= 0) ++n;
    while (quad_cmp(Quad::rational(n), x) > 0) --n;
    return n;
}

} // namespace stairtile
