#pragma once

#include "stairtile/error.hpp"
#include "stairtile/numeric.hpp"

#include <vector>

namespace stairtile {

// Dense square matrix over arbitrary-precision integers, row-major.
struct IntMatrix {
    int n = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    explicit IntMatrix(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, Int(0)) {}
    IntMatrix(int dim, std::vector<Int> entries) : n(dim), a(std::move(entries)) {
        if (a.size() != static_cast<size_t>(n) * n)
            fail(ErrorKind::BadParameters, "matrix entry count does not match dimension");
    }

    Int& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    static IntMatrix identity(int dim) {
        IntMatrix m(dim);
        for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
        return m;
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

inline IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.n != y.n) fail(ErrorKind::BadParameters, "matrix dimension mismatch");
    IntMatrix r(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) {
            const Int& v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < x.n; ++j) r.at(i, j) += v * y.at(k, j);
        }
    return r;
}

inline std::vector<Int> operator*(const IntMatrix& m, const std::vector<Int>& v) {
    if (static_cast<int>(v.size()) != m.n)
        fail(ErrorKind::BadParameters, "matrix-vector dimension mismatch");
    std::vector<Int> r(v.size(), Int(0));
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) r[static_cast<size_t>(i)] += m.at(i, j) * v[static_cast<size_t>(j)];
    return r;
}

inline IntMatrix mat_pow(IntMatrix base, unsigned exp) {
    IntMatrix r = IntMatrix::identity(base.n);
    while (exp) {
        if (exp & 1u) r = r * base;
        base = base * base;
        exp >>= 1u;
    }
    return r;
}

inline Int column_sum(const std::vector<Int>& v) {
    Int s = 0;
    for (const Int& x : v) s += x;
    return s;
}

} // namespace stairtile
