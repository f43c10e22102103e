#pragma once

#include "stairtile/spectral.hpp"
#include "stairtile/staircase.hpp"
#include "stairtile/words.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace stairtile {

// Perimeter-proportional bound on how much a bounded-displacement rearrangement
// can change a region's point count: 2*3^(d-1) * (1 + 2*(s*sqrt(d) + d))^d for
// displacement radius s in dimension d.
double boundary_constant(double s, int dimension);

// Nested family of words indexed by length: prefix(m) must extend prefix(m').
struct WordFamily {
    std::string label;
    std::function<Word(size_t)> prefix;
};

WordFamily gamma_family(const Rat& gamma);
WordFamily periodic_family(int64_t p, int64_t q);
WordFamily constant_family(uint8_t letter);
WordFamily fixed_family(const Word& w); // prefixes of one fixed word

struct SeriesRow {
    unsigned m = 0;
    Int count1;
    Rat count2;   // reference count: alpha-scaled area, or the second staircase
    Int boundary; // 8*3^m - 8, the staircase perimeter
    Rat ratio;    // |count1 - count2| / boundary
};

struct DiscrepancySeries {
    std::string label1;
    std::string label2;
    std::vector<SeriesRow> rows;
};

// Staircase tile counts against the density-matched share alpha * area(m).
// Closed-form counts are cross-checked against brute-force enumeration while
// 9^m stays within the budget (Error(AssertionFailed) on mismatch).
DiscrepancySeries discrepancy_vs_lattice(const WordFamily& family, const Rat& alpha,
                                         unsigned m_lo, unsigned m_hi,
                                         const Int& brute_budget = default_tile_budget());

// Staircase tile counts of two word families over the same windows; the gap is
// 3^m * |digit-sum difference|.
DiscrepancySeries discrepancy_pair(const WordFamily& first, const WordFamily& second,
                                   unsigned m_lo, unsigned m_hi);

enum class DensityVerdict {
    SameDensity,
    NoBDMapPossible, // densities differ; no bounded-displacement bijection exists
};

DensityVerdict density_compare(const PerronData& a, const PerronData& b);

} // namespace stairtile
