#pragma once

#include "stairtile/geometry.hpp"
#include "stairtile/quad.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace stairtile {

struct QuadPoint {
    Quad x, y;
};

// Lexicographic, exact.
int point_cmp(const QuadPoint& a, const QuadPoint& b);

struct QuadPointSet {
    std::vector<QuadPoint> pts;

    size_t size() const { return pts.size(); }
};

QuadPointSet to_quad_points(const PointSet& ps);

Quad squared_distance(const QuadPoint& a, const QuadPoint& b);

// Points beta*(k, l), beta = sqrt(p/q), lying in the region: each point belongs
// to the unit cube [c - 1/2, c + 1/2) of its componentwise nearest integer c.
// All membership decisions are exact.
QuadPointSet lattice_points_in_region(const CubeUnion& region, int64_t p, int64_t q);

// Seeded uniform subsample of exactly n points (deterministic Lehmer-style
// partial shuffle, independent of platform), returned in canonical order.
QuadPointSet sample_equal_cardinality(const QuadPointSet& src, size_t n, uint64_t seed);

struct HallViolator {
    bool on_first = true;           // violating family lives in p1 (else p2)
    std::vector<int> members;       // indices into the violating side
    std::vector<int> neighborhood;  // indices into the other side
};

struct MatchOutcome {
    size_t size1 = 0;
    size_t size2 = 0;
    Quad radius_sq;
    size_t matched = 0;
    size_t deficiency = 0; // min(size1, size2) - matched
    std::vector<std::pair<int, int>> pairs; // (index into p1, index into p2)
    // Witness for deficiency > 0: a family on the smaller side with fewer
    // within-radius neighbors than members (Hall's condition fails).
    std::optional<HallViolator> violator;
};

// Maximum bipartite matching between p1 and p2 with edges at squared distance
// <= radius_sq (closed), via Hopcroft-Karp; deterministic.
MatchOutcome hall_window_match(const QuadPointSet& p1, const QuadPointSet& p2,
                               const Quad& radius_sq);

struct RadiusResult {
    bool unbounded = false; // no radius saturates even the complete graph
    Quad radius_sq;         // exact attained squared distance
    double radius = 0;
    MatchOutcome outcome;   // the matching at that radius
};

// Smallest pairwise-distance value at which the maximum matching saturates the
// smaller side. Exact: the matching size only jumps at attained distances.
RadiusResult min_matching_radius(const QuadPointSet& p1, const QuadPointSet& p2);

} // namespace stairtile
