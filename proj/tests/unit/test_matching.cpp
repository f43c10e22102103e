#include "stairtile/matching.hpp"
#include "stairtile/staircase.hpp"

#include <doctest.h>

#include <algorithm>
#include <functional>

using namespace stairtile;

namespace {

QuadPointSet points_from_units(std::vector<std::pair<int64_t, int64_t>> units) {
    QuadPointSet out;
    for (auto [x, y] : units) out.pts.push_back({Quad::rational(x), Quad::rational(y)});
    std::sort(out.pts.begin(), out.pts.end(),
              [](const QuadPoint& a, const QuadPoint& b) { return point_cmp(a, b) < 0; });
    return out;
}

// Independent maximum-matching oracle (augmenting path search from each left
// vertex), for cross-checking Hopcroft-Karp on small instances.
size_t kuhn_max_matching(const QuadPointSet& p1, const QuadPointSet& p2, const Quad& r2) {
    std::vector<std::vector<int>> adj(p1.size());
    for (size_t i = 0; i < p1.size(); ++i)
        for (size_t j = 0; j < p2.size(); ++j)
            if (quad_le(squared_distance(p1.pts[i], p2.pts[j]), r2))
                adj[i].push_back(static_cast<int>(j));
    std::vector<int> match_r(p2.size(), -1);
    std::function<bool(size_t, std::vector<char>&)> augment =
        [&](size_t u, std::vector<char>& visited) {
            for (int v : adj[u]) {
                if (visited[static_cast<size_t>(v)]) continue;
                visited[static_cast<size_t>(v)] = 1;
                int w = match_r[static_cast<size_t>(v)];
                if (w == -1 || augment(static_cast<size_t>(w), visited)) {
                    match_r[static_cast<size_t>(v)] = static_cast<int>(u);
                    return true;
                }
            }
            return false;
        };
    size_t matched = 0;
    for (size_t u = 0; u < p1.size(); ++u) {
        std::vector<char> visited(p2.size(), 0);
        if (augment(u, visited)) ++matched;
    }
    return matched;
}

uint64_t lcg_next(uint64_t& state) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state >> 11;
}

QuadPointSet random_half_grid_points(uint64_t& state, size_t n, int64_t span) {
    QuadPointSet out;
    for (size_t i = 0; i < n; ++i) {
        int64_t x = static_cast<int64_t>(lcg_next(state) % static_cast<uint64_t>(2 * span)) - span;
        int64_t y = static_cast<int64_t>(lcg_next(state) % static_cast<uint64_t>(2 * span)) - span;
        out.pts.push_back({Quad::rational(x, 2), Quad::rational(y, 2)});
    }
    return out;
}

} // namespace

TEST_CASE("quad points halve the doubled grid") {
    PointSet ps = make_point_set({{1, -3}, {4, 0}});
    QuadPointSet qp = to_quad_points(ps);
    REQUIRE(qp.size() == 2);
    CHECK(qp.pts[0].x == Quad::rational(1, 2));
    CHECK(qp.pts[0].y == Quad::rational(-3, 2));
    CHECK(qp.pts[1].x == Quad::rational(2));
    CHECK(squared_distance(qp.pts[0], qp.pts[1]) == Quad::rational(9, 2)); // (3/2)^2 + (3/2)^2
}

TEST_CASE("identical sets saturate at radius zero") {
    QuadPointSet p = points_from_units({{0, 0}, {2, 0}, {5, 1}});
    RadiusResult r = min_matching_radius(p, p);
    CHECK_FALSE(r.unbounded);
    CHECK(r.radius_sq == Quad::rational(0));
    CHECK(r.outcome.matched == 3);
    CHECK(r.outcome.deficiency == 0);
}

TEST_CASE("unit shift needs radius exactly one") {
    QuadPointSet p1 = points_from_units({{0, 0}, {2, 0}, {5, 1}});
    QuadPointSet p2 = points_from_units({{1, 0}, {3, 0}, {6, 1}});
    RadiusResult r = min_matching_radius(p1, p2);
    CHECK(r.radius_sq == Quad::rational(1));
    CHECK(r.radius == doctest::Approx(1.0));
    CHECK(r.outcome.matched == 3);
    REQUIRE(r.outcome.pairs.size() == 3);

    // Just below the attained distance the matching must lose at least one pair.
    MatchOutcome below = hall_window_match(p1, p2, Quad::rational(1023, 1024));
    CHECK(below.matched < 3);
    REQUIRE(below.violator.has_value());
    CHECK(below.violator->members.size() - below.violator->neighborhood.size() ==
          below.deficiency);
}

TEST_CASE("matched pairs respect the radius and index both sides") {
    QuadPointSet p1 = points_from_units({{0, 0}, {4, 0}});
    QuadPointSet p2 = points_from_units({{0, 1}, {4, -1}, {9, 9}});
    Quad r2 = Quad::rational(1);
    MatchOutcome m = hall_window_match(p1, p2, r2);
    CHECK(m.size1 == 2);
    CHECK(m.size2 == 3);
    CHECK(m.matched == 2);
    for (auto [i, j] : m.pairs) {
        Quad d2 = squared_distance(p1.pts[static_cast<size_t>(i)],
                                   p2.pts[static_cast<size_t>(j)]);
        CHECK(quad_le(d2, r2));
    }
    CHECK_THROWS_AS(hall_window_match(p1, p2, Quad::rational(-1)), Error);
}

TEST_CASE("Hopcroft-Karp agrees with an augmenting-path oracle") {
    uint64_t state = 12345;
    for (int trial = 0; trial < 120; ++trial) {
        size_t n1 = 1 + lcg_next(state) % 8;
        size_t n2 = 1 + lcg_next(state) % 8;
        QuadPointSet p1 = random_half_grid_points(state, n1, 4);
        QuadPointSet p2 = random_half_grid_points(state, n2, 4);
        Quad r2 = Quad::rational(static_cast<int64_t>(lcg_next(state) % 40), 4);
        MatchOutcome m = hall_window_match(p1, p2, r2);
        CHECK(m.matched == kuhn_max_matching(p1, p2, r2));

        if (m.deficiency > 0) {
            REQUIRE(m.violator.has_value());
            const HallViolator& v = *m.violator;
            CHECK(v.members.size() - v.neighborhood.size() == m.deficiency);
            // The violating family lives on the smaller side.
            CHECK(v.on_first == (p1.size() <= p2.size()));
            const auto& fam = v.on_first ? p1.pts : p2.pts;
            const auto& other = v.on_first ? p2.pts : p1.pts;
            // Every within-radius neighbor of a member is recorded.
            for (int mi : v.members)
                for (size_t j = 0; j < other.size(); ++j)
                    if (quad_le(squared_distance(fam[static_cast<size_t>(mi)], other[j]), r2))
                        CHECK(std::find(v.neighborhood.begin(), v.neighborhood.end(),
                                        static_cast<int>(j)) != v.neighborhood.end());
        } else {
            CHECK_FALSE(m.violator.has_value());
        }
    }
}

TEST_CASE("matched size is monotone in the radius") {
    uint64_t state = 777;
    QuadPointSet p1 = random_half_grid_points(state, 12, 6);
    QuadPointSet p2 = random_half_grid_points(state, 10, 6);
    size_t prev = 0;
    for (int64_t num = 0; num <= 64; num += 4) {
        MatchOutcome m = hall_window_match(p1, p2, Quad::rational(num, 4));
        CHECK(m.matched >= prev);
        prev = m.matched;
    }
}

TEST_CASE("minimum radius is an attained distance and tight") {
    uint64_t state = 424242;
    for (int trial = 0; trial < 25; ++trial) {
        QuadPointSet p1 = random_half_grid_points(state, 6, 5);
        QuadPointSet p2 = random_half_grid_points(state, 8, 5);
        RadiusResult r = min_matching_radius(p1, p2);
        REQUIRE_FALSE(r.unbounded);
        CHECK(r.outcome.matched == std::min(p1.size(), p2.size()));

        bool attained = false;
        for (const auto& a : p1.pts)
            for (const auto& b : p2.pts)
                if (squared_distance(a, b) == r.radius_sq) attained = true;
        CHECK(attained);

        if (sign(r.radius_sq) > 0) {
            MatchOutcome below =
                hall_window_match(p1, p2, r.radius_sq * Quad::rational(1023, 1024));
            CHECK(below.matched < r.outcome.matched);
        }
    }
}

TEST_CASE("beta-lattice points in a region, against brute enumeration") {
    CubeUnion region = make_cube_union({{0, 0}, {1, 0}, {-1, -1}, {2, 3}});
    QuadPointSet got = lattice_points_in_region(region, 2, 3); // beta = sqrt(2/3)
    // Brute force: scan a safely larger index box with the same exact arithmetic.
    std::vector<QuadPoint> expect;
    for (int64_t k = -10; k <= 10; ++k)
        for (int64_t l = -10; l <= 10; ++l) {
            Quad x = Quad::root_multiple(k, 6, 3);
            Quad y = Quad::root_multiple(l, 6, 3);
            Vec2 cube{floor_int(x + Quad::rational(1, 2)), floor_int(y + Quad::rational(1, 2))};
            if (region.contains(cube)) expect.push_back({x, y});
        }
    std::sort(expect.begin(), expect.end(),
              [](const QuadPoint& a, const QuadPoint& b) { return point_cmp(a, b) < 0; });
    REQUIRE(got.size() == expect.size());
    for (size_t i = 0; i < expect.size(); ++i) CHECK(point_cmp(got.pts[i], expect[i]) == 0);
    CHECK_THROWS_AS(lattice_points_in_region(region, 0, 3), Error);
}

TEST_CASE("equal-cardinality sampling is deterministic and order-canonical") {
    uint64_t state = 99;
    QuadPointSet src = random_half_grid_points(state, 20, 9);
    std::sort(src.pts.begin(), src.pts.end(),
              [](const QuadPoint& a, const QuadPoint& b) { return point_cmp(a, b) < 0; });
    QuadPointSet a = sample_equal_cardinality(src, 7, 0);
    QuadPointSet b = sample_equal_cardinality(src, 7, 0);
    REQUIRE(a.size() == 7);
    for (size_t i = 0; i < 7; ++i) CHECK(point_cmp(a.pts[i], b.pts[i]) == 0);
    for (size_t i = 0; i + 1 < a.size(); ++i) CHECK(point_cmp(a.pts[i], a.pts[i + 1]) < 0);
    for (const auto& p : a.pts) {
        bool found = false;
        for (const auto& s : src.pts)
            if (point_cmp(p, s) == 0) found = true;
        CHECK(found);
    }
    QuadPointSet full = sample_equal_cardinality(src, src.size(), 5);
    CHECK(full.size() == src.size());
    CHECK_THROWS_AS(sample_equal_cardinality(src, src.size() + 1, 0), Error);
}

TEST_CASE("a starved staircase window produces a Hall violator") {
    StaircasePatch s = subdiagonal_patch(constant_word(2, 2), SeedAnchor::Centered);
    QuadPointSet tiles = to_quad_points(centers(s.patch));
    QuadPointSet lattice = lattice_points_in_region(s.window, 2, 3);
    QuadPointSet trimmed =
        sample_equal_cardinality(lattice, std::min(tiles.size(), lattice.size()), 0);
    MatchOutcome m = hall_window_match(tiles, trimmed, Quad::rational(1, 100));
    CHECK(m.deficiency > 0);
    REQUIRE(m.violator.has_value());
    CHECK(m.violator->members.size() - m.violator->neighborhood.size() == m.deficiency);
}
