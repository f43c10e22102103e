#include "stairtile/matching.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <unordered_map>

namespace stairtile {

int point_cmp(const QuadPoint& a, const QuadPoint& b) {
    int c = quad_cmp(a.x, b.x);
    return c != 0 ? c : quad_cmp(a.y, b.y);
}

QuadPointSet to_quad_points(const PointSet& ps) {
    QuadPointSet out;
    out.pts.reserve(ps.pts.size());
    for (const auto& p : ps.pts)
        out.pts.push_back({Quad::rational(p.x2, 2), Quad::rational(p.y2, 2)});
    return out;
}

Quad squared_distance(const QuadPoint& a, const QuadPoint& b) {
    Quad dx = a.x - b.x;
    Quad dy = a.y - b.y;
    return dx * dx + dy * dy;
}

QuadPointSet lattice_points_in_region(const CubeUnion& region, int64_t p, int64_t q) {
    if (p < 1 || q < 1) fail(ErrorKind::BadParameters, "lattice scale needs p >= 1, q >= 1");
    QuadPointSet out;
    if (region.cells.empty()) return out;

    int64_t r = p * q; // beta = sqrt(p/q) = sqrt(pq)/q
    int64_t min_x = region.cells.front().x2, max_x = region.cells.back().x2;
    int64_t min_y = region.cells.front().y2, max_y = region.cells.back().y2;
    for (const auto& c : region.cells) {
        min_y = std::min(min_y, c.y2);
        max_y = std::max(max_y, c.y2);
    }

    // k ranges with beta*k inside [min-1/2, max+1/2): k bounded by value/beta,
    // i.e. (2c +- 1)*sqrt(pq)/(2p).
    auto lo_index = [&](int64_t lo_cell) {
        return -floor_int(-Quad::root_multiple(2 * lo_cell - 1, r, 2 * p)); // ceil
    };
    auto hi_index = [&](int64_t hi_cell) {
        return floor_int(Quad::root_multiple(2 * hi_cell + 1, r, 2 * p));
    };

    for (int64_t k = lo_index(min_x); k <= hi_index(max_x); ++k) {
        // Nearest integer to beta*k: floor(beta*k + 1/2) = floor((q + 2k*sqrt(pq))/(2q)).
        int64_t cx = floor_int(Quad::make(q, 2 * k, r, 2 * q));
        if (cx < min_x || cx > max_x) continue;
        for (int64_t l = lo_index(min_y); l <= hi_index(max_y); ++l) {
            int64_t cy = floor_int(Quad::make(q, 2 * l, r, 2 * q));
            if (!region.contains({cx, cy})) continue;
            out.pts.push_back({Quad::root_multiple(k, r, q), Quad::root_multiple(l, r, q)});
        }
    }
    std::sort(out.pts.begin(), out.pts.end(),
              [](const QuadPoint& a, const QuadPoint& b) { return point_cmp(a, b) < 0; });
    return out;
}

QuadPointSet sample_equal_cardinality(const QuadPointSet& src, size_t n, uint64_t seed) {
    if (n > src.size())
        fail(ErrorKind::BadParameters, "sample size exceeds the source point count");
    std::vector<QuadPoint> pts = src.pts;
    uint64_t state = seed * 6364136223846793005ULL + 1442695040888963407ULL;
    auto next = [&state]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return state >> 11;
    };
    for (size_t i = 0; i < n; ++i) {
        size_t j = i + static_cast<size_t>(next() % (pts.size() - i));
        std::swap(pts[i], pts[j]);
    }
    pts.resize(n);
    std::sort(pts.begin(), pts.end(),
              [](const QuadPoint& a, const QuadPoint& b) { return point_cmp(a, b) < 0; });
    QuadPointSet out;
    out.pts = std::move(pts);
    return out;
}

namespace {

// Grid index over unit cells for radius-bounded candidate generation.
struct PointGrid {
    std::unordered_map<Vec2, std::vector<int>, Vec2Hash> cells;

    explicit PointGrid(const std::vector<QuadPoint>& pts) {
        for (size_t i = 0; i < pts.size(); ++i)
            cells[{floor_int(pts[i].x), floor_int(pts[i].y)}].push_back(static_cast<int>(i));
    }

    template <typename F>
    void for_candidates(const QuadPoint& p, int64_t reach, F&& f) const {
        int64_t cx = floor_int(p.x), cy = floor_int(p.y);
        for (int64_t gx = cx - reach; gx <= cx + reach; ++gx)
            for (int64_t gy = cy - reach; gy <= cy + reach; ++gy) {
                auto it = cells.find({gx, gy});
                if (it == cells.end()) continue;
                for (int j : it->second) f(j);
            }
    }
};

int64_t cell_reach(const Quad& radius_sq) {
    double r = std::sqrt(std::max(0.0, radius_sq.to_double()));
    return static_cast<int64_t>(std::ceil(r)) + 1;
}

// Hopcroft-Karp on an adjacency list from the left side.
struct HopcroftKarp {
    const std::vector<std::vector<int>>& adj;
    int nl, nr;
    std::vector<int> match_l, match_r, dist;

    HopcroftKarp(const std::vector<std::vector<int>>& a, int right_count)
        : adj(a), nl(static_cast<int>(a.size())), nr(right_count), match_l(nl, -1),
          match_r(nr, -1), dist(nl) {}

    bool bfs() {
        std::deque<int> queue;
        bool found = false;
        for (int u = 0; u < nl; ++u) {
            dist[u] = match_l[u] == -1 ? 0 : -1;
            if (dist[u] == 0) queue.push_back(u);
        }
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : adj[static_cast<size_t>(u)]) {
                int w = match_r[static_cast<size_t>(v)];
                if (w == -1)
                    found = true;
                else if (dist[w] == -1) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        return found;
    }

    bool dfs(int u) {
        for (int v : adj[static_cast<size_t>(u)]) {
            int w = match_r[static_cast<size_t>(v)];
            if (w == -1 || (dist[w] == dist[u] + 1 && dfs(w))) {
                match_l[static_cast<size_t>(u)] = v;
                match_r[static_cast<size_t>(v)] = u;
                return true;
            }
        }
        dist[u] = -1;
        return false;
    }

    int run() {
        int matched = 0;
        while (bfs())
            for (int u = 0; u < nl; ++u)
                if (match_l[u] == -1 && dfs(u)) ++matched;
        return matched;
    }
};

std::vector<std::vector<int>> build_adjacency(const std::vector<QuadPoint>& left,
                                              const PointGrid& right_grid,
                                              const std::vector<QuadPoint>& right,
                                              const Quad& radius_sq) {
    std::vector<std::vector<int>> adj(left.size());
    int64_t reach = cell_reach(radius_sq);
    for (size_t i = 0; i < left.size(); ++i) {
        right_grid.for_candidates(left[i], reach, [&](int j) {
            if (quad_le(squared_distance(left[i], right[static_cast<size_t>(j)]), radius_sq))
                adj[i].push_back(j);
        });
        std::sort(adj[i].begin(), adj[i].end());
    }
    return adj;
}

MatchOutcome match_with_sides(const QuadPointSet& p1, const QuadPointSet& p2,
                              const Quad& radius_sq, bool swap_sides) {
    const std::vector<QuadPoint>& left = swap_sides ? p2.pts : p1.pts;
    const std::vector<QuadPoint>& right = swap_sides ? p1.pts : p2.pts;

    PointGrid grid(right);
    auto adj = build_adjacency(left, grid, right, radius_sq);
    HopcroftKarp hk(adj, static_cast<int>(right.size()));
    int matched = hk.run();

    MatchOutcome out;
    out.size1 = p1.size();
    out.size2 = p2.size();
    out.radius_sq = radius_sq;
    out.matched = static_cast<size_t>(matched);
    out.deficiency = std::min(out.size1, out.size2) - out.matched;
    for (size_t u = 0; u < left.size(); ++u)
        if (hk.match_l[u] != -1) {
            int l = static_cast<int>(u), r = hk.match_l[u];
            out.pairs.emplace_back(swap_sides ? r : l, swap_sides ? l : r);
        }
    std::sort(out.pairs.begin(), out.pairs.end());

    if (out.deficiency > 0) {
        // Koenig cut: vertices reachable from unmatched left vertices along
        // alternating paths. F = reachable-left violates Hall by exactly the
        // deficiency: |F| - |N(F)| = deficiency.
        std::vector<char> seen_l(left.size(), 0), seen_r(right.size(), 0);
        std::deque<int> queue;
        for (size_t u = 0; u < left.size(); ++u)
            if (hk.match_l[u] == -1) {
                seen_l[u] = 1;
                queue.push_back(static_cast<int>(u));
            }
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : adj[static_cast<size_t>(u)]) {
                if (seen_r[static_cast<size_t>(v)]) continue;
                seen_r[static_cast<size_t>(v)] = 1;
                int w = hk.match_r[static_cast<size_t>(v)];
                if (w != -1 && !seen_l[static_cast<size_t>(w)]) {
                    seen_l[static_cast<size_t>(w)] = 1;
                    queue.push_back(w);
                }
            }
        }
        HallViolator violator;
        violator.on_first = !swap_sides;
        for (size_t u = 0; u < left.size(); ++u)
            if (seen_l[u]) violator.members.push_back(static_cast<int>(u));
        for (size_t v = 0; v < right.size(); ++v)
            if (seen_r[v]) violator.neighborhood.push_back(static_cast<int>(v));
        assert(violator.members.size() - violator.neighborhood.size() == out.deficiency);
        out.violator = std::move(violator);
    }
    return out;
}

} // namespace

MatchOutcome hall_window_match(const QuadPointSet& p1, const QuadPointSet& p2,
                               const Quad& radius_sq) {
    if (sign(radius_sq) < 0) fail(ErrorKind::BadParameters, "negative squared radius");
    // The smaller side plays "left" so the violator certifies the deficiency.
    return match_with_sides(p1, p2, radius_sq, p2.size() < p1.size());
}

RadiusResult min_matching_radius(const QuadPointSet& p1, const QuadPointSet& p2) {
    RadiusResult res;
    size_t want = std::min(p1.size(), p2.size());
    if (want == 0) {
        res.radius_sq = Quad::rational(0);
        res.radius = 0;
        res.outcome = hall_window_match(p1, p2, res.radius_sq);
        return res;
    }

    auto saturated = [&](const Quad& r2) {
        MatchOutcome m = hall_window_match(p1, p2, r2);
        bool ok = m.matched == want;
        if (ok) res.outcome = std::move(m);
        return ok;
    };

    Quad zero = Quad::rational(0);
    if (saturated(zero)) {
        res.radius_sq = zero;
        res.radius = 0;
        return res;
    }

    // Bracket: double the radius (quadruple the square) until saturation.
    Quad lo = zero, hi = Quad::rational(1);
    while (!saturated(hi)) {
        lo = hi;
        hi = hi * Quad::rational(4);
        if (hi.to_double() > 1e18) { // beyond any finite configuration's diameter
            res.unbounded = true;
            res.radius_sq = hi;
            res.radius = std::sqrt(hi.to_double());
            return res;
        }
    }

    // Numeric narrowing with exact probes; keeps lo unsaturated, hi saturated.
    for (int step = 0; step < 60; ++step) {
        double mid = (lo.to_double() + hi.to_double()) / 2;
        Quad probe = Quad::rational(static_cast<int64_t>(std::llround(mid * 4096)), 4096);
        if (quad_cmp(probe, lo) <= 0 || quad_cmp(probe, hi) >= 0) break;
        if (saturated(probe))
            hi = probe;
        else
            lo = probe;
    }

    // The answer is an attained squared distance in (lo, hi]; collect exactly those.
    std::vector<Quad> candidates;
    {
        PointGrid grid(p2.pts);
        int64_t reach = cell_reach(hi);
        for (const auto& a : p1.pts)
            grid.for_candidates(a, reach, [&](int j) {
                Quad d2 = squared_distance(a, p2.pts[static_cast<size_t>(j)]);
                if (quad_cmp(d2, lo) > 0 && quad_le(d2, hi)) candidates.push_back(d2);
            });
    }
    std::sort(candidates.begin(), candidates.end(), quad_lt);
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    assert(!candidates.empty());

    // First saturating candidate, by binary search (saturation is monotone).
    size_t lo_i = 0, hi_i = candidates.size() - 1; // hi_i saturates: hi does and
    // the largest candidate is the last jump point at or below hi.
    while (lo_i < hi_i) {
        size_t mid_i = (lo_i + hi_i) / 2;
        if (saturated(candidates[mid_i]))
            hi_i = mid_i;
        else
            lo_i = mid_i + 1;
    }
    res.radius_sq = candidates[lo_i];
    res.radius = std::sqrt(std::max(0.0, res.radius_sq.to_double()));
    if (!(res.outcome.radius_sq == res.radius_sq)) {
        bool ok = saturated(res.radius_sq);
        assert(ok);
        (void)ok;
    }
    return res;
}

} // namespace stairtile
