#pragma once

#include "stairtile/error.hpp"
#include "stairtile/numeric.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace stairtile {

// All tile geometry lives on the half-unit grid: coordinates are stored doubled
// (x2 = 2x), so the rectangle anchored at (-3/2, -1/2) has anchor {-3, -1}.
struct Vec2 {
    int64_t x2 = 0;
    int64_t y2 = 0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
    friend auto operator<=>(const Vec2&, const Vec2&) = default;
    Vec2 operator+(Vec2 o) const { return {x2 + o.x2, y2 + o.y2}; }
    Vec2 operator-(Vec2 o) const { return {x2 - o.x2, y2 - o.y2}; }
    Vec2 operator-() const { return {-x2, -y2}; }
    Vec2 operator*(int64_t k) const { return {x2 * k, y2 * k}; }
};

// Axis-aligned rectangle, south-west anchor, half-open: [x, x+w) x [y, y+h).
struct Rect {
    Vec2 anchor;
    Vec2 size; // both components > 0, in doubled units

    friend bool operator==(const Rect&, const Rect&) = default;
    Vec2 ne() const { return anchor + size; }
    bool contains_point(Vec2 p) const {
        return p.x2 >= anchor.x2 && p.x2 < anchor.x2 + size.x2 && p.y2 >= anchor.y2 &&
               p.y2 < anchor.y2 + size.y2;
    }
    bool contains_rect(const Rect& r) const {
        return r.anchor.x2 >= anchor.x2 && r.anchor.y2 >= anchor.y2 &&
               r.ne().x2 <= ne().x2 && r.ne().y2 <= ne().y2;
    }
    bool overlaps(const Rect& r) const {
        return anchor.x2 < r.ne().x2 && r.anchor.x2 < ne().x2 && anchor.y2 < r.ne().y2 &&
               r.anchor.y2 < ne().y2;
    }
};

struct Prototile {
    std::string id;
    Vec2 size; // doubled units
};

struct PrototileSet {
    std::vector<Prototile> tiles;

    // -1 when absent
    int index_of(const std::string& id) const;
    const Prototile& at(int type) const;
};

using PrototileSetPtr = std::shared_ptr<const PrototileSet>;

// The square/rectangle pair: S = 1x1, R = 3x1.
PrototileSetPtr square_rect_prototiles();

struct PlacedTile {
    int type = 0; // index into the prototile set
    Vec2 anchor;  // SW corner, doubled

    friend bool operator==(const PlacedTile&, const PlacedTile&) = default;
    friend auto operator<=>(const PlacedTile&, const PlacedTile&) = default;
};

// Finite set of placed tiles with pairwise disjoint interiors. `support` is the
// covered rectangle when the patch is known to tile one exactly.
struct Patch {
    PrototileSetPtr protos;
    std::vector<PlacedTile> tiles;
    std::optional<Rect> support;
};

Rect tile_rect(const Patch& patch, const PlacedTile& tile);
Rect tile_rect(const PrototileSet& protos, const PlacedTile& tile);

// Tight bounding rectangle of the tiles. Error(EmptyUnion) on an empty patch.
Rect bounding_rect(const Patch& patch);

// Sorts (y2, x2, type) and rejects exact duplicates; canonical form for equality tests.
void normalize(Patch& patch);

Patch translate(const Patch& patch, Vec2 t);

// Reflection through the origin: [x, x+w) maps to (-x-w, -x], i.e. anchor -> -anchor-size.
Patch point_reflect(const Patch& patch);

bool same_tiles(const Patch& a, const Patch& b);

// Total covered area in whole units (each tile contributes w*h).
Rat patch_area(const Patch& patch);

// Index of the tile whose half-open rectangle contains p, or -1.
int tile_at(const Patch& patch, Vec2 p);

// All translations t (doubled) with needle + t a subset of host's tile set, sorted.
// Error(BadParameters) when the needle is empty.
std::vector<Vec2> find_subpatch(const Patch& needle, const Patch& host);

// Checks that `tiles` have pairwise disjoint interiors and cover `target` exactly.
// Quadratic; intended for rule images and small patches.
struct CoverCheck {
    enum class Status { Ok, Overlap, OutOfBounds, AreaGap };
    Status status = Status::Ok;
    int tile_a = -1; // offending tile indices where applicable
    int tile_b = -1;

    bool ok() const { return status == Status::Ok; }
};
CoverCheck check_exact_cover(const Patch& patch, const Rect& target);

// Union of axis-aligned unit cubes (cells), stored by their integer centers, sorted.
struct CubeUnion {
    std::vector<Vec2> cells; // NOT doubled: integer centers

    Int area() const { return Int(cells.size()); }
    bool contains(Vec2 cell) const;
};

CubeUnion make_cube_union(std::vector<Vec2> cells); // sorts, rejects duplicates

// Decomposes each tile into unit cells. Error(NonCubeAligned) unless every tile
// has integer side lengths and half-integer corners (so cell centers are integers).
CubeUnion cube_union_of_patch(const Patch& patch);

CubeUnion translate(const CubeUnion& u, Vec2 whole_units);

// Boundary length: 4n minus twice the number of edge-adjacent cell pairs.
// Error(EmptyUnion) on an empty union.
Int perimeter(const CubeUnion& u);

// Finite point set on the half-unit grid (doubled coordinates), sorted, duplicate-free.
struct PointSet {
    std::vector<Vec2> pts;

    size_t size() const { return pts.size(); }
};

PointSet make_point_set(std::vector<Vec2> pts);

// Tile barycenters: anchor + size/2 (doubled arithmetic stays integral).
PointSet centers(const Patch& patch);

PointSet point_reflect(const PointSet& ps);

// 64-bit mix for (x2, y2) keys, shared by the hash-set helpers.
struct Vec2Hash {
    size_t operator()(const Vec2& v) const {
        uint64_t h = static_cast<uint64_t>(v.x2) * 0x9e3779b97f4a7c15ULL;
        h ^= static_cast<uint64_t>(v.y2) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xbf58476d1ce4e5b9ULL;
        return static_cast<size_t>(h ^ (h >> 31));
    }
};

} // namespace stairtile
