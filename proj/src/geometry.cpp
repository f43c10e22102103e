#include "stairtile/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_set>

namespace stairtile {

int PrototileSet::index_of(const std::string& id) const {
    for (size_t i = 0; i < tiles.size(); ++i)
        if (tiles[i].id == id) return static_cast<int>(i);
    return -1;
}

const Prototile& PrototileSet::at(int type) const {
    if (type < 0 || static_cast<size_t>(type) >= tiles.size())
        fail(ErrorKind::BadParameters, "prototile index out of range");
    return tiles[static_cast<size_t>(type)];
}

PrototileSetPtr square_rect_prototiles() {
    static const PrototileSetPtr set = std::make_shared<PrototileSet>(
        PrototileSet{{{"S", {2, 2}}, {"R", {6, 2}}}});
    return set;
}

Rect tile_rect(const PrototileSet& protos, const PlacedTile& tile) {
    return {tile.anchor, protos.at(tile.type).size};
}

Rect tile_rect(const Patch& patch, const PlacedTile& tile) {
    return tile_rect(*patch.protos, tile);
}

Rect bounding_rect(const Patch& patch) {
    if (patch.tiles.empty()) fail(ErrorKind::EmptyUnion, "bounding_rect of empty patch");
    Vec2 lo = patch.tiles[0].anchor;
    Vec2 hi = tile_rect(patch, patch.tiles[0]).ne();
    for (const auto& t : patch.tiles) {
        Rect r = tile_rect(patch, t);
        lo.x2 = std::min(lo.x2, r.anchor.x2);
        lo.y2 = std::min(lo.y2, r.anchor.y2);
        hi.x2 = std::max(hi.x2, r.ne().x2);
        hi.y2 = std::max(hi.y2, r.ne().y2);
    }
    return {lo, hi - lo};
}

namespace {
bool tile_order(const PlacedTile& a, const PlacedTile& b) {
    if (a.anchor.y2 != b.anchor.y2) return a.anchor.y2 < b.anchor.y2;
    if (a.anchor.x2 != b.anchor.x2) return a.anchor.x2 < b.anchor.x2;
    return a.type < b.type;
}
} // namespace

void normalize(Patch& patch) {
    std::sort(patch.tiles.begin(), patch.tiles.end(), tile_order);
    auto dup = std::adjacent_find(patch.tiles.begin(), patch.tiles.end());
    if (dup != patch.tiles.end()) fail(ErrorKind::BadParameters, "duplicate tile in patch");
}

Patch translate(const Patch& patch, Vec2 t) {
    Patch out = patch;
    for (auto& tile : out.tiles) tile.anchor = tile.anchor + t;
    if (out.support) out.support->anchor = out.support->anchor + t;
    return out;
}

Patch point_reflect(const Patch& patch) {
    Patch out;
    out.protos = patch.protos;
    out.tiles.reserve(patch.tiles.size());
    for (const auto& tile : patch.tiles) {
        Vec2 size = patch.protos->at(tile.type).size;
        out.tiles.push_back({tile.type, -tile.anchor - size});
    }
    if (patch.support) out.support = Rect{-patch.support->ne(), patch.support->size};
    normalize(out);
    return out;
}

bool same_tiles(const Patch& a, const Patch& b) {
    Patch na = a, nb = b;
    normalize(na);
    normalize(nb);
    return na.tiles == nb.tiles;
}

Rat patch_area(const Patch& patch) {
    Int quarter = 0; // doubled-coordinate area units (1 unit^2 == 4 of these)
    for (const auto& tile : patch.tiles) {
        Vec2 s = patch.protos->at(tile.type).size;
        quarter += Int(s.x2) * s.y2;
    }
    return Rat(quarter, 4);
}

int tile_at(const Patch& patch, Vec2 p) {
    for (size_t i = 0; i < patch.tiles.size(); ++i)
        if (tile_rect(patch, patch.tiles[i]).contains_point(p)) return static_cast<int>(i);
    return -1;
}

namespace {
struct TileKeyHash {
    size_t operator()(const PlacedTile& t) const {
        return Vec2Hash{}(t.anchor) * 1315423911u + static_cast<size_t>(t.type);
    }
};
} // namespace

std::vector<Vec2> find_subpatch(const Patch& needle, const Patch& host) {
    if (needle.tiles.empty()) fail(ErrorKind::BadParameters, "find_subpatch with empty needle");

    std::unordered_set<PlacedTile, TileKeyHash> host_tiles(host.tiles.begin(), host.tiles.end());
    std::vector<size_t> type_count(host.protos->tiles.size(), 0);
    for (const auto& t : host.tiles) type_count[static_cast<size_t>(t.type)]++;

    // Anchor the search on the needle tile whose type is rarest in the host.
    const PlacedTile* pivot = &needle.tiles[0];
    for (const auto& t : needle.tiles)
        if (type_count[static_cast<size_t>(t.type)] < type_count[static_cast<size_t>(pivot->type)])
            pivot = &t;

    std::vector<Vec2> found;
    for (const auto& h : host.tiles) {
        if (h.type != pivot->type) continue;
        Vec2 t = h.anchor - pivot->anchor;
        bool all = true;
        for (const auto& n : needle.tiles) {
            if (!host_tiles.count({n.type, n.anchor + t})) {
                all = false;
                break;
            }
        }
        if (all) found.push_back(t);
    }
    std::sort(found.begin(), found.end());
    return found;
}

CoverCheck check_exact_cover(const Patch& patch, const Rect& target) {
    const size_t n = patch.tiles.size();
    for (size_t i = 0; i < n; ++i) {
        Rect ri = tile_rect(patch, patch.tiles[i]);
        if (!target.contains_rect(ri))
            return {CoverCheck::Status::OutOfBounds, static_cast<int>(i), -1};
        for (size_t j = i + 1; j < n; ++j) {
            if (ri.overlaps(tile_rect(patch, patch.tiles[j])))
                return {CoverCheck::Status::Overlap, static_cast<int>(i), static_cast<int>(j)};
        }
    }
    // Disjoint and inside: exact cover iff the areas match.
    Rat target_area = Rat(Int(target.size.x2) * target.size.y2, 4);
    if (patch_area(patch) != target_area) return {CoverCheck::Status::AreaGap, -1, -1};
    return {};
}

CubeUnion make_cube_union(std::vector<Vec2> cells) {
    std::sort(cells.begin(), cells.end());
    auto dup = std::adjacent_find(cells.begin(), cells.end());
    if (dup != cells.end()) fail(ErrorKind::BadParameters, "duplicate cell in cube union");
    return {std::move(cells)};
}

bool CubeUnion::contains(Vec2 cell) const {
    return std::binary_search(cells.begin(), cells.end(), cell);
}

CubeUnion cube_union_of_patch(const Patch& patch) {
    std::vector<Vec2> cells;
    for (const auto& tile : patch.tiles) {
        Vec2 a = tile.anchor;
        Vec2 s = patch.protos->at(tile.type).size;
        if (s.x2 % 2 != 0 || s.y2 % 2 != 0 || ((a.x2 % 2) + 2) % 2 != 1 ||
            ((a.y2 % 2) + 2) % 2 != 1)
            fail(ErrorKind::NonCubeAligned,
                 "tile does not decompose into integer-centered unit cubes");
        // Cells of [a, a+s): centers (a.x2 + 2i + 1)/2 for i in [0, s.x2/2).
        for (int64_t i = 0; i < s.x2 / 2; ++i)
            for (int64_t j = 0; j < s.y2 / 2; ++j)
                cells.push_back({(a.x2 + 2 * i + 1) / 2, (a.y2 + 2 * j + 1) / 2});
    }
    return make_cube_union(std::move(cells));
}

CubeUnion translate(const CubeUnion& u, Vec2 whole_units) {
    CubeUnion out = u;
    for (auto& c : out.cells) c = c + whole_units;
    return out;
}

Int perimeter(const CubeUnion& u) {
    if (u.cells.empty()) fail(ErrorKind::EmptyUnion, "perimeter of empty cube union");
    std::unordered_set<Vec2, Vec2Hash> set(u.cells.begin(), u.cells.end());
    int64_t adjacent = 0;
    for (const auto& c : u.cells) {
        if (set.count({c.x2 + 1, c.y2})) ++adjacent;
        if (set.count({c.x2, c.y2 + 1})) ++adjacent;
    }
    return Int(4) * static_cast<int64_t>(u.cells.size()) - 2 * adjacent;
}

PointSet make_point_set(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return {std::move(pts)};
}

PointSet centers(const Patch& patch) {
    std::vector<Vec2> pts;
    pts.reserve(patch.tiles.size());
    for (const auto& tile : patch.tiles) {
        Vec2 s = patch.protos->at(tile.type).size;
        assert(s.x2 % 2 == 0 && s.y2 % 2 == 0);
        pts.push_back({tile.anchor.x2 + s.x2 / 2, tile.anchor.y2 + s.y2 / 2});
    }
    size_t raw = pts.size();
    PointSet ps = make_point_set(std::move(pts));
    if (ps.pts.size() != raw)
        fail(ErrorKind::BadParameters, "coincident tile centers; patch tiles overlap");
    return ps;
}

PointSet point_reflect(const PointSet& ps) {
    std::vector<Vec2> pts;
    pts.reserve(ps.pts.size());
    for (const auto& p : ps.pts) pts.push_back(-p);
    return make_point_set(std::move(pts));
}

} // namespace stairtile
