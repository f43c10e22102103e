#include "stairtile/staircase.hpp"

#include <cassert>

namespace stairtile {

bool tile_weakly_below_diagonal(const Rect& support, const Rect& tile) {
    // The half-plane x/W + y/H <= 1 (support coordinates); the tile's extreme
    // point is its NE corner. Cleared of denominators in doubled coordinates.
    using I128 = __int128;
    I128 w2 = support.size.x2;
    I128 h2 = support.size.y2;
    I128 dx = tile.ne().x2 - support.anchor.x2;
    I128 dy = tile.ne().y2 - support.anchor.y2;
    return h2 * dx + w2 * dy <= w2 * h2;
}

namespace {

void require_two_letter(const Word& w) {
    for (size_t i = 0; i < w.size(); ++i)
        if (w.at(i) != 1 && w.at(i) != 2)
            fail(ErrorKind::BadParameters, "staircases are defined for words over {1, 2}");
}

void require_budget(unsigned m, const Int& budget) {
    if (pow9(m) > budget)
        fail(ErrorKind::WordTooLong, "9^" + std::to_string(m) + " exceeds the tile budget of " +
                                         budget.str() + "; raise STAIRTILE_TILE_BUDGET to allow");
}

int64_t pow3_i64(unsigned m) {
    int64_t r = 1;
    while (m--) r *= 3;
    return r;
}

// Cells and blocks of the staircase region, in cell indices with the SW corner of
// the generation-(m+1) rectangle at (0, 0). Each level contributes three full
// 3u x u sub-rectangles below the diagonal and recurses into the three crossed ones.
struct RegionBuilder {
    std::vector<Vec2>* cells = nullptr;
    std::vector<DecompositionBlock>* blocks = nullptr;
    const Word* word = nullptr; // only consulted for block kinds

    void run(unsigned m, int64_t oi, int64_t oj) {
        if (m == 0) return;
        int64_t u = pow3_i64(m - 1);
        const Vec2 below[3] = {{0, 0}, {3 * u, 0}, {0, u}};
        const Vec2 crossed[3] = {{0, 2 * u}, {3 * u, u}, {6 * u, 0}};
        for (Vec2 b : below) emit_block(m, oi + b.x2, oj + b.y2, u);
        for (Vec2 c : crossed) run(m - 1, oi + c.x2, oj + c.y2);
    }

    void emit_block(unsigned gen, int64_t i0, int64_t j0, int64_t u) {
        bool square = word && word->at(gen - 1) == 1;
        if (blocks) {
            if (square) {
                for (int k = 0; k < 3; ++k)
                    blocks->push_back({static_cast<int>(gen), 'S',
                                       {{i0 + k * u, j0}, {u, u}}}); // still cell coords
            } else {
                blocks->push_back({static_cast<int>(gen), 'R', {{i0, j0}, {3 * u, u}}});
            }
        }
        if (cells)
            for (int64_t i = i0; i < i0 + 3 * u; ++i)
                for (int64_t j = j0; j < j0 + u; ++j) cells->push_back({i, j});
    }
};

std::vector<Vec2> region_cells_centered(unsigned m) {
    std::vector<Vec2> cells;
    RegionBuilder builder{&cells, nullptr, nullptr};
    builder.run(m, 0, 0);
    int64_t half_w = (pow3_i64(m + 1) - 1) / 2;
    int64_t half_h = (pow3_i64(m) - 1) / 2;
    for (auto& c : cells) c = {c.x2 - half_w, c.y2 - half_h};
    return cells;
}

} // namespace

StaircasePatch subdiagonal_patch(const Word& w, SeedAnchor mode, const Int& budget) {
    require_two_letter(w);
    unsigned m = static_cast<unsigned>(w.size());
    require_budget(m, budget);

    MixedSystem sys = builtin_system();
    int r_type = sys.protos->index_of("R");
    Patch seed = initial_tile_patch(sys.protos, r_type, mode);
    Patch full = act_left(sys, w, seed, predicted_tile_count(sys, w, seed));
    Rect frame = *full.support;

    StaircasePatch out;
    out.word = w;
    out.mode = mode;
    out.frame = frame;
    out.patch = Patch{full.protos, {}, std::nullopt};
    for (const auto& tile : full.tiles)
        if (tile_weakly_below_diagonal(frame, tile_rect(full, tile))) out.patch.tiles.push_back(tile);
    normalize(out.patch);
    out.window = window_A(m, budget);
    return out;
}

Int count_closed_form(const Word& w) {
    require_two_letter(w);
    unsigned m = static_cast<unsigned>(w.size());
    return pow9(m) - pow3(m) * (1 - digit_sum(w));
}

TypeCounts type_counts_closed_form(unsigned m) {
    Int p9 = pow9(m), p3 = pow3(m);
    TypeCounts tc;
    tc.squares = 3 * (p9 - p3 * (2 * m + 1)) / 4;
    tc.rects = (p9 + p3 * (2 * m - 1)) / 4;
    return tc;
}

Int window_area_closed_form(unsigned m) { return 3 * (pow9(m) - pow3(m)) / 2; }

Int window_perimeter_closed_form(unsigned m) { return 8 * pow3(m) - 8; }

CubeUnion window_A(unsigned m, const Int& budget) {
    require_budget(m, budget);
    return make_cube_union(region_cells_centered(m));
}

CubeUnion window_A(unsigned m, const Word& witness, const Int& budget) {
    if (witness.size() != m)
        fail(ErrorKind::BadParameters, "witness word length must equal the generation");
    return window_A(m, budget);
}

DecompositionCounts decomposition_counts(const Word& w) {
    require_two_letter(w);
    const unsigned m = static_cast<unsigned>(w.size());
    const IntMatrix mat = substitution_matrix(builtin_rule("sigma1")); // common to all letters
    const int s = 0, r = 1;

    DecompositionCounts out;
    out.total_tiles = 0;
    out.total_area = 0;
    IntMatrix power = IntMatrix::identity(2);
    for (unsigned j = 1; j <= m; ++j) {
        DecompositionRow row;
        row.generation = static_cast<int>(j);
        std::vector<Int> seed(2, Int(0));
        if (w.at(j - 1) == 1) {
            row.kind = 'S';
            row.block_count = 9 * pow3(m - j);
            row.block_area = pow9(j - 1);
            seed[s] = 1;
        } else {
            row.kind = 'R';
            row.block_count = 3 * pow3(m - j);
            row.block_area = 3 * pow9(j - 1);
            seed[r] = 1;
        }
        row.tiles_per_block = column_sum(power * seed);
        out.total_tiles += row.block_count * row.tiles_per_block;
        out.total_area += row.block_count * row.block_area;
        out.rows.push_back(std::move(row));
        power = power * mat;
    }
    assert(out.total_tiles == count_closed_form(w));
    assert(out.total_area == window_area_closed_form(m));
    return out;
}

std::vector<DecompositionBlock> decomposition_blocks(const Word& w, const Int& budget) {
    require_two_letter(w);
    unsigned m = static_cast<unsigned>(w.size());
    require_budget(m, budget);

    std::vector<DecompositionBlock> blocks;
    RegionBuilder builder{nullptr, &blocks, &w};
    builder.run(m, 0, 0);
    // Cell coordinates to doubled centered-frame coordinates.
    int64_t w2 = pow3_i64(m + 1), h2 = pow3_i64(m);
    for (auto& b : blocks)
        b.rect = Rect{{2 * b.rect.anchor.x2 - w2, 2 * b.rect.anchor.y2 - h2},
                      {2 * b.rect.size.x2, 2 * b.rect.size.y2}};
    return blocks;
}

} // namespace stairtile
