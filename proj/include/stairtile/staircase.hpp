#pragma once

#include "stairtile/rules.hpp"

#include <vector>

namespace stairtile {

// Tiles of a mixed-substitution image of the 3x1 rectangle lying weakly below the
// NW-SE diagonal of its support; the diagonal-crossing tiles are always rectangles
// and are excluded.
struct StaircasePatch {
    Word word;
    SeedAnchor mode = SeedAnchor::Corner;
    Rect frame;      // support of the unfiltered image (the diagonal's rectangle)
    Patch patch;     // the sub-diagonal tiles
    CubeUnion window; // the covered region in the centered frame, as unit cubes
};

// True when the tile's closed rectangle lies in the closed half-plane under the
// diagonal from the support's NW corner to its SE corner. Exact integer test.
bool tile_weakly_below_diagonal(const Rect& support, const Rect& tile);

// Error(WordTooLong) when 9^|w| exceeds the budget; words over {1, 2} only.
StaircasePatch subdiagonal_patch(const Word& w, SeedAnchor mode,
                                 const Int& budget = default_tile_budget());

// Tile count of the staircase: 9^m - 3^m * (1 - D(w)) with D the digit sum.
Int count_closed_form(const Word& w);

struct TypeCounts {
    Int squares;
    Int rects;
};

// For the all-2s word of length m: squares (3/4)(9^m - 3^m(2m+1)),
// rectangles (1/4)(9^m + 3^m(2m-1)).
TypeCounts type_counts_closed_form(unsigned m);

Int window_area_closed_form(unsigned m);      // (3/2)(9^m - 3^m)
Int window_perimeter_closed_form(unsigned m); // 8*3^m - 8

// The staircase region of generation m as unit cubes in the centered frame
// (SW corner at (-3^(m+1)/2, -3^m/2)). Shape is word-independent.
CubeUnion window_A(unsigned m, const Int& budget = default_tile_budget());
// Interface-symmetric variant; requires |witness| == m and ignores the letters.
CubeUnion window_A(unsigned m, const Word& witness, const Int& budget = default_tile_budget());

// Per-generation block structure of the staircase: generation j (1 = finest)
// contributes 9*3^(m-j) squares of side 3^(j-1) when the j-th letter is 1, else
// 3*3^(m-j) rectangles 3^j x 3^(j-1); each block holds the letter-(j-1)-prefix
// image of its prototile.
struct DecompositionRow {
    int generation = 0;
    char kind = 'S'; // 'S' or 'R'
    Int block_count;
    Int tiles_per_block;
    Int block_area; // whole units
};

struct DecompositionCounts {
    std::vector<DecompositionRow> rows;
    Int total_tiles;
    Int total_area;
};

DecompositionCounts decomposition_counts(const Word& w);

// Block rectangles in the centered frame (doubled coordinates), for overlays and
// structural tests.
struct DecompositionBlock {
    int generation = 0;
    char kind = 'S';
    Rect rect;
};

std::vector<DecompositionBlock> decomposition_blocks(const Word& w,
                                                     const Int& budget = default_tile_budget());

} // namespace stairtile
