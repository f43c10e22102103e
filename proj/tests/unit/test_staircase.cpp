#include "stairtile/staircase.hpp"

#include <doctest.h>

#include <algorithm>

using namespace stairtile;

namespace {

IntMatrix count_matrix() {
    IntMatrix m(2);
    m.at(0, 0) = 6;
    m.at(0, 1) = 9;
    m.at(1, 0) = 1;
    m.at(1, 1) = 6;
    return m;
}

std::vector<Word> all_words(unsigned m) {
    std::vector<Word> out = {Word{}};
    for (unsigned i = 0; i < m; ++i) {
        std::vector<Word> next;
        for (const Word& w : out)
            for (uint8_t l : {uint8_t{1}, uint8_t{2}}) {
                Word e = w;
                e.letters.push_back(l);
                next.push_back(e);
            }
        out = next;
    }
    return out;
}

// Weakly above: the tile's SW corner lies on or above the NW-SE diagonal.
bool tile_weakly_above(const Rect& support, const Rect& tile) {
    __int128 w2 = support.size.x2, h2 = support.size.y2;
    __int128 dx = tile.anchor.x2 - support.anchor.x2;
    __int128 dy = tile.anchor.y2 - support.anchor.y2;
    return h2 * dx + w2 * dy >= w2 * h2;
}

} // namespace

TEST_CASE("one-step staircases") {
    StaircasePatch s1 = subdiagonal_patch(Word::from_string("1"), SeedAnchor::Corner);
    CHECK(s1.patch.tiles.size() == 9);
    std::vector<Int> t1 = type_count_vector(s1.patch);
    CHECK(t1[0] == 9);
    CHECK(t1[1] == 0);

    StaircasePatch s2 = subdiagonal_patch(Word::from_string("2"), SeedAnchor::Corner);
    REQUIRE(s2.patch.tiles.size() == 3);
    for (const PlacedTile& t : s2.patch.tiles) CHECK(t.type == 1);
    CHECK(s2.patch.tiles[0].anchor == Vec2{0, 0});
    CHECK(s2.patch.tiles[1].anchor == Vec2{6, 0});
    CHECK(s2.patch.tiles[2].anchor == Vec2{0, 2});
    CHECK(s2.frame == Rect{{0, 0}, {18, 6}});
}

TEST_CASE("closed-form count 9^m - 3^m (1 - D) matches enumeration for all short words") {
    for (unsigned m = 0; m <= 4; ++m)
        for (const Word& w : all_words(m)) {
            StaircasePatch s = subdiagonal_patch(w, SeedAnchor::Corner);
            CHECK(Int(s.patch.tiles.size()) == count_closed_form(w));
        }
    CHECK(count_closed_form(Word::from_string("222")) == 621);
    CHECK(count_closed_form(Word::from_string("111")) == 783); // 9^3 + 2*3^3
    CHECK(count_closed_form(Word::from_string("112")) == 729); // D = 1 kills the 3^m term
}

TEST_CASE("type counts for the all-2s words") {
    for (unsigned m = 1; m <= 3; ++m) {
        StaircasePatch s = subdiagonal_patch(constant_word(2, m), SeedAnchor::Corner);
        std::vector<Int> got = type_count_vector(s.patch);
        TypeCounts want = type_counts_closed_form(m);
        CHECK(got[0] == want.squares);
        CHECK(got[1] == want.rects);
        CHECK(want.squares + want.rects == count_closed_form(constant_word(2, m)));
    }
    CHECK(type_counts_closed_form(1).squares == 0);
    CHECK(type_counts_closed_form(1).rects == 3);
    CHECK(type_counts_closed_form(2).squares == 27);
    CHECK(type_counts_closed_form(2).rects == 27);
}

TEST_CASE("window closed forms and the explicit m=1 region") {
    CubeUnion a1 = window_A(1);
    REQUIRE(a1.area() == 9);
    for (int64_t x = -4; x <= 1; ++x) CHECK(a1.contains({x, -1}));
    for (int64_t x = -4; x <= -2; ++x) CHECK(a1.contains({x, 0}));
    CHECK(perimeter(a1) == 16);

    for (unsigned m = 1; m <= 5; ++m) {
        CubeUnion a = window_A(m);
        CHECK(a.area() == window_area_closed_form(m));
        CHECK(perimeter(a) == window_perimeter_closed_form(m));
    }
    CHECK(window_area_closed_form(3) == 1053);
    CHECK(window_perimeter_closed_form(3) == 208);
}

TEST_CASE("window is word-independent and equals the covered cubes in centered mode") {
    for (unsigned m = 1; m <= 3; ++m)
        for (const Word& w : all_words(m)) {
            StaircasePatch s = subdiagonal_patch(w, SeedAnchor::Centered);
            CubeUnion covered = cube_union_of_patch(s.patch);
            CHECK(covered.cells == s.window.cells);
            CHECK(covered.cells == window_A(m).cells);
        }
}

TEST_CASE("corner and centered staircases are translates") {
    Word w = Word::from_string("212");
    StaircasePatch corner = subdiagonal_patch(w, SeedAnchor::Corner);
    StaircasePatch centered = subdiagonal_patch(w, SeedAnchor::Centered);
    Vec2 shift = centered.frame.anchor - corner.frame.anchor;
    CHECK(same_tiles(translate(corner.patch, shift), centered.patch));
    CHECK(corner.window.cells == centered.window.cells);
}

TEST_CASE("tiles crossing the diagonal are always rectangles") {
    MixedSystem sys = builtin_system();
    for (unsigned m = 1; m <= 4; ++m)
        for (const Word& w : {constant_word(1, m), constant_word(2, m),
                              gamma_word(Rat(0), m)}) {
            Patch full = act_left(sys, w, initial_tile_patch(sys.protos, 1, SeedAnchor::Corner));
            Rect support = *full.support;
            for (const PlacedTile& t : full.tiles) {
                Rect r = tile_rect(full, t);
                bool below = tile_weakly_below_diagonal(support, r);
                bool above = tile_weakly_above(support, r);
                if (!below && !above) CHECK(t.type == 1);
            }
        }
}

TEST_CASE("decomposition counts for the word (1,1,2)") {
    Word w = Word::from_string("112");
    DecompositionCounts d = decomposition_counts(w);
    REQUIRE(d.rows.size() == 3);

    CHECK(d.rows[0].generation == 1);
    CHECK(d.rows[0].kind == 'S');
    CHECK(d.rows[0].block_count == 81);
    CHECK(d.rows[0].tiles_per_block == 1);
    CHECK(d.rows[0].block_area == 1);

    CHECK(d.rows[1].kind == 'S');
    CHECK(d.rows[1].block_count == 27);
    CHECK(d.rows[1].tiles_per_block == 7); // column sum of M e_S
    CHECK(d.rows[1].block_area == 9);

    CHECK(d.rows[2].kind == 'R');
    CHECK(d.rows[2].block_count == 3);
    CHECK(d.rows[2].tiles_per_block == 153); // column sum of M^2 e_R
    CHECK(d.rows[2].block_area == 243);

    CHECK(d.total_tiles == 729);
    CHECK(d.total_tiles == count_closed_form(w));
    CHECK(d.total_area == 1053);
}

TEST_CASE("decomposition rows follow the matrix powers for every word") {
    IntMatrix m = count_matrix();
    for (unsigned len = 1; len <= 5; ++len)
        for (const Word& w : all_words(len)) {
            DecompositionCounts d = decomposition_counts(w);
            REQUIRE(d.rows.size() == len);
            Int total_tiles = 0, total_area = 0;
            IntMatrix power = IntMatrix::identity(2);
            for (unsigned j = 1; j <= len; ++j) {
                const DecompositionRow& row = d.rows[j - 1];
                bool square = w.at(j - 1) == 1;
                CHECK(row.kind == (square ? 'S' : 'R'));
                CHECK(row.block_count == Int(square ? 9 : 3) * pow3(len - j));
                std::vector<Int> e = {square ? 1 : 0, square ? 0 : 1};
                std::vector<Int> img = power * e;
                CHECK(row.tiles_per_block == img[0] + img[1]);
                CHECK(row.block_area == Int(square ? 1 : 3) * pow9(j - 1));
                total_tiles += row.block_count * row.tiles_per_block;
                total_area += row.block_count * row.block_area;
                power = power * m;
            }
            CHECK(total_tiles == d.total_tiles);
            CHECK(d.total_tiles == count_closed_form(w));
            CHECK(total_area == d.total_area);
            CHECK(d.total_area == window_area_closed_form(len));
        }
}

TEST_CASE("decomposition blocks tile the window exactly") {
    for (const char* digits : {"112", "221", "12"}) {
        Word w = Word::from_string(digits);
        unsigned m = static_cast<unsigned>(w.size());
        std::vector<DecompositionBlock> blocks = decomposition_blocks(w);
        DecompositionCounts counts = decomposition_counts(w);

        std::vector<Vec2> cells;
        for (const DecompositionBlock& b : blocks) {
            CHECK((b.rect.anchor.x2 % 2 != 0 && b.rect.anchor.y2 % 2 != 0));
            for (int64_t x = 0; x < b.rect.size.x2 / 2; ++x)
                for (int64_t y = 0; y < b.rect.size.y2 / 2; ++y)
                    cells.push_back({(b.rect.anchor.x2 + 1) / 2 + x,
                                     (b.rect.anchor.y2 + 1) / 2 + y});
        }
        CubeUnion from_blocks = make_cube_union(cells); // throws on overlap
        CHECK(from_blocks.cells == window_A(m).cells);

        for (const DecompositionRow& row : counts.rows) {
            Int seen = 0;
            for (const DecompositionBlock& b : blocks)
                if (b.generation == row.generation) {
                    ++seen;
                    CHECK(b.kind == row.kind);
                    CHECK(Int(b.rect.size.x2 / 2) * (b.rect.size.y2 / 2) == row.block_area);
                }
            CHECK(seen == row.block_count);
        }
    }
}

TEST_CASE("budget and alphabet guards") {
    CHECK_THROWS_AS(subdiagonal_patch(constant_word(2, 2), SeedAnchor::Corner, Int(10)), Error);
    CHECK_THROWS_AS(subdiagonal_patch(Word::from_string("13"), SeedAnchor::Corner), Error);
    CHECK_NOTHROW(subdiagonal_patch(Word{}, SeedAnchor::Corner));
}
