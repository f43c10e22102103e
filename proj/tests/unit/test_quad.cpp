#include "stairtile/quad.hpp"

#include <doctest.h>

#include <cmath>

using namespace stairtile;

TEST_CASE("normalization") {
    CHECK(Quad::rational(2, 4) == Quad::rational(1, 2));
    CHECK(Quad::rational(3, -6) == Quad::rational(-1, 2));
    CHECK(Quad::make(0, 2, 9, 1) == Quad::rational(6)); // 2 sqrt(9) folds
    CHECK(Quad::make(1, 0, 6, 2) == Quad::rational(1, 2));
    CHECK(Quad::root_multiple(2, 6, 4) == Quad::root_multiple(1, 6, 2));
    CHECK_THROWS_AS(Quad::rational(1, 0), Error);
    CHECK_THROWS_AS(Quad::make(1, 1, -2, 1), Error);
}

TEST_CASE("arithmetic in one quadratic field") {
    Quad r6 = Quad::root_multiple(1, 6);
    Quad x = Quad::make(1, 1, 6, 3);  // (1 + sqrt 6)/3
    Quad y = Quad::make(-2, 1, 6, 2); // (-2 + sqrt 6)/2
    CHECK(x + y == Quad::make(-4, 5, 6, 6));
    CHECK(x - y == Quad::make(8, -1, 6, 6));
    CHECK(x * y == Quad::make(4, -1, 6, 6)); // (1+s)(-2+s) = 4 - s, over 6
    CHECK(r6 * r6 == Quad::rational(6));
    CHECK(-x == Quad::make(-1, -1, 6, 3));
    CHECK_THROWS_AS(Quad::root_multiple(1, 2) + Quad::root_multiple(1, 3), Error);
    CHECK(Quad::rational(5) + Quad::root_multiple(1, 6) == Quad::make(5, 1, 6, 1));
}

TEST_CASE("exact comparison near ties") {
    // sqrt(6) vs 2.449489742783178... : compare against nearby rationals.
    Quad r6 = Quad::root_multiple(1, 6);
    CHECK(quad_lt(Quad::rational(2449489742783178, 1000000000000000), r6));
    CHECK(quad_lt(r6, Quad::rational(2449489742783179, 1000000000000000)));
    CHECK(quad_cmp(r6, r6) == 0);
    CHECK(sign(Quad::make(-5, 2, 6, 7)) < 0);  // 2 sqrt6 = 4.898 < 5
    CHECK(sign(Quad::make(-4, 2, 6, 7)) > 0);
    CHECK(sign(Quad::rational(0)) == 0);
    // Opposite-sign comparison squares both sides; keep one negative operand.
    CHECK(quad_lt(Quad::make(0, -1, 6, 1), Quad::rational(-2)));
}

TEST_CASE("floor is exact at integer boundaries") {
    CHECK(floor_int(Quad::rational(7, 2)) == 3);
    CHECK(floor_int(Quad::rational(-7, 2)) == -4);
    CHECK(floor_int(Quad::rational(4)) == 4);
    CHECK(floor_int(Quad::root_multiple(1, 6)) == 2);
    CHECK(floor_int(Quad::root_multiple(-1, 6)) == -3);
    CHECK(floor_int(Quad::make(0, 2, 9, 1)) == 6); // exact integer after folding
    // 5 sqrt(6) = 12.247...
    CHECK(floor_int(Quad::root_multiple(5, 6)) == 12);
    CHECK(floor_int(Quad::root_multiple(-5, 6)) == -13);
}

TEST_CASE("doubles and strings") {
    CHECK(Quad::make(1, 1, 6, 3).to_double() ==
          doctest::Approx((1 + std::sqrt(6.0)) / 3));
    CHECK(Quad::rational(-3, 2).to_double() == doctest::Approx(-1.5));
    CHECK(Quad::rational(5).to_string() == "5");
    CHECK(Quad::root_multiple(1, 6).to_string().find("sqrt(6)") != std::string::npos);
}

TEST_CASE("overflow guards fail loudly") {
    int64_t big = int64_t{1} << 60;
    Quad huge = Quad::rational(big);
    CHECK_THROWS_AS(huge * huge, Error); // the product component leaves int64
    // Sign tests that would need squaring past the headroom refuse instead of lying.
    Quad wide = Quad::make(-(int64_t{1} << 56), 1, 6, 1);
    CHECK_THROWS_AS(sign(wide), Error);
}
