#include <doctest.h>

#include "gnf/rational.hpp"

using gnf::Rat;

TEST_CASE("rational arithmetic stays normalized") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-3, -6) == Rat(1, 2));
    CHECK(Rat(3, -6) == Rat(-1, 2));
    CHECK((Rat(1, 3) + Rat(1, 6)) == Rat(1, 2));
    CHECK((Rat(7, 2) - Rat(3)) == Rat(1, 2));
    CHECK((Rat(3, 4) * Rat(2, 9)) == Rat(1, 6));
    CHECK((Rat(3, 4) / Rat(3, 2)) == Rat(1, 2));
    CHECK(Rat(0, 5) == Rat(0));
    CHECK((Rat(1, 2) < Rat(2, 3)));
    CHECK((Rat(-5, 2) < Rat(-2)));
    CHECK(abs(Rat(-7, 3)) == Rat(7, 3));
}

TEST_CASE("rational parsing") {
    CHECK(Rat::parse("57/50") == Rat(57, 50));
    CHECK(Rat::parse("-3") == Rat(-3));
    CHECK(Rat::parse("1.14") == Rat(57, 50));
    CHECK(Rat::parse("-0.25") == Rat(-1, 4));
    CHECK_THROWS_AS(Rat::parse("2."), std::invalid_argument);
    CHECK_THROWS_AS(Rat::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rat::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rat::parse("x"), std::invalid_argument);
    CHECK(Rat(7).str() == "7");
    CHECK(Rat(-3, 9).str() == "-1/3");
}

TEST_CASE("rational overflow is detected, not wrapped") {
    Rat big(1'000'000'007LL, 3);
    Rat huge = big;
    CHECK_THROWS_AS(
        [&] {
            for (int i = 0; i < 8; ++i) huge *= huge;
            return huge;
        }(),
        gnf::RationalOverflow);
}

TEST_CASE("division by zero throws") {
    CHECK_THROWS_AS(Rat(1) / Rat(0), std::invalid_argument);
    CHECK_THROWS_AS(Rat(1, 0), std::invalid_argument);
}
