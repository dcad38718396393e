#include "oraclesim/rational.hpp"

#include "doctest.h"
#include "oraclesim/errors.hpp"

using namespace oraclesim;

TEST_CASE("rational strings parse exactly") {
    CHECK(rat_from_string("3/4") == Rat(3, 4));
    CHECK(rat_from_string("-3/4") == Rat(-3, 4));
    CHECK(rat_from_string("+3/4") == Rat(3, 4));
    CHECK(rat_from_string("7") == Rat(7));
    CHECK(rat_from_string("-12") == Rat(-12));
    CHECK(rat_from_string("0") == Rat(0));
    CHECK(rat_from_string("6/4") == Rat(3, 2));  // normalized
}

TEST_CASE("decimal strings convert without rounding") {
    CHECK(rat_from_string("0.5") == Rat(1, 2));
    CHECK(rat_from_string("-0.35") == Rat(-7, 20));
    CHECK(rat_from_string(".5") == Rat(1, 2));
    CHECK(rat_from_string("-.5") == Rat(-1, 2));
    CHECK(rat_from_string("2.25") == Rat(9, 4));
}

TEST_CASE("malformed rational strings are config errors") {
    CHECK_THROWS_AS(rat_from_string(""), ConfigError);
    CHECK_THROWS_AS(rat_from_string("abc"), ConfigError);
    CHECK_THROWS_AS(rat_from_string("1/0"), ConfigError);
    CHECK_THROWS_AS(rat_from_string("1/2/3"), ConfigError);
    CHECK_THROWS_AS(rat_from_string("1e5"), ConfigError);
    CHECK_THROWS_AS(rat_from_string("1.2.3"), ConfigError);
    CHECK_THROWS_AS(rat_from_string(" 1"), ConfigError);
    CHECK_THROWS_AS(rat_from_string("1 "), ConfigError);
    CHECK_THROWS_AS(rat_from_string("--3"), ConfigError);
    CHECK_THROWS_AS(rat_from_string("/3"), ConfigError);
    CHECK_THROWS_AS(rat_from_string("3/"), ConfigError);
    CHECK_THROWS_AS(rat_from_string("2."), ConfigError);
}

TEST_CASE("rational rendering is canonical and round trips") {
    CHECK(rat_to_string(Rat(3, 4)) == "3/4");
    CHECK(rat_to_string(Rat(-3, 4)) == "-3/4");
    CHECK(rat_to_string(Rat(7)) == "7");
    CHECK(rat_to_string(Rat(6, 4)) == "3/2");
    CHECK(rat_to_string(Rat(0)) == "0");

    const char* samples[] = {"3/4", "-3/4", "7", "0", "1000000007/13"};
    for (const char* s : samples) {
        CHECK(rat_to_string(rat_from_string(s)) == s);
    }
}

TEST_CASE("integrality and floor behave on negatives") {
    CHECK(rat_is_integer(Rat(4, 2)));
    CHECK(!rat_is_integer(Rat(1, 2)));
    CHECK(rat_floor(Rat(7, 2)) == 3);
    CHECK(rat_floor(Rat(-7, 2)) == -4);
    CHECK(rat_floor(Rat(6)) == 6);
    CHECK(rat_floor(Rat(-6)) == -6);
}

TEST_CASE("arithmetic stays exact far past double precision") {
    // 1/3 + 1/3 + 1/3 == 1 exactly, and a big-denominator sum keeps every digit.
    Rat third(1, 3);
    Rat one = third + third + third;
    CHECK(one == Rat(1));

    Rat tiny(1, 1000000007);
    Rat total = 0;
    for (int i = 0; i < 1000; ++i) total += tiny;
    Rat expected(1000, 1000000007);
    CHECK(total == expected);
}
