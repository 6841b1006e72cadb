#include "fractaldim/exact.hpp"

#include <doctest.h>

#include <cmath>

using namespace fractaldim;

TEST_SUITE("exact") {

TEST_CASE("bit_length and pow") {
    CHECK(bit_length(BigInt(1)) == 1);
    CHECK(bit_length(BigInt(2)) == 2);
    CHECK(bit_length(BigInt(255)) == 8);
    CHECK(bit_length(pow_big(BigInt(2), 100)) == 101);
    CHECK(pow_big(BigInt(3), 5) == 243);
    CHECK(pow_big(BigInt(7), 0) == 1);
}

TEST_CASE("log_big accuracy") {
    CHECK(log_big(BigInt(1)) == doctest::Approx(0.0));
    CHECK(static_cast<double>(log_big(BigInt(2))) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    // 3^200: compare against 200 ln 3
    const BigInt big = pow_big(BigInt(3), 200);
    CHECK(static_cast<double>(log_big(big)) ==
          doctest::Approx(200.0 * std::log(3.0)).epsilon(1e-15));
    CHECK_THROWS_AS(log_big(BigInt(0)), std::domain_error);
}

TEST_CASE("iroot_floor") {
    CHECK(iroot_floor(BigInt(1000), 2) == 31);
    CHECK(iroot_floor(BigInt(2), 2) == 1);
    CHECK(iroot_floor(BigInt(27), 3) == 3);
    CHECK(iroot_floor(BigInt(26), 3) == 2);
    CHECK(iroot_floor(BigInt(0), 4) == 0);
    // f = iroot_floor(x, s) satisfies f^s <= x < (f+1)^s
    for (int x : {5, 17, 64, 12345}) {
        for (unsigned s : {2u, 3u, 5u}) {
            const BigInt f = iroot_floor(BigInt(x), s);
            CHECK(pow_big(f, s) <= x);
            CHECK(pow_big(f + 1, s) > x);
        }
    }
}

TEST_CASE("parse_rational") {
    CHECK(parse_rational("3/10") == BigRat(3, 10));
    CHECK(parse_rational("0.3") == BigRat(3, 10));
    CHECK(parse_rational("-0.25") == BigRat(-1, 4));
    CHECK(parse_rational("7") == BigRat(7));
    CHECK(parse_rational(" 1 / 2 ") == BigRat(1, 2));
    CHECK(parse_rational(".5") == BigRat(1, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::exception);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("rational_to_string round trip") {
    for (const char* s : {"3/10", "-7/3", "5", "0"}) {
        const BigRat r = parse_rational(s);
        CHECK(parse_rational(rational_to_string(r)) == r);
    }
}

TEST_CASE("rat_to_double") {
    CHECK(rat_to_double(BigRat(1, 2)) == 0.5);
    CHECK(rat_to_double(BigRat(-3, 4)) == -0.75);
    CHECK(rat_to_double(BigRat(0)) == 0.0);
    // huge numerator/denominator pair close to 2/3
    const BigInt big = pow_big(BigInt(10), 50);
    CHECK(rat_to_double(BigRat(2 * big, 3 * big)) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("fnv hash is stable") {
    CHECK(fnv1a64("") == 14695981039346656037ULL);
    CHECK(fnv1a64("a") != fnv1a64("b"));
    CHECK(hex64(0) == "0000000000000000");
    CHECK(hex64(0xdeadbeefULL) == "00000000deadbeef");
}

} // TEST_SUITE
