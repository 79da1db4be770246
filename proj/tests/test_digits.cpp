#include "doctest.h"
#include "exo/digits.hpp"
#include "support/digit_oracle.hpp"

using namespace exo;
using exo::testing::oracle_digits;

TEST_CASE("MPFR oracle agrees with an independent base-10 spigot") {
    const auto spigot = exo::testing::spigot_pi(1001);
    const auto mp = oracle_digits(MathConstant::Pi, 10, 1000);
    std::string mp_text;
    for (auto d : mp) mp_text += static_cast<char>('0' + d);
    CHECK(mp_text == spigot.substr(0, 1000));
}

TEST_CASE("pi and e in base 10 start with the familiar digits") {
    CHECK(constant_digits(MathConstant::Pi, 10, 8) == std::vector<std::uint8_t>{3, 1, 4, 1, 5, 9, 2, 6});
    CHECK(constant_digits(MathConstant::E, 10, 8) == std::vector<std::uint8_t>{2, 7, 1, 8, 2, 8, 1, 8});
}

TEST_CASE("integer part occupies several digits when the base is small") {
    // pi = 11.001001000011111101101010100010... in base 2
    CHECK(constant_digits(MathConstant::Pi, 2, 10) == std::vector<std::uint8_t>{1, 1, 0, 0, 1, 0, 0, 1, 0, 0});
    // e = 10.1011011111100001... in base 2
    CHECK(constant_digits(MathConstant::E, 2, 6) == std::vector<std::uint8_t>{1, 0, 1, 0, 1, 1});
    // pi = 3.0210033312222... in base 4
    CHECK(constant_digits(MathConstant::Pi, 4, 6) == std::vector<std::uint8_t>{3, 0, 2, 1, 0, 0});
}

TEST_CASE("digit streams match the oracle in every base up to 62") {
    for (unsigned base = 2; base <= 62; ++base) {
        CAPTURE(base);
        CHECK(constant_digits(MathConstant::Pi, base, 300) == oracle_digits(MathConstant::Pi, base, 300));
        CHECK(constant_digits(MathConstant::E, base, 300) == oracle_digits(MathConstant::E, base, 300));
    }
}

TEST_CASE("long stream in base 5 matches the oracle") {
    CHECK(constant_digits(MathConstant::Pi, 5, 3000) == oracle_digits(MathConstant::Pi, 5, 3000));
}

TEST_CASE("cached single-digit access agrees with the batch expansion") {
    const auto batch = constant_digits(MathConstant::E, 7, 500);
    for (std::size_t t : {0u, 1u, 2u, 99u, 250u, 499u}) CHECK(constant_digit(MathConstant::E, 7, t) == batch[t]);
    // Growing past the cached prefix keeps earlier digits stable.
    CHECK(constant_digit(MathConstant::E, 7, 1999) == oracle_digits(MathConstant::E, 7, 2000)[1999]);
    CHECK(constant_digit(MathConstant::E, 7, 0) == batch[0]);
}

TEST_CASE("base 1 is all zeros") {
    CHECK(constant_digits(MathConstant::Pi, 1, 5) == std::vector<std::uint8_t>(5, 0));
}
