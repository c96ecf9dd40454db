#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "wedgehs/rational.hpp"

using wedgehs::Integer;
using wedgehs::Rational;

TEST_CASE("construction normalizes to canonical form") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(0, 5) == Rational(0));
    CHECK(Rational(0, 5).denominator() == 1);
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(3, -6).denominator() == 2);
    CHECK(Rational(7).denominator() == 1);
}

TEST_CASE("zero denominator is rejected") {
    CHECK_THROWS_AS(Rational(1, 0), wedgehs::division_by_zero);
    CHECK_THROWS_AS(Rational(3) / Rational(0), wedgehs::division_by_zero);
    CHECK_THROWS_AS(Rational(0).inverse(), wedgehs::division_by_zero);
}

TEST_CASE("field arithmetic examples") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 2) == Rational(0));
    CHECK(Rational(2, 3) * Rational(3, 2) == Rational(1));
    CHECK(Rational(7, 3) / Rational(7, 3) == Rational(1));
    CHECK(-Rational(5, 8) == Rational(-5, 8));
    CHECK(Rational(-5, 8).inverse() == Rational(-8, 5));
}

TEST_CASE("comparisons cross-multiply") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(2, 4) <= Rational(1, 2));
    CHECK(Rational(7, 2) > Rational(3));
}

TEST_CASE("field axioms on random values") {
    std::mt19937 rng(912);
    for (int i = 0; i < 200; ++i) {
        Rational a = oracles::random_rational(rng);
        Rational b = oracles::random_rational(rng);
        Rational c = oracles::random_rational(rng);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a + Rational(0) == a);
        CHECK(a * Rational(1) == a);
        if (!a.is_zero()) {
            CHECK(a * a.inverse() == Rational(1));
            CHECK(b / a * a == b);
        }
        // canonical form is reachable in one step: renormalizing changes nothing
        CHECK(Rational(a.numerator(), a.denominator()) == a);
        CHECK(a.denominator() > 0);
    }
}

TEST_CASE("string round trip") {
    CHECK(Rational(1, 2).str() == "1/2");
    CHECK(Rational(-7).str() == "-7");
    CHECK(Rational(0).str() == "0");
    CHECK(Rational::from_string("22/7") == Rational(22, 7));
    CHECK(Rational::from_string("-22/7") == Rational(-22, 7));
    CHECK(Rational::from_string("22/-7") == Rational(-22, 7));
    CHECK(Rational::from_string("+3") == Rational(3));
    CHECK(Rational::from_string("4/6") == Rational(2, 3));

    std::mt19937 rng(913);
    for (int i = 0; i < 100; ++i) {
        Rational a = oracles::random_rational(rng);
        CHECK(Rational::from_string(a.str()) == a);
    }
}

TEST_CASE("malformed rational literals are rejected") {
    for (const char* bad : {"", "1.5", "1/2/3", "a", "1/", "/2", "--3", "2 /3", "0x10"})
        CHECK_THROWS_AS(Rational::from_string(bad), wedgehs::parse_error);
    CHECK_THROWS_AS(Rational::from_string("1/0"), wedgehs::parse_error);
}

TEST_CASE("factorial") {
    CHECK(wedgehs::factorial(0) == 1);
    CHECK(wedgehs::factorial(1) == 1);
    CHECK(wedgehs::factorial(5) == 120);
    CHECK(wedgehs::factorial(12) == 479001600);
    Integer acc = 1;
    for (unsigned n = 1; n <= 20; ++n) {
        acc *= n;
        CHECK(wedgehs::factorial(n) == acc);
    }
}

TEST_CASE("big values stay exact") {
    // 100! / 99! must come back as exactly 100 with no drift.
    Rational big(wedgehs::factorial(100));
    Rational smaller(wedgehs::factorial(99));
    CHECK(big / smaller == Rational(100));
    Rational tiny = Rational(1) / big;
    CHECK(tiny * big == Rational(1));
}
