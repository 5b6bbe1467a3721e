#include <doctest.h>

#include "mfk/polynomial.hpp"
#include "test_support.hpp"

using namespace mfk;
using mfk_test::Rng;

TEST_CASE("arithmetic on the documented examples") {
    auto v = make_vars({"x", "y"});
    CHECK(parse_polynomial("(x+y)*(x-y)", v) == parse_polynomial("x^2-y^2", v));
    Polynomial p = parse_polynomial("3*x*y - 1/2*y^2", v);
    CHECK(p + Polynomial::zero(v) == p);
    CHECK(parse_polynomial("x", v) * parse_polynomial("y", v) == parse_polynomial("x*y", v));
}

TEST_CASE("parser handles precedence, rationals and whitespace") {
    auto v = make_vars({"x", "y", "z_1"});
    CHECK(parse_polynomial("1/2*x^2", v) ==
          parse_polynomial("x*x", v).scaled(Rat(1, 2)));
    CHECK(parse_polynomial("-x^2", v) == -parse_polynomial("x^2", v));
    CHECK(parse_polynomial("x - - y", v) == parse_polynomial("x + y", v));
    CHECK(parse_polynomial("  x *y -  z_1^3 ", v) == parse_polynomial("x*y-z_1^3", v));
    CHECK(parse_polynomial("2^3", v) == Polynomial::constant(v, 8));
    CHECK_THROWS_AS(parse_polynomial("x + q", v), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x +", v), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x / 2", v), ParseError);
}

TEST_CASE("printing is canonical and round-trips") {
    auto v = make_vars({"x", "y"});
    Rng rng(7001);
    for (int i = 0; i < 40; ++i) {
        Polynomial p = mfk_test::random_poly(rng, v, 4, 6, false);
        CHECK(parse_polynomial(p.to_string(), v) == p);
    }
    CHECK(Polynomial::zero(v).to_string() == "0");
    CHECK(parse_polynomial("y+x", v).to_string() == "x + y");
}

TEST_CASE("ring axioms hold exactly on random polynomials") {
    auto v = make_vars({"x", "y", "z"});
    Rng rng(7002);
    for (int i = 0; i < 25; ++i) {
        Polynomial a = mfk_test::random_poly(rng, v, 3, 4, false);
        Polynomial b = mfk_test::random_poly(rng, v, 3, 4, false);
        Polynomial c = mfk_test::random_poly(rng, v, 3, 4, false);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Polynomial::zero(v));
    }
}

TEST_CASE("variable list mismatch is an error") {
    auto v1 = make_vars({"x", "y"});
    auto v2 = make_vars({"x", "z"});
    CHECK_THROWS_AS(parse_polynomial("x", v1) + parse_polynomial("x", v2), VarMismatchError);
}

TEST_CASE("derivative and substitution") {
    auto v = make_vars({"x", "y"});
    Polynomial w = parse_polynomial("x^3 + x*y^2", v);
    CHECK(w.derivative(0) == parse_polynomial("3*x^2 + y^2", v));
    CHECK(w.derivative(1) == parse_polynomial("2*x*y", v));

    std::vector<bool> flip{true, false};
    CHECK(w.with_flipped_signs(flip) == parse_polynomial("-x^3 - x*y^2", v));

    auto target = make_vars({"u", "v"});
    std::vector<Polynomial> images{parse_polynomial("u+v", target), parse_polynomial("u", target)};
    CHECK(w.substituted(target, images) ==
          parse_polynomial("(u+v)^3 + (u+v)*u^2", target));
}

TEST_CASE("degrevlex order on standard examples") {
    auto ord = MonomialOrder::degrevlex();
    // In two variables: x^2 > x y > y^2 > x > y > 1.
    Monomial x2({2, 0}), xy({1, 1}), y2({0, 2}), x({1, 0}), y({0, 1}), one({0, 0});
    CHECK(ord.greater(x2, xy));
    CHECK(ord.greater(xy, y2));
    CHECK(ord.greater(y2, x));
    CHECK(ord.greater(x, y));
    CHECK(ord.greater(y, one));
}
