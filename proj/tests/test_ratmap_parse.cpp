#include "doctest.h"

#include "rittlab/parse.hpp"
#include "rittlab/ratmap.hpp"

using namespace rittlab;

TEST_CASE("construction reduces to lowest terms and canonical scale") {
    Poly z = Poly::monomial(GQ(1), 1);
    RatMap r((z * z - Poly(GQ(1))).scaled(GQ(3)), (z - Poly(GQ(1))).scaled(GQ(6)));
    CHECK(r.is_polynomial());
    CHECK(r.degree() == 1);
    CHECK(r == parse_ratmap("1/2*z+1/2"));

    CHECK(RatMap(Poly::zero(), z) == RatMap(Poly::zero(), Poly::one()));
    CHECK_THROWS_AS(RatMap(z, Poly::zero()), std::domain_error);
}

TEST_CASE("parser handles precedence, composition, and literals") {
    CHECK(parse_ratmap("z^2+2*z+1") == parse_ratmap("(z+1)^2"));
    CHECK(parse_ratmap("2+3*z") == parse_ratmap("3*z+2"));
    CHECK(parse_ratmap("1/2") == RatMap(Poly(GQ(BigRat(1, 2)))));
    CHECK(parse_ratmap("1/z") == parse_ratmap("(1)/(z)"));
    CHECK(parse_ratmap("3-2") == RatMap(Poly(GQ(1))));
    CHECK(parse_ratmap("3--2") == RatMap(Poly(GQ(5))));
    CHECK(parse_ratmap("i^2") == RatMap(Poly(GQ(-1))));
    CHECK(parse_ratmap("z^2 @ z^3") == parse_ratmap("z^6"));
    CHECK(parse_ratmap("z^2 @ z^3 @ z^5") == parse_ratmap("z^30"));
    // '@' binds tighter than '*'
    CHECK(parse_ratmap("2*z @ z+1") == parse_ratmap("2*z+1"));
    CHECK(parse_ratmap(" ( z + 1 ) ^ 2 ") == parse_ratmap("(z+1)^2"));
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(parse_ratmap(""), ParseError);
    CHECK_THROWS_AS(parse_ratmap("z^"), ParseError);
    CHECK_THROWS_AS(parse_ratmap("(z"), ParseError);
    CHECK_THROWS_AS(parse_ratmap("z+"), ParseError);
    CHECK_THROWS_AS(parse_ratmap("-z"), ParseError);
    CHECK_THROWS_AS(parse_ratmap("z z"), ParseError);
    CHECK_THROWS_AS(parse_ratmap("1/0"), ParseError);
    CHECK_THROWS_AS(parse_ratmap("z/(z-z)"), std::domain_error);
    CHECK_THROWS_AS(parse_ratmap("z^2 @ z^2000000000"), BudgetExceeded);
}

TEST_CASE("composition expands exactly") {
    RatMap outer = parse_ratmap("(z^2-4)/(z-1)");
    RatMap got = compose(parse_ratmap("z^3"), outer);
    CHECK(got == parse_ratmap("(z^6-12*z^4+48*z^2-64)/(z^3-3*z^2+3*z-1)"));
    CHECK(got == parse_ratmap("z^3 @ ((z^2-4)/(z-1))"));
    CHECK(got.degree() == 6);

    RatMap r = parse_ratmap("((z-1)^2)/((z+1)^2)");
    RatMap rr = compose(r, r);
    CHECK(rr == parse_ratmap("(4*z^2)/(z^4+2*z^2+1)"));
    CHECK(rr == parse_ratmap("((4*z)/((z+1)^2)) @ z^2"));
}

TEST_CASE("iterates and degree budget") {
    RatMap sq = parse_ratmap("z^2");
    CHECK(iterate(sq, 3) == parse_ratmap("z^8"));
    CHECK(iterate(sq, 12).degree() == 4096);
    CHECK_THROWS_AS(iterate(sq, 13), BudgetExceeded);
    CHECK_THROWS_AS(compose(iterate(sq, 12), sq), BudgetExceeded);
    CHECK(iterate(parse_ratmap("(z^2-1)/z"), 2) ==
          parse_ratmap("(z^4-3*z^2+1)/(z^3-z)"));
}

TEST_CASE("wronskian of a rational map") {
    RatMap r = parse_ratmap("((z-1)^2)/((z+1)^2)");
    Poly z = Poly::monomial(GQ(1), 1);
    CHECK(wronskian(r) == (z * z).scaled(GQ(4)) - Poly(GQ(4)));
    CHECK(wronskian(parse_ratmap("z^3")) == (z * z).scaled(GQ(3)));
}

TEST_CASE("moebius pre and post composition") {
    RatMap sq = parse_ratmap("z^2");
    Mobius up = Mobius::affine(GQ(1), GQ(1));
    Mobius down = Mobius::affine(GQ(1), GQ(-1));
    CHECK(mobius_apply(sq, up, down) == parse_ratmap("z^2+2*z"));
    CHECK(mobius_conjugate(sq, Mobius::identity()) == sq);

    RatMap r = parse_ratmap("(z^2-1)/(z^2+1)");
    Mobius m(GQ(2), GQ(1), GQ(1), GQ(-1));
    RatMap conj = mobius_conjugate(r, m);
    // conjugation preserves degree and round trips through the inverse
    CHECK(conj.degree() == 2);
    CHECK(mobius_conjugate(conj, m.inverse()) == r);
}

TEST_CASE("evaluation on the sphere") {
    RatMap r = parse_ratmap("(z^2+1)/(z-1)");
    CHECK(r.eval_finite(GQ(2)) == GQ(5));
    CHECK_THROWS_AS(r.eval_finite(GQ(1)), std::domain_error);
    CHECK(eval_proj(r, ProjPoint::finite(GQ(1))).is_infinity());
    CHECK(eval_proj(r, ProjPoint::infinity()).is_infinity());

    RatMap s = parse_ratmap("1/z");
    CHECK(same_point(eval_proj(s, ProjPoint::infinity()), ProjPoint::finite(GQ(0)), 0.0));
    CHECK(eval_proj(s, ProjPoint::finite(GQ(0))).is_infinity());

    // degree drop at infinity: deg num < deg den sends infinity to 0
    RatMap t = parse_ratmap("(z+1)/(z^2+1)");
    CHECK(same_point(eval_proj(t, ProjPoint::infinity()), ProjPoint::finite(GQ(0)), 0.0));
}

TEST_CASE("printer emits the grammar and round trips") {
    const char* cases[] = {
        "z",
        "z^2",
        "4*z^2",
        "-1*z^2+3",
        "-3/2*z+1/2",
        "i",
        "-1*i*z^3",
        "(1/2+3*i)*z^2-i*z",
        "(z^2-4)/(z-1)",
        "(z^2-1)/(z^2+z)",
        "0",
        "1/z",
    };
    for (const char* text : cases) {
        RatMap r = parse_ratmap(text);
        CHECK(parse_ratmap(print_ratmap(r)) == r);
    }
    CHECK(print_ratmap(parse_ratmap("4*z^2")) == "4*z^2");
    CHECK(print_ratmap(parse_ratmap("(z^2-4)/(z-1)")) == "(z^2-4)/(z-1)");
    CHECK(print_ratmap(parse_ratmap("z-z")) == "0");
    CHECK(print_ratmap(parse_ratmap("1/z")) == "(1)/(z)");
}

TEST_CASE("chain printing parenthesizes composition operands") {
    std::vector<RatMap> chain = {parse_ratmap("z^3"), parse_ratmap("(z^2-4)/(z-1)")};
    CHECK(print_chain(chain) == "z^3 @ ((z^2-4)/(z-1))");
    auto parsed = parse_chain("z^3, (z^2-4)/(z-1)");
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0] == chain[0]);
    CHECK(parsed[1] == chain[1]);
    CHECK(parse_ratmap(print_chain(chain)) == compose(chain[0], chain[1]));
}
