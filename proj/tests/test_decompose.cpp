#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "rittlab/decompose.hpp"
#include "rittlab/equivalence.hpp"
#include "rittlab/parse.hpp"

using namespace rittlab;

namespace {

RatMap rm(const std::string& s) { return parse_ratmap(s); }

Poly random_poly(std::mt19937& rng, int deg) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::vector<GQ> c(static_cast<size_t>(deg) + 1);
    for (GQ& v : c) v = GQ(coeff(rng));
    return Poly(std::move(c));
}

RatMap random_ratmap(std::mt19937& rng, int deg) {
    for (;;) {
        Poly num = random_poly(rng, deg);
        std::uniform_int_distribution<int> dden(0, deg);
        Poly den = random_poly(rng, dden(rng));
        if (den.is_zero()) continue;
        RatMap r(num, den);
        if (r.degree() == deg) return r;
    }
}

bool contains_map(const std::vector<RatMap>& v, const RatMap& m) {
    return std::any_of(v.begin(), v.end(), [&](const RatMap& x) { return x == m; });
}

} // namespace

TEST_CASE("degree_splits lists ordered proper splits") {
    auto s12 = degree_splits(12);
    REQUIRE(s12.size() == 4);
    CHECK(s12[0].d1 == 2); CHECK(s12[0].d2 == 6);
    CHECK(s12[1].d1 == 3); CHECK(s12[1].d2 == 4);
    CHECK(s12[2].d1 == 4); CHECK(s12[2].d2 == 3);
    CHECK(s12[3].d1 == 6); CHECK(s12[3].d2 == 2);
    CHECK(degree_splits(7).empty());
    auto s4 = degree_splits(4);
    REQUIRE(s4.size() == 1);
    CHECK(s4[0].d1 == 2);
    CHECK(s4[0].d2 == 2);
}

TEST_CASE("left_factor_solve recovers the unique left factor") {
    auto a = left_factor_solve(rm("4*z^2/(z^2+1)^2"), rm("z^2"));
    REQUIRE(a.has_value());
    CHECK(*a == rm("4*z/(z+1)^2"));

    auto b = left_factor_solve(rm("z^6"), rm("z^3"));
    REQUIRE(b.has_value());
    CHECK(*b == rm("z^2"));

    // Moebius right factors always divide out.
    auto c = left_factor_solve(rm("1/z^3"), rm("1/z"));
    REQUIRE(c.has_value());
    CHECK(*c == rm("z^3"));

    // (z-1)^2/(z+1)^2 is not a function of z^2.
    CHECK_FALSE(left_factor_solve(rm("(z-1)^2/(z+1)^2"), rm("z^2")).has_value());
    // Degree of the candidate must divide.
    CHECK_FALSE(left_factor_solve(rm("z^6"), rm("z^4")).has_value());
}

TEST_CASE("poly_right_factor reads the factor off the series at infinity") {
    auto f = poly_right_factor(parse_ratmap("z^4+2*z^2").num(), 2);
    REQUIRE(f.size() == 1);
    CHECK(f[0] == parse_ratmap("z^2").num());

    auto g = poly_right_factor(parse_ratmap("z^6").num(), 3);
    REQUIRE(g.size() == 1);
    CHECK(g[0] == parse_ratmap("z^3").num());

    auto h = poly_right_factor(parse_ratmap("z^2+1").num(), 2);
    REQUIRE(h.size() == 1);
    CHECK(h[0] == parse_ratmap("z^2").num());

    CHECK(poly_right_factor(parse_ratmap("z^6").num(), 4).empty());
    // z^4 + z^3 has no quadratic right factor.
    CHECK(poly_right_factor(parse_ratmap("z^4+z^3").num(), 2).empty());
}

TEST_CASE("z^4 has exactly one quadratic-quadratic split") {
    auto out = rat_decompose_split(rm("z^4"), {2, 2});
    CHECK_FALSE(out.budget_exhausted);
    CHECK(out.unverified == 0);
    REQUIRE(out.splits.size() == 1);
    CHECK(out.splits[0].factors[0] == rm("z^2"));
    CHECK(out.splits[0].factors[1] == rm("z^2"));
    CHECK(out.splits[0].product == rm("z^4"));
}

TEST_CASE("the square of a fiber-symmetric quadratic splits three ways") {
    const RatMap r = rm("(z-1)^2/(z+1)^2");
    const RatMap r2 = compose(r, r, 8);
    CHECK(r2 == rm("4*z^2/(z^2+1)^2"));

    auto out = rat_decompose_split(r2, {2, 2});
    CHECK_FALSE(out.budget_exhausted);
    CHECK(out.unverified == 0);
    REQUIRE(out.splits.size() == 3);

    std::vector<RatMap> rights;
    for (const auto& d : out.splits) {
        REQUIRE(d.factors.size() == 2);
        CHECK(compose(d.factors[0], d.factors[1], 8) == r2);
        rights.push_back(d.factors[1]);
    }
    CHECK(contains_map(rights, rm("z^2")));
    CHECK(contains_map(rights, rm("(z^2+1)/z")));
    CHECK(contains_map(rights, rm("(z^2-1)/z")));

    for (const auto& d : out.splits) {
        if (d.factors[1] == rm("z^2")) CHECK(d.factors[0] == rm("4*z/(z+1)^2"));
        if (d.factors[1] == rm("(z^2+1)/z")) CHECK(d.factors[0] == rm("4/z^2"));
        if (d.factors[1] == rm("(z^2-1)/z")) CHECK(d.factors[0] == rm("4/(z^2+4)"));
    }
}

TEST_CASE("a tight partition cap degrades to a flagged partial answer") {
    SplitBudget tight;
    tight.partition_cap = 1;
    auto out = rat_decompose_split(rm("z^4"), {2, 2}, tight);
    CHECK(out.budget_exhausted);
    CHECK(out.splits.empty());
}

TEST_CASE("rat_decompose_split rejects malformed degree splits") {
    CHECK_THROWS_AS(rat_decompose_split(rm("z^4"), {1, 4}), std::domain_error);
    CHECK_THROWS_AS(rat_decompose_split(rm("z^4"), {2, 3}), std::domain_error);
}

TEST_CASE("exact tier: involutions recover all three quadratic splits") {
    const RatMap r2 = rm("4*z^2/(z^2+1)^2");
    SplitBudget exact;
    exact.tier = SplitBudget::Tier::Exact;
    auto out = rat_decompose_split(r2, {2, 2}, exact);
    CHECK_FALSE(out.budget_exhausted);
    CHECK(out.unverified == 0);
    REQUIRE(out.splits.size() == 3);

    std::vector<RatMap> rights;
    for (const auto& d : out.splits) {
        CHECK(compose(d.factors[0], d.factors[1], 8) == r2);
        rights.push_back(d.factors[1]);
    }
    CHECK(contains_map(rights, rm("z^2")));
    CHECK(contains_map(rights, rm("(z^2+1)/z")));
    CHECK(contains_map(rights, rm("(z^2-1)/z")));
}

TEST_CASE("exact tier: polynomial normal form at every inner degree") {
    const RatMap t = rm("(z^4+4*z^2+5)^2");
    SplitBudget exact;
    exact.tier = SplitBudget::Tier::Exact;

    auto deep = rat_decompose_split(t, {2, 4}, exact);
    REQUIRE(deep.splits.size() == 1);
    CHECK(deep.splits[0].factors[1] == rm("z^4+4*z^2"));
    CHECK(compose(deep.splits[0].factors[0], deep.splits[0].factors[1], 9) == t);

    auto shallow = rat_decompose_split(t, {4, 2}, exact);
    REQUIRE(shallow.splits.size() == 1);
    CHECK(shallow.splits[0].factors[1] == rm("z^2"));
}

TEST_CASE("exact tier: zero splits without exhaustion is a certified refusal") {
    SplitBudget exact;
    exact.tier = SplitBudget::Tier::Exact;
    auto out = rat_decompose_split(rm("(z^4+z+1)/(z^2-1)"), {2, 2}, exact);
    CHECK(out.splits.empty());
    CHECK_FALSE(out.budget_exhausted);
}

TEST_CASE("exact tier: quadratic right factor of a degree-12 composite") {
    const RatMap b = compose(rm("z^3"), compose(rm("(z^2-4)/(z-1)"), rm("(z^2+2)/(z+1)"), 8), 16);
    SplitBudget exact;
    exact.tier = SplitBudget::Tier::Exact;
    auto out = rat_decompose_split(b, {6, 2}, exact);
    REQUIRE(out.splits.size() == 1);
    CHECK(out.splits[0].factors[1] == rm("(z^2+2)/(z+1)"));
    CHECK(compose(out.splits[0].factors[0], out.splits[0].factors[1], 16) == b);

    SplitBudget tiny = exact;
    tiny.subset_cap = 2;
    auto capped = rat_decompose_split(b, {6, 2}, tiny);
    CHECK(capped.budget_exhausted);
}

TEST_CASE("exact tier: larger inner degree needs a polynomial map") {
    SplitBudget exact;
    exact.tier = SplitBudget::Tier::Exact;
    const RatMap q = compose(rm("1/(z^3+z)"), rm("z^3"), 16);
    CHECK_THROWS_AS(rat_decompose_split(q, {3, 3}, exact), std::domain_error);
}

TEST_CASE("exact and numeric tiers report identical canonical splits") {
    std::mt19937 rng(20260816);
    SplitBudget exact;
    exact.tier = SplitBudget::Tier::Exact;
    int done = 0;
    while (done < 10) {
        RatMap a = random_ratmap(rng, 2);
        RatMap b = random_ratmap(rng, 2);
        RatMap p = compose(a, b, 8);
        if (p.degree() != 4) continue;
        ++done;

        auto ex = rat_decompose_split(p, {2, 2}, exact);
        auto nu = rat_decompose_split(p, {2, 2});
        REQUIRE_FALSE(ex.budget_exhausted);
        REQUIRE_FALSE(nu.budget_exhausted);
        CHECK(ex.splits.size() >= 1);

        std::set<std::string> ek, nk;
        for (const auto& d : ex.splits) ek.insert(print_ratmap(d.factors[1]));
        for (const auto& d : nu.splits) nk.insert(print_ratmap(d.factors[1]));
        CHECK(ek == nk);
    }
}

TEST_CASE("primality of small maps") {
    auto p = is_prime(rm("z^2+1"));
    CHECK(p.verdict == Primality::Prime);
    CHECK_FALSE(p.witness.has_value());

    // A degree-4 map with trivial fiber symmetries only.
    auto w = is_prime(rm("z*(z-8)^3/(z+1)^3"));
    CHECK(w.verdict == Primality::Prime);
    CHECK_FALSE(w.budget_exhausted);

    auto c = is_prime(rm("4*z^2/(z^2+1)^2"));
    CHECK(c.verdict == Primality::Composite);
    REQUIRE(c.witness.has_value());
    CHECK(c.witness->factors.size() == 2);
    CHECK(compose(c.witness->factors[0], c.witness->factors[1], 8) == rm("4*z^2/(z^2+1)^2"));
}

TEST_CASE("prime chains of iterated power maps merge into one class") {
    auto z8 = prime_decompositions(rm("z^8"));
    CHECK_FALSE(z8.budget_exhausted);
    REQUIRE(z8.chains.size() == 1);
    REQUIRE(z8.chains[0].factors.size() == 3);
    for (const RatMap& f : z8.chains[0].factors) CHECK(f.degree() == 2);

    // z^6 keeps both factor orders: the degree sequences differ.
    auto z6 = prime_decompositions(rm("z^6"));
    REQUIRE(z6.chains.size() == 2);
    std::vector<std::pair<int, int>> shapes;
    for (const auto& ch : z6.chains) {
        REQUIRE(ch.factors.size() == 2);
        shapes.emplace_back(ch.factors[0].degree(), ch.factors[1].degree());
    }
    std::sort(shapes.begin(), shapes.end());
    CHECK(shapes[0] == std::pair<int, int>(2, 3));
    CHECK(shapes[1] == std::pair<int, int>(3, 2));
}

TEST_CASE("two chains of different lengths can share a product") {
    auto three = make_chain({rm("z^3"), rm("(z^2-4)/(z-1)"), rm("(z^2+2)/(z+1)")});
    auto two = make_chain({rm("z*(z-8)^3/(z+1)^3"), rm("z^3")});
    CHECK(three.product.degree() == 12);
    CHECK(three.product == two.product);
}

TEST_CASE("commuting maps and common iterates") {
    CHECK(commutes(rm("z^2"), rm("z^3")));
    CHECK_FALSE(commutes(rm("z^2"), rm("z^2-1")));

    auto hit = common_iterate_search(rm("z^2"), rm("z^4"), 4);
    REQUIRE(hit.has_value());
    CHECK(hit->first == 2);
    CHECK(hit->second == 1);

    CHECK_FALSE(common_iterate_search(rm("z^2"), rm("z^2-1"), 3).has_value());
}

TEST_CASE("random quadratic pairs round trip through the split search") {
    std::mt19937 rng(20260816u);
    for (int trial = 0; trial < 10; ++trial) {
        RatMap a = random_ratmap(rng, 2);
        RatMap b = random_ratmap(rng, 2);
        Decomposition expected = make_chain({a, b});
        auto out = rat_decompose_split(expected.product, {2, 2});
        REQUIRE_FALSE(out.splits.empty());
        bool matched = false;
        for (const auto& d : out.splits) {
            CHECK(compose(d.factors[0], d.factors[1], 8) == expected.product);
            if (decompositions_equivalent(expected, d).status == EquivStatus::Equivalent)
                matched = true;
        }
        CHECK(matched);
    }
}

TEST_CASE("iterate scan: square of a symmetric-fiber quadratic is new at level 2") {
    auto rep = virtual_decomposability_scan(rm("(z-1)^2/(z+1)^2"), 2);
    CHECK(rep.horizon == 2);
    CHECK_FALSE(rep.partial);
    CHECK_FALSE(rep.exceptional);
    CHECK(rep.alpha_lower_bound == 2);

    int fresh = 0, trivial = 0;
    for (const auto& f : rep.findings) {
        CHECK(f.level == 2);
        if (f.status == FindingStatus::New) ++fresh;
        if (f.status == FindingStatus::Trivial) ++trivial;
    }
    CHECK(fresh == 2);
    CHECK(trivial == 1);
}

TEST_CASE("iterate scan: a generic quadratic polynomial stays trivial") {
    auto rep = virtual_decomposability_scan(rm("z^2+1"), 2);
    CHECK(rep.alpha_lower_bound == 0);
    CHECK_FALSE(rep.exceptional);
    CHECK_FALSE(rep.partial);
    REQUIRE_FALSE(rep.findings.empty());
    for (const auto& f : rep.findings) CHECK(f.status == FindingStatus::Trivial);
}

TEST_CASE("iterate scan marks power maps exceptional but keeps scanning") {
    auto rep = virtual_decomposability_scan(rm("z^2"), 2);
    CHECK(rep.exceptional);
    CHECK(rep.alpha_lower_bound == 0);
}
