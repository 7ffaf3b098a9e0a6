#include "doctest.h"

#include <algorithm>
#include <random>

#include "rittlab/dynamics.hpp"
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

long index_sum(const std::vector<RamificationPoint>& cps) {
    long s = 0;
    for (const auto& rp : cps) s += rp.index - 1;
    return s;
}

const RamificationPoint* find_at(const std::vector<RamificationPoint>& cps, const ProjPoint& p) {
    for (const auto& rp : cps)
        if (same_point(rp.point, p, 1e-9)) return &rp;
    return nullptr;
}

} // namespace

TEST_CASE("critical points of power and polynomial maps") {
    auto z2 = critical_points(rm("z^2"));
    REQUIRE(z2.size() == 2);
    for (const auto& rp : z2) CHECK(rp.index == 2);
    CHECK(find_at(z2, ProjPoint::finite(GQ(0))) != nullptr);
    CHECK(find_at(z2, ProjPoint::infinity()) != nullptr);

    auto z3 = critical_points(rm("z^3"));
    REQUIRE(z3.size() == 2);
    for (const auto& rp : z3) CHECK(rp.index == 3);
    CHECK(index_sum(z3) == 4);
}

TEST_CASE("critical points at poles and a regular point at infinity") {
    auto cps = critical_points(rm("(z-1)^2/(z+1)^2"));
    REQUIRE(cps.size() == 2);

    const auto* at1 = find_at(cps, ProjPoint::finite(GQ(1)));
    REQUIRE(at1 != nullptr);
    CHECK(at1->index == 2);
    CHECK(at1->point.exact);
    CHECK(same_point(at1->value, ProjPoint::finite(GQ(0)), 0.0));

    // -1 is a pole; the local valence is still read off the Wronskian.
    const auto* atm1 = find_at(cps, ProjPoint::finite(GQ(-1)));
    REQUIRE(atm1 != nullptr);
    CHECK(atm1->index == 2);
    CHECK(atm1->value.is_infinity());

    CHECK(find_at(cps, ProjPoint::infinity()) == nullptr);
    CHECK(index_sum(cps) == 2);
}

TEST_CASE("ramification indexes sum to 2d-2 on random maps") {
    std::mt19937 rng(20260816u);
    std::uniform_int_distribution<int> degree(2, 6);
    for (int trial = 0; trial < 25; ++trial) {
        const int d = degree(rng);
        RatMap r = random_ratmap(rng, d);
        CHECK(index_sum(critical_points(r)) == 2L * d - 2);
    }
}

TEST_CASE("the chain rule for local valences holds on composites") {
    CHECK(chain_rule_check(rm("z^2"), rm("z^3")));
    CHECK(chain_rule_check(rm("(z-1)^2/(z+1)^2"), rm("(z-1)^2/(z+1)^2")));
    CHECK(chain_rule_check(rm("z^2-2"), rm("(z^2+2)/(z+1)")));

    std::mt19937 rng(7u);
    for (int trial = 0; trial < 5; ++trial)
        CHECK(chain_rule_check(random_ratmap(rng, 2), random_ratmap(rng, 3)));
}

TEST_CASE("fixed points carry exact locations and multipliers") {
    auto fps = fixed_points(rm("z^2"));
    REQUIRE(fps.size() == 3);
    for (const auto& fp : fps) {
        if (fp.point.is_infinity() || same_point(fp.point, ProjPoint::finite(GQ(0)), 0.0))
            CHECK(std::abs(fp.multiplier) == doctest::Approx(0.0));
        else {
            CHECK(same_point(fp.point, ProjPoint::finite(GQ(1)), 0.0));
            CHECK(fp.multiplier.real() == doctest::Approx(2.0));
        }
    }

    // A double fixed point at the origin forces multiplier one.
    auto para = fixed_points(rm("z^2+z"));
    const auto at0 = std::find_if(para.begin(), para.end(), [](const FixedPointInfo& f) {
        return !f.point.is_infinity() && same_point(f.point, ProjPoint::finite(GQ(0)), 0.0);
    });
    REQUIRE(at0 != para.end());
    CHECK(at0->multiplier.real() == doctest::Approx(1.0));
    CHECK(at0->multiplier.imag() == doctest::Approx(0.0));

    CHECK_THROWS_AS(fixed_points(rm("2*z+1")), std::domain_error);
}

TEST_CASE("critical orbit classification separates the basic regimes") {
    auto hyp = classify_critical_orbits(rm("z^2-1"));
    CHECK(hyp.verdict == StabilityVerdict::Hyperbolic);
    for (const auto& o : hyp.orbits) CHECK(o.fate == OrbitFate::Attracted);

    auto rep = classify_critical_orbits(rm("z^2-2"));
    CHECK(rep.verdict == StabilityVerdict::NotHyperbolic);
    bool landed = false;
    for (const auto& o : rep.orbits)
        if (o.fate == OrbitFate::OnRepellingCycle) {
            landed = true;
            CHECK(o.period == 1);
            CHECK(o.multiplier_modulus == doctest::Approx(4.0));
        }
    CHECK(landed);

    auto par = classify_critical_orbits(rm("z^2+1/4"));
    CHECK(par.verdict == StabilityVerdict::Undecided);
}

TEST_CASE("the symmetry probe classifies both composition orders") {
    auto probe = hyperbolic_symmetry_probe(rm("z^2"), rm("z^2-1"));
    CHECK(probe.first == StabilityVerdict::Hyperbolic);
    CHECK(probe.second == StabilityVerdict::Hyperbolic);
    CHECK(probe.decided_agree);
}

TEST_CASE("chebyshev polynomials satisfy the recurrence and commute") {
    CHECK(chebyshev_poly(0) == Poly::one());
    CHECK(chebyshev_poly(1) == Poly::monomial(GQ(1), 1));
    CHECK(RatMap{chebyshev_poly(2)} == rm("2*z^2-1"));
    CHECK(RatMap{chebyshev_poly(3)} == rm("4*z^3-3*z"));
    CHECK(RatMap{chebyshev_poly(5)} == rm("16*z^5-20*z^3+5*z"));

    const RatMap t2{chebyshev_poly(2)}, t3{chebyshev_poly(3)};
    CHECK(compose(t2, t3, 8) == compose(t3, t2, 8));
    CHECK(compose(t2, t3, 8) == RatMap{chebyshev_poly(6)});
}

TEST_CASE("power form detection returns verified witnesses") {
    auto cube = detect_special(rm("z^3"));
    CHECK(cube.form == SpecialForm::Power);
    CHECK(cube.degree == 3);
    CHECK_FALSE(cube.inverted);
    REQUIRE(cube.witness.has_value());

    auto inv2 = detect_special(rm("1/z^2"));
    CHECK(inv2.form == SpecialForm::Power);
    CHECK(inv2.inverted);

    // A Moebius conjugate of z^2 is a power map in disguise.
    const Mobius m(GQ(1), GQ(-1), GQ(1), GQ(1));
    const RatMap hidden = mobius_conjugate(rm("z^2"), m);
    auto rep = detect_special(hidden);
    CHECK(rep.form == SpecialForm::Power);
    REQUIRE(rep.witness.has_value());
    RatMap sigma = mobius_conjugate(hidden, *rep.witness);
    if (rep.inverted) {
        CHECK(sigma.num().is_constant());
        CHECK(sigma.den().valuation() == 2);
    } else {
        CHECK(sigma.den().is_constant());
        CHECK(sigma.num().valuation() == 2);
    }
}

TEST_CASE("chebyshev form detection verifies against the recurrence") {
    auto t3 = detect_special(rm("4*z^3-3*z"));
    CHECK(t3.form == SpecialForm::Chebyshev);
    CHECK(t3.sign == 1);
    REQUIRE(t3.witness.has_value());

    auto neg = detect_special(rm("-4*z^3+3*z"));
    CHECK(neg.form == SpecialForm::Chebyshev);
    CHECK(neg.sign == -1);

    const RatMap conj = rm("6*z^2-8*z+3"); // an affine conjugate of 2z^2 - 1
    auto c2 = detect_special(conj);
    CHECK(c2.form == SpecialForm::Chebyshev);
    REQUIRE(c2.witness.has_value());
    CHECK(mobius_conjugate(conj, *c2.witness) == RatMap{chebyshev_poly(2)});
}

TEST_CASE("maps without the special forms report none") {
    CHECK(detect_special(rm("z^2+1")).form == SpecialForm::None);
    CHECK(detect_special(rm("z^2+3")).form == SpecialForm::None);
    CHECK(detect_special(rm("(z-1)^2/(z+1)^2")).form == SpecialForm::None);
    CHECK(detect_special(rm("z*(z-8)^3/(z+1)^3")).form == SpecialForm::None);
    CHECK(detect_special(rm("(z^2+2)/(z+1)")).form == SpecialForm::None);
}
