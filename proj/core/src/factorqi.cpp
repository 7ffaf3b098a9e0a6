#include "internal.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rittlab/linalg.hpp"
#include "rittlab/mobius.hpp"
#include "rittlab/parse.hpp"
#include "rittlab/projpoint.hpp"

/*
 * ============================================================================
 *  Exact split tier
 * ============================================================================
 *
 *  Nothing in this file touches floating point. The tier certifies splits in
 *  two regimes and refuses the rest.
 *
 *  1. Inner degree 2, any map R. R = A o B with deg B = 2 happens exactly
 *     when some Moebius involution s != id satisfies R o s = R: the two
 *     sheets of a quadratic B are swapped by its deck involution, and
 *     conversely R o s = R makes R constant on the orbits {z, s(z)}, so R
 *     factors through the degree-2 orbit map
 *
 *         B_s(z) = z + s(z) = (c z^2 + b) / (c z - a)   when s is not affine,
 *         B_s(z) = z * s(z) = -z^2 - (b/a) z            when it is
 *
 *     (a nontrivial involution has trace zero, so d = -a, which is what
 *     collapses the formulas above). Distinct involutions give distinct
 *     fibrations, so split classes correspond to involutions one-to-one.
 *
 *     An involution is pinned by its values at three points. Pick three
 *     anchors x_i away from the poles of R; s(x_i) lies in the exact fiber
 *     of R over R(x_i), i.e. it is a root of num - R(x_i) * den (or the
 *     point at infinity when that polynomial drops degree). The Gaussian
 *     rational points of each fiber are enumerated completely by the
 *     rational root theorem over Z[i]: clear denominators, strip the Z[i]
 *     content, and test unit multiples of ratios of divisors of the
 *     constant and leading coefficients. Divisors come from factoring the
 *     coefficient norms (trial division, then Miller-Rabin with a
 *     deterministic base set) and splitting each rational prime into
 *     Gaussian primes. Every candidate triple that pins an involution is
 *     verified by composing exactly, so the output is certified; the caps
 *     on factoring and on candidate triples set budget_exhausted instead
 *     of failing silently.
 *
 *  2. Polynomial maps, any inner degree. A split class of a polynomial
 *     always contains a pair of polynomials, exactly one of them with B
 *     monic and B(0) = 0, and that B is determined triangularly by the top
 *     coefficients of R (poly_right_factor). The left factor is solved
 *     exactly, and the normal form already agrees with the pencil echelon
 *     form the numeric tier reports.
 *
 *  Non-polynomial maps with inner degree >= 3 are outside this tier and
 *  raise std::domain_error; the numeric tier covers them.
 * ============================================================================
 */

namespace rittlab::detail {
namespace {

// ---------------------------------------------------------------------------
// Gaussian integers
// ---------------------------------------------------------------------------

struct ZI {
    BigInt re, im;
};

ZI conj_zi(const ZI& a) { return {a.re, -a.im}; }

bool is_zero(const ZI& a) { return a.re == 0 && a.im == 0; }

BigInt norm_zi(const ZI& a) { return a.re * a.re + a.im * a.im; }

ZI mul_zi(const ZI& a, const ZI& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ZI sub_zi(const ZI& a, const ZI& b) { return {a.re - b.re, a.im - b.im}; }

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b; // truncates toward zero
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

// Nearest integer to x / n for n > 0 (ties round up).
BigInt round_div(const BigInt& x, const BigInt& n) {
    return floor_div(2 * x + n, 2 * n);
}

// Nearest-lattice-point quotient; the remainder a - q*b has norm at most
// half of norm(b), which is what makes the Euclidean algorithm terminate.
ZI div_round(const ZI& a, const ZI& b) {
    const ZI t = mul_zi(a, conj_zi(b));
    const BigInt n = norm_zi(b);
    return {round_div(t.re, n), round_div(t.im, n)};
}

std::optional<ZI> div_exact(const ZI& a, const ZI& b) {
    const ZI t = mul_zi(a, conj_zi(b));
    const BigInt n = norm_zi(b);
    if (t.re % n != 0 || t.im % n != 0) return std::nullopt;
    return ZI{t.re / n, t.im / n};
}

ZI gcd_zi(ZI a, ZI b) {
    while (!is_zero(b)) {
        const ZI r = sub_zi(a, mul_zi(div_round(a, b), b));
        a = b;
        b = r;
    }
    return a;
}

// ---------------------------------------------------------------------------
// Factoring coefficient norms
// ---------------------------------------------------------------------------

constexpr long kTrialCap = 10'000'000;

// Below this bound the base set {2, 3, ..., 41} makes Miller-Rabin a proof,
// not a heuristic; larger survivors are reported as a budget failure rather
// than trusted, because a missed factor would silently drop fiber points.
const BigInt& miller_rabin_bound() {
    static const BigInt bound("3317044064679887385961981");
    return bound;
}

bool miller_rabin(const BigInt& n) {
    static constexpr long kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    BigInt d = n - 1;
    int r = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++r;
    }
    for (long b : kBases) {
        if (n == b) return true;
        BigInt x = boost::multiprecision::powm(BigInt(b), d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = (x * x) % n;
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// Prime factorization of n >= 1; clears `complete` when a cofactor resists
// both trial division and the proven Miller-Rabin range.
std::vector<std::pair<BigInt, int>> factor_int(BigInt n, bool& complete) {
    std::vector<std::pair<BigInt, int>> out;
    auto push = [&out](const BigInt& p) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1);
    };
    BigInt d = 2;
    while (d <= kTrialCap && d * d <= n) {
        while (n % d == 0) {
            push(d);
            n /= d;
        }
        if (d == 2)
            d = 3;
        else
            d += 2;
    }
    if (n == 1) return out;
    if (n < d * d) { // no factor below sqrt(n), so n is prime
        push(n);
        return out;
    }
    if (n < miller_rabin_bound() && miller_rabin(n)) {
        push(n);
        return out;
    }
    complete = false;
    return out;
}

// Gaussian prime factorization of w != 0, up to units. Rational primes
// split by residue class: 2 ramifies as (1+i)^2, p = 3 (mod 4) stays inert,
// p = 1 (mod 4) splits as pi * conj(pi) with pi = gcd(p, s + i) for any
// square root s of -1 mod p.
std::vector<std::pair<ZI, int>> factor_zi(ZI w, bool& complete) {
    std::vector<std::pair<ZI, int>> out;
    for (const auto& [p, e] : factor_int(norm_zi(w), complete)) {
        (void)e;
        std::vector<ZI> cands;
        if (p == 2) {
            cands.push_back(ZI{1, 1});
        } else if (p % 4 == 3) {
            cands.push_back(ZI{p, 0});
        } else {
            BigInt s = 0;
            for (BigInt a = 2; a < p; ++a) {
                const BigInt t = boost::multiprecision::powm(a, (p - 1) / 4, p);
                if ((t * t) % p == p - 1) {
                    s = t;
                    break;
                }
            }
            const ZI pi = gcd_zi(ZI{p, 0}, ZI{s, 1});
            cands.push_back(pi);
            cands.push_back(conj_zi(pi));
        }
        for (const ZI& pi : cands) {
            int k = 0;
            while (auto q = div_exact(w, pi)) {
                w = *q;
                ++k;
            }
            if (k > 0) out.emplace_back(pi, k);
        }
    }
    if (norm_zi(w) != 1) complete = false; // leftover from an unfactored norm part
    return out;
}

// All divisors of w up to units, capped.
std::vector<ZI> divisors_zi(const ZI& w, long cap, bool& complete) {
    std::vector<ZI> out{ZI{1, 0}};
    for (const auto& [pi, e] : factor_zi(w, complete)) {
        const size_t base = out.size();
        if (static_cast<long>(base) * (e + 1) > cap) {
            complete = false;
            break;
        }
        ZI pw = pi;
        for (int k = 1; k <= e; ++k) {
            for (size_t j = 0; j < base; ++j) out.push_back(mul_zi(out[j], pw));
            if (k < e) pw = mul_zi(pw, pi);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact roots over the Gaussian rationals
// ---------------------------------------------------------------------------

GQ zi_to_gq(const ZI& a) { return GQ(BigRat(a.re), BigRat(a.im)); }

struct GQLess {
    bool operator()(const GQ& a, const GQ& b) const { return lex_less(a, b); }
};

// Every Gaussian-rational root of f (without multiplicity), sorted, by the
// rational root theorem over Z[i]. Clears `complete` when a coefficient
// resists factoring or a divisor list overflows the cap.
std::vector<GQ> gq_roots(const Poly& f, long cap, bool& complete) {
    if (f.is_zero()) throw std::invalid_argument("gq_roots: zero polynomial");
    std::vector<GQ> roots;

    const auto& cs = f.coeffs();
    size_t v = 0;
    while (v < cs.size() && cs[v].is_zero()) ++v;
    if (v > 0) roots.push_back(GQ(0));
    std::vector<GQ> c(cs.begin() + static_cast<long>(v), cs.end());
    if (c.size() <= 1) return roots;

    // Clear denominators and strip the Z[i] content; roots are unchanged.
    BigInt L = 1;
    for (const GQ& q : c) {
        L = boost::multiprecision::lcm(L, denominator(q.re()));
        L = boost::multiprecision::lcm(L, denominator(q.im()));
    }
    std::vector<ZI> zc(c.size());
    for (size_t k = 0; k < c.size(); ++k) {
        const BigRat re = c[k].re() * L, im = c[k].im() * L;
        zc[k] = ZI{numerator(re), numerator(im)};
    }
    ZI content{0, 0};
    for (const ZI& z : zc) content = gcd_zi(content, z);
    for (ZI& z : zc) z = *div_exact(z, content);

    // Candidates: unit * p / q with p | constant term, q | leading term.
    const auto d0 = divisors_zi(zc.front(), cap, complete);
    const auto dl = divisors_zi(zc.back(), cap, complete);
    const std::array<GQ, 4> units = {GQ(1), GQ::i(), GQ(-1), -GQ::i()};
    std::set<GQ, GQLess> seen;
    for (const ZI& p : d0) {
        const GQ pg = zi_to_gq(p);
        for (const ZI& q : dl) {
            const GQ base = pg / zi_to_gq(q);
            for (const GQ& u : units) {
                const GQ r = base * u;
                if (!seen.insert(r).second) continue;
                if (f.eval(r).is_zero()) roots.push_back(r);
            }
        }
    }
    std::sort(roots.begin(), roots.end(), GQLess{});
    return roots;
}

// The exact fiber of R over a finite value y, as projective points. The
// point at infinity belongs to the fiber exactly when num - y*den drops
// degree.
std::vector<ProjPoint> exact_fiber(const RatMap& R, const GQ& y, long cap, bool& complete) {
    const Poly F = fiber_poly(R, y);
    std::vector<ProjPoint> pts;
    if (F.degree() < R.degree()) pts.push_back(ProjPoint::infinity());
    for (const GQ& r : gq_roots(F, cap, complete)) pts.push_back(ProjPoint::finite(r));
    return pts;
}

bool proj_eq(const ProjPoint& a, const ProjPoint& b) {
    return (a.x * b.y - b.x * a.y).is_zero();
}

// ---------------------------------------------------------------------------
// Inner degree 2: deck involutions
// ---------------------------------------------------------------------------

SplitOutcome involution_splits(const RatMap& R, const SplitBudget& budget) {
    SplitOutcome out;
    bool complete = true;

    // Three distinct anchors away from the poles of R, with their fibers.
    std::array<GQ, 3> xs;
    std::array<std::vector<ProjPoint>, 3> fibers;
    int found = 0;
    for (long t = 0; found < 3; ++t) {
        const GQ x((t % 2 == 0) ? t / 2 : -(t / 2 + 1)); // 0, -1, 1, -2, 2, ...
        if (R.den().eval(x).is_zero()) continue;
        const GQ y = R.num().eval(x) / R.den().eval(x);
        xs[found] = x;
        fibers[found] = exact_fiber(R, y, budget.subset_cap, complete);
        ++found;
    }
    const std::array<ProjPoint, 3> src = {ProjPoint::finite(xs[0]), ProjPoint::finite(xs[1]),
                                          ProjPoint::finite(xs[2])};

    // Each candidate triple of fiber points pins at most one Moebius map;
    // keep the ones that are nontrivial involutions fixing R exactly.
    std::vector<Mobius> invs;
    long combos = 0;
    bool capped = false;
    for (const ProjPoint& r0 : fibers[0]) {
        for (const ProjPoint& r1 : fibers[1]) {
            for (const ProjPoint& r2 : fibers[2]) {
                if (++combos > budget.subset_cap) {
                    capped = true;
                    break;
                }
                if (proj_eq(r0, r1) || proj_eq(r0, r2) || proj_eq(r1, r2)) continue;
                const Mobius sigma = mobius_from_three_points(src, {r0, r1, r2});
                if (sigma.is_identity()) continue;
                if (!(sigma * sigma).is_identity()) continue;
                if (std::find(invs.begin(), invs.end(), sigma) != invs.end()) continue;
                if (compose(R, RatMap::from_mobius(sigma), budget.degree_budget) != R) continue;
                invs.push_back(sigma);
            }
            if (capped) break;
        }
        if (capped) break;
    }
    out.budget_exhausted = capped || !complete;

    std::set<std::string> keys;
    for (const Mobius& s : invs) {
        // Orbit map of <s>; trace zero collapses d to -a.
        Poly bn, bd;
        if (!s.c().is_zero()) {
            bn = Poly({s.b(), GQ(0), s.c()});
            bd = Poly({-s.a(), s.c()});
        } else {
            bn = Poly({GQ(0), -(s.b() / s.a()), GQ(-1)});
            bd = Poly({GQ(1)});
        }

        // Same canonical form as the numeric tier: pencil rows in reduced
        // echelon form, descending coefficients.
        GQMatrix m(2, 3);
        for (int k = 0; k <= 2; ++k) {
            m.at(0, k) = bn[2 - k];
            m.at(1, k) = bd[2 - k];
        }
        if (rref(m) != 2) { // impossible: num and den are independent
            ++out.unverified;
            continue;
        }
        std::vector<GQ> row0(3), row1(3);
        for (int k = 0; k <= 2; ++k) {
            row0[static_cast<size_t>(2 - k)] = m.at(0, k);
            row1[static_cast<size_t>(2 - k)] = m.at(1, k);
        }
        RatMap cand{Poly(row0), Poly(row1)};
        auto A = left_factor_solve(R, cand);
        if (!A) { // impossible: R is constant on the orbits of s
            ++out.unverified;
            continue;
        }
        if (keys.insert(print_ratmap(cand)).second)
            out.splits.push_back(Decomposition{{*A, cand}, R});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Polynomial maps: monic normal form
// ---------------------------------------------------------------------------

SplitOutcome polynomial_splits(const RatMap& R, DegreeSplit s) {
    SplitOutcome out;
    for (const Poly& B : poly_right_factor(R.num(), s.d2)) {
        RatMap cand(B, Poly({GQ(1)}));
        auto A = left_factor_solve(R, cand);
        if (!A) continue; // the normal form exists but R does not split through it
        out.splits.push_back(Decomposition{{*A, cand}, R});
    }
    return out;
}

} // namespace

SplitOutcome split_exact_tier(const RatMap& R, DegreeSplit s, const SplitBudget& budget) {
    if (s.d2 == 2) return involution_splits(R, budget);
    if (R.is_polynomial()) return polynomial_splits(R, s);
    throw std::domain_error(
        "rat_decompose_split: the exact tier covers inner degree 2 and polynomial maps; "
        "use the numeric tier for non-polynomial maps with larger inner degree");
}

} // namespace rittlab::detail
