#include "rittlab/equivalence.hpp"

/*
 * ============================================================================
 *  Moebius insertion search
 * ============================================================================
 *
 *  right_mobius_solutions enumerates every g with lhs o g == rhs. Any such
 *  g maps the rhs-fiber over a generic value c bijectively onto the
 *  lhs-fiber over c, so its images of three fixed anchor points (two from
 *  one fiber, one from a second fiber, to stay exhaustive at degree 2)
 *  range over at most d*d*(d-1) candidates. Each candidate is interpolated
 *  numerically, screened by whether it matches the fibers pointwise, then
 *  reconstructed over the Gaussian rationals and verified exactly. The
 *  screen is exhaustive, so "no candidate" certifies that no solution
 *  exists, while a screened candidate that fails reconstruction only
 *  downgrades the answer to numeric_only.
 *
 *  decompositions_equivalent chains these searches left to right: g1 must
 *  relate the leading factors, each later gi is determined by a solution
 *  search against the previously fixed gi-1, and the last insertion must
 *  reproduce the final factor exactly. Depth-first search over the
 *  candidate lists visits every insertion chain.
 * ============================================================================
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>

#include "internal.hpp"
#include "rittlab/parse.hpp"
#include "rittlab/reconstruct.hpp"
#include "rittlab/roots.hpp"

namespace rittlab {

namespace {

using detail::CLD;

struct CMat {
    CLD a, b, c, d;
    CLD apply_num(const CLD& z) const { return a * z + b; }
    CLD apply_den(const CLD& z) const { return c * z + d; }
};

// The Moebius map with z1 -> 0, z2 -> 1, z3 -> infinity.
CMat to_zero_one_inf(const CLD& z1, const CLD& z2, const CLD& z3) {
    return CMat{z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1)};
}

CMat mul(const CMat& m1, const CMat& m2) {
    return CMat{m1.a * m2.a + m1.b * m2.c, m1.a * m2.b + m1.b * m2.d,
                m1.c * m2.a + m1.d * m2.c, m1.c * m2.b + m1.d * m2.d};
}

CMat adjugate(const CMat& m) { return CMat{m.d, -m.b, -m.c, m.a}; }

constexpr double kReconTol = 1e-9;

} // namespace

MobiusSearch right_mobius_solutions(const RatMap& lhs, const RatMap& rhs,
                                    const SplitBudget& budget) {
    const int d = lhs.degree();
    if (d < 2 || rhs.degree() != d)
        throw std::domain_error("right_mobius_solutions: degrees must match and be at least 2");

    MobiusSearch out;
    auto cs = detail::generic_values({&lhs, &rhs}, 2);
    auto lf1 = detail::fiber_points(lhs, cs[0], budget.roots);
    auto lf2 = detail::fiber_points(lhs, cs[1], budget.roots);
    auto rf1 = detail::fiber_points(rhs, cs[0], budget.roots);
    auto rf2 = detail::fiber_points(rhs, cs[1], budget.roots);

    const CLD x1 = rf1[0], x2 = rf1[1], x3 = rf2[0];
    const CMat tx = to_zero_one_inf(x1, x2, x3);
    const double screen_tol = budget.consistency_tol;

    std::set<std::string> keys;
    double best_near = 1.0;

    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (j == i) continue;
            for (int k = 0; k < d; ++k) {
                const CLD y1 = lf1[i], y2 = lf1[j], y3 = lf2[k];
                const CMat g = mul(adjugate(to_zero_one_inf(y1, y2, y3)), tx);

                // Screen: g must push both rhs fibers into the lhs fibers.
                double res = 0.0;
                auto screen = [&](const std::vector<CLD>& from, const std::vector<CLD>& to) {
                    for (const CLD& x : from) {
                        const CLD u = g.apply_num(x), v = g.apply_den(x);
                        double best = 1.0;
                        for (const CLD& y : to)
                            best = std::min(best,
                                            detail::chordal_pair(u, v, y, CLD(1.0L, 0.0L)));
                        res = std::max(res, best);
                        if (res > screen_tol) return false;
                    }
                    return true;
                };
                if (!screen(rf1, lf1) || !screen(rf2, lf2)) continue;

                // Exact reconstruction. The interpolated matrix carries an
                // arbitrary complex overall scale, so divide by the entry of
                // largest modulus rather than by a real magnitude.
                CLD piv = g.a;
                for (const CLD& e : {g.b, g.c, g.d})
                    if (std::abs(e) > std::abs(piv)) piv = e;
                auto ra = reconstruct_gq(g.a / piv, budget.den_bound, kReconTol);
                auto rb = reconstruct_gq(g.b / piv, budget.den_bound, kReconTol);
                auto rc = reconstruct_gq(g.c / piv, budget.den_bound, kReconTol);
                auto rd = reconstruct_gq(g.d / piv, budget.den_bound, kReconTol);
                bool certified = false;
                if (ra && rb && rc && rd) {
                    try {
                        Mobius m(*ra, *rb, *rc, *rd);
                        if (compose(lhs, RatMap::from_mobius(m),
                                    static_cast<long>(d) + 1) == rhs) {
                            std::string key = m.a().str() + "," + m.b().str() + "," +
                                              m.c().str() + "," + m.d().str();
                            if (keys.insert(key).second) out.solutions.push_back(m);
                            certified = true;
                        }
                    } catch (const std::domain_error&) {
                        // singular after rounding; fall through to numeric_only
                    }
                }
                if (!certified) {
                    out.numeric_only = true;
                    best_near = std::min(best_near, res);
                }
            }
        }
    }
    if (out.numeric_only) out.residual = best_near;
    return out;
}

namespace {

struct InsertionDFS {
    const Decomposition& a;
    const Decomposition& b;
    const SplitBudget& budget;
    bool near = false;
    double residual = 0.0;
    std::vector<Mobius> stack;
    std::optional<std::vector<Mobius>> found;

    void step(size_t i) {
        if (found) return;
        const size_t m = a.factors.size();
        if (i + 1 == m) {
            const Mobius& g = stack.back();
            if (compose(RatMap::from_mobius(g), a.factors[i],
                        static_cast<long>(a.factors[i].degree()) + 1) == b.factors[i])
                found = stack;
            return;
        }
        RatMap target = (i == 0)
                            ? a.factors[0]
                            : compose(RatMap::from_mobius(stack.back()), a.factors[i],
                                      static_cast<long>(a.factors[i].degree()) + 1);
        auto search = right_mobius_solutions(b.factors[i], target, budget);
        if (search.numeric_only) {
            near = true;
            residual = std::max(residual, search.residual);
        }
        for (const Mobius& g : search.solutions) {
            stack.push_back(g);
            step(i + 1);
            stack.pop_back();
            if (found) return;
        }
    }
};

} // namespace

EquivOutcome decompositions_equivalent(const Decomposition& a, const Decomposition& b,
                                       const SplitBudget& budget) {
    EquivOutcome out;
    if (a.factors.empty() || b.factors.empty())
        throw std::domain_error("decompositions_equivalent: empty chain");
    if (a.factors.size() != b.factors.size()) return out;
    if (a.product != b.product) return out;
    for (const Decomposition* d : {&a, &b})
        for (const RatMap& f : d->factors)
            if (f.degree() < 2)
                throw std::domain_error("decompositions_equivalent: factors must have degree >= 2");
    // Insertions preserve every factor degree.
    for (size_t i = 0; i < a.factors.size(); ++i)
        if (a.factors[i].degree() != b.factors[i].degree()) return out;

    if (a.factors.size() == 1) {
        // Same product and a single factor each: identical by definition.
        out.status = EquivStatus::Equivalent;
        out.witness = std::vector<Mobius>{};
        return out;
    }

    InsertionDFS dfs{a, b, budget, false, 0.0, {}, std::nullopt};
    dfs.step(0);
    if (dfs.found) {
        out.status = EquivStatus::Equivalent;
        out.witness = std::move(*dfs.found);
        return out;
    }
    if (dfs.near) {
        out.status = EquivStatus::NumericOnly;
        out.residual = dfs.residual;
        return out;
    }
    return out; // NotEquivalent
}

} // namespace rittlab
