#include "rittlab/dynamics.hpp"

/*
 * ============================================================================
 *  Critical structure and orbits
 * ============================================================================
 *
 *  Ramification bookkeeping is exact end to end. For a reduced map f/g the
 *  multiplicity of a finite point in the Wronskian f'g - fg' equals its
 *  local valence minus one, whether or not the point is a pole, and the
 *  point at infinity is handled by conjugating with 1/z. Multiplicities
 *  come from the Yun decomposition, so only squarefree factors are ever
 *  passed to the numeric root finder, and a numeric root is upgraded back
 *  to an exact one whenever continued fractions recover a Gaussian
 *  rational that the factor confirms.
 *
 *  Orbit classification iterates homogeneous coordinate pairs with
 *  renormalization, so poles and the point at infinity are ordinary
 *  states. Cycle multipliers accumulate spherical derivatives, which are
 *  invariant under the chart swap z -> 1/z; the swapped-chart values come
 *  from the exact conjugated map, not from dividing near-overflow numbers.
 *
 *  Form detection is exact: candidate totally ramified points are read off
 *  the Yun structure of the Wronskian (index d means multiplicity d - 1),
 *  a candidate pair is sent to (0, infinity) by an exact Moebius map, and
 *  the conjugated map either is structurally a monomial or is not. The
 *  Chebyshev branch normalizes the unique fixed totally ramified point to
 *  infinity, reads the critical values of the resulting polynomial, and
 *  verifies the affine change of variables against the recurrence-built
 *  T_d exactly.
 * ============================================================================
 */

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

#include "internal.hpp"
#include "rittlab/reconstruct.hpp"
#include "rittlab/roots.hpp"

namespace rittlab {

namespace {

using detail::CLD;

constexpr std::int64_t kDenBound = 1000000;
constexpr double kRootReconTol = 1e-9;

const Mobius& inversion() {
    static const Mobius m(GQ(0), GQ(1), GQ(1), GQ(0));
    return m;
}

// Roots of an exact squarefree polynomial as sphere points, exact where a
// Gaussian rational reconstructs and verifies.
std::vector<ProjPoint> squarefree_root_points(const Poly& fac, const RootOptions& opts) {
    std::vector<ProjPoint> out;
    if (fac.degree() < 1) return out;
    if (fac.degree() == 1) {
        out.push_back(ProjPoint::finite(-fac[0] / fac[1]));
        return out;
    }
    for (const CLD& z : aberth_roots(fac.to_complex_ld(), opts)) {
        auto rec = reconstruct_gq(z, kDenBound, kRootReconTol);
        if (rec && fac.eval(*rec).is_zero()) {
            out.push_back(ProjPoint::finite(*rec));
        } else {
            out.push_back(ProjPoint::approx(
                {static_cast<double>(z.real()), static_cast<double>(z.imag())}));
        }
    }
    return out;
}

} // namespace

std::vector<RamificationPoint> critical_points(const RatMap& r, const RootOptions& opts) {
    std::vector<RamificationPoint> out;
    if (r.degree() < 2) return out;

    for (const auto& [fac, mult] : squarefree_decomposition(wronskian(r)))
        for (const ProjPoint& pt : squarefree_root_points(fac, opts))
            out.push_back(RamificationPoint{pt, mult + 1, eval_proj(r, pt)});

    const int v = wronskian(mobius_conjugate(r, inversion())).valuation();
    if (v >= 1)
        out.push_back(RamificationPoint{ProjPoint::infinity(), v + 1,
                                        eval_proj(r, ProjPoint::infinity())});
    return out;
}

bool chain_rule_check(const RatMap& outer, const RatMap& inner, double pair_tol,
                      const RootOptions& opts) {
    const long dprod = static_cast<long>(outer.degree()) * inner.degree();
    RatMap comp = compose(outer, inner, dprod + 1);
    auto ccp = critical_points(comp, opts);
    auto icp = critical_points(inner, opts);
    auto ocp = critical_points(outer, opts);

    auto index_at = [&](const std::vector<RamificationPoint>& v, const ProjPoint& p) {
        for (const RamificationPoint& rp : v)
            if (same_point(rp.point, p, pair_tol)) return rp.index;
        return 1;
    };

    // Valences multiply along the composition.
    for (const RamificationPoint& rp : ccp) {
        const int e_in = index_at(icp, rp.point);
        const int e_out = index_at(ocp, eval_proj(inner, rp.point));
        if (rp.index != e_in * e_out) return false;
    }
    // Every inner critical point must reappear with a multiple of its index.
    for (const RamificationPoint& rp : icp)
        if (index_at(ccp, rp.point) % rp.index != 0) return false;

    long total = 0;
    for (const RamificationPoint& rp : ccp) total += rp.index - 1;
    return total == 2 * dprod - 2;
}

std::vector<FixedPointInfo> fixed_points(const RatMap& r, const RootOptions& opts) {
    if (r.degree() < 2) throw std::domain_error("fixed_points: degree must be at least 2");
    std::vector<FixedPointInfo> out;

    const Poly W = wronskian(r);
    auto wc = W.to_complex_ld();
    auto dc = r.den().to_complex_ld();

    const Poly F = r.num() - r.den().shifted_up(1);
    for (const auto& [fac, mult] : squarefree_decomposition(F)) {
        for (const ProjPoint& pt : squarefree_root_points(fac, opts)) {
            std::complex<double> lambda;
            if (mult >= 2) {
                lambda = {1.0, 0.0}; // multiple fixed point forces multiplier 1
            } else if (pt.exact) {
                GQ g = r.den().eval(pt.x / pt.y);
                lambda = (W.eval(pt.x / pt.y) / (g * g)).to_complex();
            } else {
                CLD z(pt.ax / pt.ay); // approximate roots are stored affinely
                CLD g = detail::eval_cld(dc, z);
                CLD l = detail::eval_cld(wc, z) / (g * g);
                lambda = {static_cast<double>(l.real()), static_cast<double>(l.imag())};
            }
            out.push_back(FixedPointInfo{pt, lambda});
        }
    }

    if (r.num().degree() > r.den().degree()) {
        // Infinity is fixed; its multiplier is read off the conjugated map.
        RatMap s = mobius_conjugate(r, inversion());
        const Poly Ws = wronskian(s);
        GQ g0 = s.den().constant_term();
        GQ lam = Ws.constant_term() / (g0 * g0);
        out.push_back(FixedPointInfo{ProjPoint::infinity(), lam.to_complex()});
    }
    return out;
}

namespace {

// Homogeneous evaluation (x : y) -> (F : G) over complex long doubles.
struct HomogMap {
    std::vector<CLD> f, g;
    int m;

    explicit HomogMap(const RatMap& r)
        : f(r.num().to_complex_ld()), g(r.den().to_complex_ld()), m(r.degree()) {}

    std::pair<CLD, CLD> operator()(const CLD& x, const CLD& y) const {
        std::vector<CLD> ypow(static_cast<size_t>(m) + 1);
        ypow[0] = CLD(1.0L, 0.0L);
        for (int k = 1; k <= m; ++k) ypow[k] = ypow[k - 1] * y;
        CLD F(0.0L, 0.0L), G(0.0L, 0.0L), xp(1.0L, 0.0L);
        for (int k = 0; k <= m; ++k) {
            if (k < static_cast<int>(f.size())) F += f[k] * xp * ypow[m - k];
            if (k < static_cast<int>(g.size())) G += g[k] * xp * ypow[m - k];
            xp *= x;
        }
        return {F, G};
    }
};

// Spherical derivative |R'(z)| (1 + |z|^2) / (|f(z)|^2 + |g(z)|^2),
// evaluated in whichever input chart keeps |z| <= 1.
struct SphericalDerivative {
    std::vector<CLD> w1, f1, g1, w2, f2, g2;

    explicit SphericalDerivative(const RatMap& r) {
        w1 = wronskian(r).to_complex_ld();
        f1 = r.num().to_complex_ld();
        g1 = r.den().to_complex_ld();
        RatMap ri = mobius_apply(r, inversion(), std::nullopt); // r(1/z)
        w2 = wronskian(ri).to_complex_ld();
        f2 = ri.num().to_complex_ld();
        g2 = ri.den().to_complex_ld();
    }

    double at(const CLD& x, const CLD& y) const {
        const bool first_chart = std::abs(x) <= std::abs(y);
        const CLD z = first_chart ? x / y : y / x;
        const auto& w = first_chart ? w1 : w2;
        const auto& f = first_chart ? f1 : f2;
        const auto& g = first_chart ? g1 : g2;
        const long double az = std::abs(z);
        const long double fw = std::abs(detail::eval_cld(w, z));
        const long double ff = std::abs(detail::eval_cld(f, z));
        const long double fg = std::abs(detail::eval_cld(g, z));
        const long double denom = ff * ff + fg * fg;
        if (denom == 0.0L) return 0.0;
        return static_cast<double>(fw * (1.0L + az * az) / denom);
    }
};

OrbitRecord classify_orbit(const HomogMap& step, const SphericalDerivative& sph,
                           const ProjPoint& start, const OrbitOptions& opts) {
    OrbitRecord rec;
    rec.start = start;

    CLD x, y;
    if (start.exact) {
        x = CLD(start.x.re().convert_to<long double>(), start.x.im().convert_to<long double>());
        y = CLD(start.y.re().convert_to<long double>(), start.y.im().convert_to<long double>());
    } else {
        x = CLD(start.ax.real(), start.ax.imag());
        y = CLD(start.ay.real(), start.ay.imag());
    }

    std::vector<std::pair<CLD, CLD>> trail;
    trail.reserve(static_cast<size_t>(opts.max_iter) + 1);

    auto renorm = [&]() {
        long double s = std::max(std::abs(x), std::abs(y));
        if (s > 0.0L) {
            x /= s;
            y /= s;
        }
    };
    renorm();
    trail.emplace_back(x, y);

    int min_check = 0; // earliest trail index near-returns may match

    // The multiplier estimate carries an error on the order of the distance
    // to the true cycle, which a slow (e.g. parabolic) approach can leave
    // near 1e-4 even when consecutive states agree to opts.tol. A verdict
    // near the indifferent boundary is therefore only accepted once the
    // return distance is close to exact; clearly contracting estimates are
    // accepted immediately.
    constexpr double kCoarseBand = 1e-2;
    constexpr double kFineTol = 1e-12;
    constexpr double kLandedTol = 1e-13;

    for (int t = 1; t <= opts.max_iter; ++t) {
        auto [nx, ny] = step(x, y);
        x = nx;
        y = ny;
        renorm();
        trail.emplace_back(x, y);
        rec.steps = t;

        const int pmax = std::min(opts.period_cap, t - min_check);
        for (int p = 1; p <= pmax; ++p) {
            const auto& prev = trail[static_cast<size_t>(t - p)];
            const double dist = detail::chordal_pair(x, y, prev.first, prev.second);
            if (dist > opts.tol) continue;

            double lambda = 1.0;
            for (int k = t - p; k < t; ++k)
                lambda *= sph.at(trail[static_cast<size_t>(k)].first,
                                 trail[static_cast<size_t>(k)].second);

            if (lambda < 1.0 - opts.margin) {
                if (lambda < 1.0 - kCoarseBand || dist < kFineTol) {
                    rec.fate = OrbitFate::Attracted;
                    rec.period = p;
                    rec.multiplier_modulus = lambda;
                    return rec;
                }
                min_check = t; // wait for a tighter return
                break;
            }
            if (lambda > 1.0 + opts.margin) {
                if (dist < kLandedTol) {
                    rec.fate = OrbitFate::OnRepellingCycle;
                    rec.period = p;
                    rec.multiplier_modulus = lambda;
                    return rec;
                }
                // passing near a repelling cycle: ignore history up to here
                min_check = t;
                break;
            }
            rec.fate = OrbitFate::Undecided;
            rec.period = p;
            rec.multiplier_modulus = lambda;
            return rec;
        }
    }
    rec.fate = OrbitFate::Undecided;
    return rec;
}

} // namespace

OrbitClassification classify_critical_orbits(const RatMap& r, const OrbitOptions& opts) {
    if (r.degree() < 2)
        throw std::domain_error("classify_critical_orbits: degree must be at least 2");
    OrbitClassification result;
    const HomogMap step(r);
    const SphericalDerivative sph(r);
    for (const RamificationPoint& cp : critical_points(r))
        result.orbits.push_back(classify_orbit(step, sph, cp.point, opts));

    bool all_attracted = true, any_repelling = false;
    for (const OrbitRecord& o : result.orbits) {
        if (o.fate != OrbitFate::Attracted) all_attracted = false;
        if (o.fate == OrbitFate::OnRepellingCycle) any_repelling = true;
    }
    result.verdict = any_repelling          ? StabilityVerdict::NotHyperbolic
                     : all_attracted        ? StabilityVerdict::Hyperbolic
                                            : StabilityVerdict::Undecided;
    return result;
}

SymmetryProbe hyperbolic_symmetry_probe(const RatMap& r1, const RatMap& r2,
                                        const OrbitOptions& opts) {
    const long dprod = static_cast<long>(r1.degree()) * r2.degree();
    SymmetryProbe probe;
    probe.first = classify_critical_orbits(compose(r1, r2, dprod + 1), opts).verdict;
    probe.second = classify_critical_orbits(compose(r2, r1, dprod + 1), opts).verdict;
    probe.decided_agree = probe.first == StabilityVerdict::Undecided ||
                          probe.second == StabilityVerdict::Undecided ||
                          probe.first == probe.second;
    return probe;
}

Poly chebyshev_poly(int d) {
    if (d < 0) throw std::domain_error("chebyshev_poly: degree must be nonnegative");
    Poly prev = Poly::one();
    Poly cur = Poly::monomial(GQ(1), 1);
    if (d == 0) return prev;
    const Poly twoz = Poly::monomial(GQ(2), 1);
    for (int k = 2; k <= d; ++k) {
        Poly next = twoz * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

namespace {

// Exact points with ramification index equal to the degree.
std::vector<ProjPoint> totally_ramified_points(const RatMap& r) {
    const int d = r.degree();
    std::vector<ProjPoint> pts;
    for (const auto& [fac, mult] : squarefree_decomposition(wronskian(r))) {
        if (mult != d - 1) continue;
        if (fac.degree() == 1) {
            pts.push_back(ProjPoint::finite(-fac[0] / fac[1]));
        } else if (fac.degree() == 2) {
            const GQ b = fac[1] / fac[2], c = fac[0] / fac[2];
            if (auto s = gq_sqrt(b * b - GQ(4) * c)) {
                pts.push_back(ProjPoint::finite((-b + *s) / GQ(2)));
                pts.push_back(ProjPoint::finite((-b - *s) / GQ(2)));
            }
        }
        // a factor of degree >= 3 cannot carry multiplicity d - 1: the
        // Wronskian has degree at most 2d - 2
    }
    if (wronskian(mobius_conjugate(r, inversion())).valuation() == d - 1)
        pts.push_back(ProjPoint::infinity());
    return pts;
}

bool is_monomial(const Poly& p, int deg) {
    return p.degree() == deg && p.valuation() == deg;
}

// A third exact point distinct from both, to pin the Moebius map down.
ProjPoint third_point(const ProjPoint& p0, const ProjPoint& p1) {
    for (long t = 0;; ++t) {
        ProjPoint q = ProjPoint::finite(GQ(t));
        if (!same_point(q, p0, 0.0) && !same_point(q, p1, 0.0)) return q;
    }
}

std::optional<SpecialReport> check_power(const RatMap& r, const std::vector<ProjPoint>& pts) {
    const int d = r.degree();
    for (size_t i = 0; i < pts.size(); ++i) {
        for (size_t j = 0; j < pts.size(); ++j) {
            if (i == j) continue;
            const ProjPoint& p0 = pts[i];
            const ProjPoint& pinf = pts[j];
            Mobius mu = mobius_from_three_points(
                {p0, third_point(p0, pinf), pinf},
                {ProjPoint::finite(GQ(0)), ProjPoint::finite(GQ(1)), ProjPoint::infinity()});
            RatMap sigma = mobius_conjugate(r, mu);
            SpecialReport rep;
            rep.form = SpecialForm::Power;
            rep.degree = d;
            rep.witness = mu;
            if (sigma.den().is_constant() && is_monomial(sigma.num(), d)) {
                rep.inverted = false;
                return rep;
            }
            if (sigma.num().is_constant() && is_monomial(sigma.den(), d)) {
                rep.inverted = true;
                return rep;
            }
        }
    }
    return std::nullopt;
}

std::optional<SpecialReport> check_chebyshev(const RatMap& r, const std::vector<ProjPoint>& pts) {
    const int d = r.degree();
    const Poly Td = chebyshev_poly(d);
    const RatMap target_plus{Td};
    const RatMap target_minus{Td.scaled(GQ(-1))};

    for (const ProjPoint& pinf : pts) {
        if (!same_point(eval_proj(r, pinf), pinf, 0.0)) continue; // must be fixed
        Mobius nu = pinf.is_infinity()
                        ? Mobius::identity()
                        : Mobius(GQ(0), GQ(1), GQ(1), -(pinf.x / pinf.y));
        RatMap S = mobius_conjugate(r, nu);
        if (!S.is_polynomial()) continue;
        const Poly s = S.num().scaled(S.den().constant_term().inv());

        if (d == 2) {
            // Affine normal form z^2 + c; the Chebyshev class is c == -2.
            const GQ s2 = s[2], s1 = s[1], s0 = s[0];
            if (s0 * s2 + s1 / GQ(2) - (s1 * s1) / GQ(4) != GQ(-2)) continue;
            const Mobius A = Mobius::affine(s2, s1 / GQ(2)); // S -> z^2 - 2
            const Mobius eta = Mobius::affine(GQ(BigRat(1, 2)), GQ(0)); // z^2 - 2 -> T_2
            SpecialReport rep;
            rep.form = SpecialForm::Chebyshev;
            rep.degree = d;
            rep.sign = 1;
            rep.witness = eta * A * nu;
            return rep;
        }

        // d >= 3: the finite critical values of S are the images of +-1
        // under the affine conjugator. Read them numerically, reconstruct,
        // and verify the affine map exactly.
        const Poly sd = s.derivative();
        auto cps = aberth_roots(sd.to_complex_ld(), RootOptions{});
        std::vector<CLD> vals;
        auto sc = s.to_complex_ld();
        for (const CLD& z : cps) vals.push_back(detail::eval_cld(sc, z));
        auto groups = cluster_points(vals, 1e-6);
        if (groups.size() != 2) continue;
        auto v1 = reconstruct_gq(vals[groups[0][0]], kDenBound, 1e-7);
        auto v2 = reconstruct_gq(vals[groups[1][0]], kDenBound, 1e-7);
        if (!v1 || !v2) continue;

        for (int swap = 0; swap < 2; ++swap) {
            const GQ va = swap ? *v2 : *v1;
            const GQ vb = swap ? *v1 : *v2;
            const GQ u = (va - vb) / GQ(2), v = (va + vb) / GQ(2);
            if (u.is_zero()) continue;
            const Mobius A(u, v, GQ(0), GQ(1)); // A(+-1) = va, vb
            RatMap cand = mobius_conjugate(S, A.inverse());
            int sign = 0;
            if (cand == target_plus) sign = 1;
            if (cand == target_minus) sign = -1;
            if (sign != 0) {
                SpecialReport rep;
                rep.form = SpecialForm::Chebyshev;
                rep.degree = d;
                rep.sign = sign;
                rep.witness = A.inverse() * nu;
                return rep;
            }
        }
    }
    return std::nullopt;
}

} // namespace

SpecialReport detect_special(const RatMap& r) {
    SpecialReport rep;
    rep.degree = r.degree();
    if (r.degree() < 2) return rep;

    auto pts = totally_ramified_points(r);
    if (pts.size() >= 2)
        if (auto power = check_power(r, pts)) return *power;
    if (!pts.empty())
        if (auto cheb = check_chebyshev(r, pts)) return *cheb;
    return rep;
}

} // namespace rittlab
