/**
 * @file decgraph.cpp
 * @brief Conjugacy classification of rational maps, the rotation graph of
 *        a map's certified splits, cell completion over rotation cycles of
 *        prime chains, and integral homology.
 *
 * Layout
 *   1. invariant fingerprint: exact conjugacy invariants (degree,
 *      ramification profile, fixed point divisor), so equal classes can
 *      never be separated by a rounding boundary
 *   2. conjugate_maps: distinguished-point anchor search with numeric
 *      screening, Gaussian-rational reconstruction, exact verification
 *   3. build_graph: breadth-first rotation closure with conjugacy merging
 *      and a canonical final vertex order
 *   4. graph_complex / cw_complete: the undirected 1-complex, plus one
 *      k-cell per rotation class of each length-(k+1) prime chain with
 *      pairwise distinct rotation vertices
 *   5. homology: Smith normal form ranks and invariant factors
 *   6. export_graph: Graphviz DOT and JSON serializations
 */

#include "rittlab/decgraph.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

#include "internal.hpp"
#include "rittlab/decompose.hpp"
#include "rittlab/dynamics.hpp"
#include "rittlab/equivalence.hpp"
#include "rittlab/linalg.hpp"
#include "rittlab/parse.hpp"
#include "rittlab/poly.hpp"
#include "rittlab/reconstruct.hpp"

namespace rittlab {

namespace {

using detail::CLD;

constexpr double kMultiplierTol = 1e-4; // multiplier agreement across conjugates
constexpr double kScreenTol = 1e-6;     // chordal residual accepted on samples
constexpr double kReconTol = 1e-9;      // numeric-to-exact reconstruction
constexpr double kAnchorTol = 1e-9;     // distinctness of anchor points

Mobius inversion() { return Mobius(GQ(0), GQ(1), GQ(1), GQ(0)); }

// Multipliers are conjugation invariants, but they are only available
// numerically; compare with a relative tolerance so large spectra do not
// get rejected on root-finding noise.
bool multipliers_match(const std::complex<double>& x, const std::complex<double>& y) {
    return std::abs(x - y) <= kMultiplierTol * (1.0 + std::abs(x) + std::abs(y));
}

// ---------------------------------------------------------------------
// 1. Invariant fingerprint
// ---------------------------------------------------------------------

void append_profile(std::ostringstream& os, std::vector<int> v) {
    std::sort(v.begin(), v.end());
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << '.';
        os << v[i];
    }
}

} // namespace

std::string conjugacy_fingerprint(const RatMap& r) {
    const RatMap flipped = mobius_conjugate(r, inversion());

    // Ramification profile: the multiplicity of a finite point in the
    // wronskian is its index minus one, pole or not; infinity is read off
    // the inverted map.
    std::vector<int> ram;
    for (const auto& [fac, mult] : squarefree_decomposition(wronskian(r)))
        for (int i = 0; i < fac.degree(); ++i) ram.push_back(mult + 1);
    const int vinf = wronskian(flipped).valuation();
    if (vinf >= 1) ram.push_back(vinf + 1);

    // Multiplicity profile of the fixed point divisor.
    std::vector<int> fix;
    const Poly f = r.num() - r.den().shifted_up(1);
    if (!f.is_zero())
        for (const auto& [fac, mult] : squarefree_decomposition(f))
            for (int i = 0; i < fac.degree(); ++i) fix.push_back(mult);
    const Poly finf = flipped.num() - flipped.den().shifted_up(1);
    if (!finf.is_zero() && finf.valuation() >= 1) fix.push_back(finf.valuation());

    std::ostringstream os;
    os << 'd' << r.degree() << "|r";
    append_profile(os, std::move(ram));
    os << "|f";
    append_profile(os, std::move(fix));
    return os.str();
}

namespace {

// ---------------------------------------------------------------------
// 2. Conjugacy search
// ---------------------------------------------------------------------

struct Anchor {
    ProjPoint pt;
    CLD x{0.0L, 0.0L}, y{1.0L, 0.0L};
    bool is_fixed = false;
    bool is_critical = false;
    int crit_index = 0;
    std::complex<double> multiplier{0.0, 0.0};
};

std::pair<CLD, CLD> numeric_pair(const ProjPoint& p) {
    if (p.exact) {
        const std::complex<double> x = p.x.to_complex(), y = p.y.to_complex();
        return {CLD(x.real(), x.imag()), CLD(y.real(), y.imag())};
    }
    return {CLD(p.ax.real(), p.ax.imag()), CLD(p.ay.real(), p.ay.imag())};
}

std::vector<Anchor> distinguished_points(const RatMap& r, const RootOptions& opts) {
    std::vector<Anchor> pool;
    auto locate = [&pool](const ProjPoint& p) -> Anchor& {
        for (Anchor& a : pool)
            if (same_point(a.pt, p, kAnchorTol)) return a;
        Anchor a;
        a.pt = p;
        std::tie(a.x, a.y) = numeric_pair(p);
        pool.push_back(std::move(a));
        return pool.back();
    };
    for (const FixedPointInfo& f : fixed_points(r, opts)) {
        Anchor& a = locate(f.point);
        a.is_fixed = true;
        a.multiplier = f.multiplier;
    }
    for (const RamificationPoint& c : critical_points(r, opts)) {
        Anchor& a = locate(c.point);
        a.is_critical = true;
        a.crit_index = c.index;
    }
    return pool;
}

// A conjugacy sends fixed points to fixed points of the same multiplier
// and critical points to critical points of the same index.
bool compatible(const Anchor& s, const Anchor& t) {
    if (s.is_fixed != t.is_fixed || s.is_critical != t.is_critical) return false;
    if (s.is_critical && s.crit_index != t.crit_index) return false;
    if (s.is_fixed && !multipliers_match(s.multiplier, t.multiplier)) return false;
    return true;
}

struct CMat2 {
    CLD a, b, c, d;
};

CMat2 mul(const CMat2& m, const CMat2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

CMat2 adjugate(const CMat2& m) { return {m.d, -m.b, -m.c, m.a}; }

std::pair<CLD, CLD> mat_apply(const CMat2& m, const std::pair<CLD, CLD>& p) {
    CLD x = m.a * p.first + m.b * p.second;
    CLD y = m.c * p.first + m.d * p.second;
    const long double s = std::max(std::abs(x), std::abs(y));
    if (s > 0.0L) {
        x /= s;
        y /= s;
    }
    return {x, y};
}

// The Moebius matrix sending three pairwise distinct projective points to
// (0, 1, infinity).
CMat2 to_zero_one_inf(const std::pair<CLD, CLD>& p1, const std::pair<CLD, CLD>& p2,
                      const std::pair<CLD, CLD>& p3) {
    const CLD kap = p3.second * p2.first - p3.first * p2.second;
    const CLD mu = p1.second * p2.first - p1.first * p2.second;
    return {kap * p1.second, -kap * p1.first, mu * p3.second, -mu * p3.first};
}

// Homogeneous numeric evaluation (x : y) -> (num : den), renormalized.
std::pair<CLD, CLD> eval_homog(const RatMap& r, const std::pair<CLD, CLD>& p) {
    const int d = r.degree();
    std::vector<CLD> nc = r.num().to_complex_ld();
    std::vector<CLD> dc = r.den().to_complex_ld();
    nc.resize(d + 1, CLD(0.0L, 0.0L));
    dc.resize(d + 1, CLD(0.0L, 0.0L));
    std::vector<CLD> xp(d + 1), yp(d + 1);
    xp[0] = yp[0] = CLD(1.0L, 0.0L);
    for (int k = 1; k <= d; ++k) {
        xp[k] = xp[k - 1] * p.first;
        yp[k] = yp[k - 1] * p.second;
    }
    CLD n(0.0L, 0.0L), g(0.0L, 0.0L);
    for (int k = 0; k <= d; ++k) {
        n += nc[k] * xp[k] * yp[d - k];
        g += dc[k] * xp[k] * yp[d - k];
    }
    const long double s = std::max(std::abs(n), std::abs(g));
    if (s > 0.0L) {
        n /= s;
        g /= s;
    }
    return {n, g};
}

std::vector<std::complex<double>> sorted_multipliers(const RatMap& r, const RootOptions& opts) {
    std::vector<std::complex<double>> v;
    for (const FixedPointInfo& f : fixed_points(r, opts)) v.push_back(f.multiplier);
    std::sort(v.begin(), v.end(), [](const std::complex<double>& a, const std::complex<double>& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return v;
}

constexpr double kHeightCap = 1e9; // beyond this, double-precision roots are suspect

double coefficient_height(const RatMap& r) {
    double h = 0.0;
    for (const auto& c : r.num().to_complex()) h = std::max(h, std::abs(c));
    for (const auto& c : r.den().to_complex()) h = std::max(h, std::abs(c));
    return h;
}

} // namespace

ConjugacyOutcome conjugate_maps(const RatMap& a, const RatMap& b, const SplitBudget& budget) {
    if (a.degree() != b.degree() || a.degree() < 2)
        throw std::domain_error("conjugate_maps: maps must share a degree of at least 2");
    if (a == b) return {ConjugacyStatus::Conjugate, Mobius::identity()};
    if (conjugacy_fingerprint(a) != conjugacy_fingerprint(b))
        return {ConjugacyStatus::NotConjugate, std::nullopt};

    // Every rejection below this point rests on numerically computed
    // roots. On maps with huge coefficients those are not trustworthy
    // enough to certify a negative, only to fail to find a witness.
    const bool suspect =
        coefficient_height(a) > kHeightCap || coefficient_height(b) > kHeightCap;
    const ConjugacyStatus reject =
        suspect ? ConjugacyStatus::Unknown : ConjugacyStatus::NotConjugate;

    // The fixed point multiplier multisets must agree. Sorting cannot pair
    // them: conjugate pairs with near-tied real parts sort differently on
    // the two sides, so match greedily under the tolerance instead.
    const auto ma = sorted_multipliers(a, budget.roots);
    auto mb = sorted_multipliers(b, budget.roots);
    if (ma.size() != mb.size()) return {reject, std::nullopt};
    for (const auto& x : ma) {
        bool matched = false;
        for (size_t j = 0; j < mb.size(); ++j) {
            if (!multipliers_match(x, mb[j])) continue;
            mb.erase(mb.begin() + static_cast<long>(j));
            matched = true;
            break;
        }
        if (!matched) return {reject, std::nullopt};
    }

    const std::vector<Anchor> pa = distinguished_points(a, budget.roots);
    const std::vector<Anchor> pb = distinguished_points(b, budget.roots);
    if (pa.size() < 3 || pb.size() < 3) return {ConjugacyStatus::Unknown, std::nullopt};

    // Anchor triple on the source side, spread out for conditioning.
    auto dist = [](const Anchor& s, const Anchor& t) {
        return detail::chordal_pair(s.x, s.y, t.x, t.y);
    };
    int i0 = 0, i1 = 1;
    double best = -1.0;
    for (size_t i = 0; i < pa.size(); ++i)
        for (size_t j = i + 1; j < pa.size(); ++j)
            if (double d = dist(pa[i], pa[j]); d > best) {
                best = d;
                i0 = static_cast<int>(i);
                i1 = static_cast<int>(j);
            }
    int i2 = -1;
    best = -1.0;
    for (size_t k = 0; k < pa.size(); ++k) {
        if (static_cast<int>(k) == i0 || static_cast<int>(k) == i1) continue;
        if (double d = std::min(dist(pa[k], pa[i0]), dist(pa[k], pa[i1])); d > best) {
            best = d;
            i2 = static_cast<int>(k);
        }
    }
    const std::array<const Anchor*, 3> base{&pa[i0], &pa[i1], &pa[static_cast<size_t>(i2)]};
    const CMat2 ta = to_zero_one_inf({base[0]->x, base[0]->y}, {base[1]->x, base[1]->y},
                                     {base[2]->x, base[2]->y});

    const CLD one(1.0L, 0.0L), zero(0.0L, 0.0L);
    const std::array<std::pair<CLD, CLD>, 6> samples{{{CLD(0.37L, 0.0L), one},
                                                      {CLD(-1.21L, 0.43L), one},
                                                      {CLD(2.13L, -1.37L), one},
                                                      {CLD(-0.71L, -2.29L), one},
                                                      {CLD(0.58L, 1.91L), one},
                                                      {one, zero}}};

    // A true conjugacy maps the base triple to some compatible triple on
    // the target side, so enumerating those triples is exhaustive.
    bool numeric_only = false;
    for (size_t t0 = 0; t0 < pb.size(); ++t0) {
        if (!compatible(*base[0], pb[t0])) continue;
        for (size_t t1 = 0; t1 < pb.size(); ++t1) {
            if (t1 == t0 || !compatible(*base[1], pb[t1])) continue;
            for (size_t t2 = 0; t2 < pb.size(); ++t2) {
                if (t2 == t0 || t2 == t1 || !compatible(*base[2], pb[t2])) continue;
                const CMat2 tb = to_zero_one_inf({pb[t0].x, pb[t0].y}, {pb[t1].x, pb[t1].y},
                                                 {pb[t2].x, pb[t2].y});
                const CMat2 g = mul(adjugate(tb), ta);
                bool ok = true;
                for (const auto& s : samples) {
                    const auto lhs = mat_apply(g, eval_homog(a, s));
                    const auto rhs = eval_homog(b, mat_apply(g, s));
                    if (detail::chordal_pair(lhs.first, lhs.second, rhs.first, rhs.second) >
                        kScreenTol) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                // Exact reconstruction. The interpolated matrix carries an
                // arbitrary complex overall scale, so divide by the entry
                // of largest modulus rather than by a real magnitude.
                CLD piv = g.a;
                for (const CLD& e : {g.b, g.c, g.d})
                    if (std::abs(e) > std::abs(piv)) piv = e;
                const auto ra = reconstruct_gq(g.a / piv, budget.den_bound, kReconTol);
                const auto rb = reconstruct_gq(g.b / piv, budget.den_bound, kReconTol);
                const auto rc = reconstruct_gq(g.c / piv, budget.den_bound, kReconTol);
                const auto rd = reconstruct_gq(g.d / piv, budget.den_bound, kReconTol);
                if (!ra || !rb || !rc || !rd || ((*ra) * (*rd) - (*rb) * (*rc)).is_zero()) {
                    numeric_only = true;
                    continue;
                }
                const Mobius m(*ra, *rb, *rc, *rd);
                if (mobius_conjugate(a, m) == b) return {ConjugacyStatus::Conjugate, m};
                numeric_only = true;
            }
        }
    }
    return {numeric_only ? ConjugacyStatus::Unknown : reject, std::nullopt};
}

// ---------------------------------------------------------------------
// 3. Graph construction
// ---------------------------------------------------------------------

namespace {

// Class representatives are only determined up to conjugation, so pick a
// well-conditioned one: for polynomials, translate exactly so the second
// coefficient vanishes. Rotation composites otherwise drift into gauges
// with enormous coefficients, which ruins the numeric stages downstream.
RatMap depress(const RatMap& r) {
    if (!r.is_polynomial() || r.degree() < 2) return r;
    const Poly& p = r.num();
    const int d = p.degree();
    const GQ s = p[d - 1] / (GQ(d) * p[d]);
    if (s.is_zero()) return r;
    return mobius_conjugate(r, Mobius(GQ(1), s, GQ(0), GQ(1)));
}

// A finite totally ramified fixed point can be sent to infinity exactly,
// turning the map into a polynomial; hidden polynomial classes then share
// the depressed representative instead of an arbitrary drifted gauge.
RatMap normalize_rep(const RatMap& r) {
    if (r.degree() < 2) return r;
    if (r.is_polynomial()) return depress(r);
    const int d = r.degree();
    for (const auto& [fac, mult] : squarefree_decomposition(wronskian(r))) {
        if (mult != d - 1 || fac.degree() != 1) continue;
        const GQ x0 = -fac[0] / fac[1];
        const GQ den = r.den().eval(x0);
        if (den.is_zero() || r.num().eval(x0) != x0 * den) continue;
        const RatMap moved = mobius_conjugate(r, Mobius(GQ(0), GQ(1), GQ(1), -x0));
        if (moved.is_polynomial()) return depress(moved);
    }
    return r;
}

} // namespace

DecGraph build_graph(const RatMap& r, const GraphBudget& budget) {
    if (r.degree() < 2) throw std::domain_error("build_graph: degree must be at least 2");

    DecGraph g;
    const RatMap base = normalize_rep(r);
    g.vertices.push_back(MapClass{base, conjugacy_fingerprint(base)});
    std::set<std::pair<int, int>> seen;

    // The vertex list doubles as the BFS queue.
    for (size_t qi = 0; qi < g.vertices.size(); ++qi) {
        const RatMap p = g.vertices[qi].representative; // copy: the vector grows
        for (const DegreeSplit& s : degree_splits(p.degree())) {
            SplitOutcome out = rat_decompose_split(p, s, budget.split);
            if (out.budget_exhausted || out.unverified > 0) g.partial = true;
            for (const Decomposition& dec : out.splits) {
                const RatMap rot = normalize_rep(
                    compose(dec.factors[1], dec.factors[0], budget.split.degree_budget));
                std::string key = conjugacy_fingerprint(rot);
                int v = -1;
                for (size_t w = 0; w < g.vertices.size(); ++w) {
                    if (g.vertices[w].key != key) continue;
                    if (rot == g.vertices[w].representative) {
                        v = static_cast<int>(w);
                        break;
                    }
                    const ConjugacyOutcome c =
                        conjugate_maps(rot, g.vertices[w].representative, budget.split);
                    if (c.status == ConjugacyStatus::Conjugate) {
                        v = static_cast<int>(w);
                        break;
                    }
                    if (c.status == ConjugacyStatus::Unknown) g.partial = true;
                }
                if (v < 0) {
                    if (static_cast<int>(g.vertices.size()) >= budget.max_vertices) {
                        g.partial = true;
                        continue;
                    }
                    v = static_cast<int>(g.vertices.size());
                    g.vertices.push_back(MapClass{rot, std::move(key)});
                }
                if (seen.insert({static_cast<int>(qi), v}).second)
                    g.edges.push_back(
                        RotationEdge{static_cast<int>(qi), v, dec.factors[0], dec.factors[1]});
            }
        }
    }

    // Canonical vertex order, independent of the exploration order.
    const size_t n = g.vertices.size();
    std::vector<std::string> name(n);
    for (size_t i = 0; i < n; ++i) name[i] = print_ratmap(g.vertices[i].representative);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (g.vertices[x].key != g.vertices[y].key) return g.vertices[x].key < g.vertices[y].key;
        return name[x] < name[y];
    });
    std::vector<int> pos(n);
    for (size_t i = 0; i < n; ++i) pos[order[i]] = static_cast<int>(i);

    DecGraph out;
    out.partial = g.partial;
    out.basepoint = pos[0];
    out.vertices.reserve(n);
    for (size_t i = 0; i < n; ++i) out.vertices.push_back(std::move(g.vertices[order[i]]));
    out.edges.reserve(g.edges.size());
    for (RotationEdge& e : g.edges)
        out.edges.push_back(
            RotationEdge{pos[e.from], pos[e.to], std::move(e.left), std::move(e.right)});
    std::sort(out.edges.begin(), out.edges.end(), [](const RotationEdge& x, const RotationEdge& y) {
        return std::pair(x.from, x.to) < std::pair(y.from, y.to);
    });
    return out;
}

// ---------------------------------------------------------------------
// 4. Cell complexes
// ---------------------------------------------------------------------

namespace {

std::vector<std::pair<int, int>> undirected_edges(const DecGraph& g) {
    std::set<std::pair<int, int>> s;
    for (const RotationEdge& e : g.edges)
        s.insert({std::min(e.from, e.to), std::max(e.from, e.to)});
    return {s.begin(), s.end()};
}

struct CellRecord {
    std::vector<int> cycle; // rotation vertex cycle, smallest vertex first
    Decomposition chain;    // chain at the representative of cycle[0]
};

Decomposition rotate_chain(const Decomposition& chain, int k, long degree_budget) {
    const int m = static_cast<int>(chain.factors.size());
    std::vector<RatMap> f;
    f.reserve(m);
    for (int i = 0; i < m; ++i) f.push_back(chain.factors[(k + i) % m]);
    return make_chain(std::move(f), degree_budget);
}

// The vertex whose class contains q, with a witness conjugating q onto the
// stored representative.
std::pair<int, Mobius> locate_class(const DecGraph& g, const RatMap& q, const SplitBudget& budget) {
    const std::string key = conjugacy_fingerprint(q);
    for (size_t w = 0; w < g.vertices.size(); ++w) {
        if (g.vertices[w].key != key) continue;
        if (q == g.vertices[w].representative)
            return {static_cast<int>(w), Mobius::identity()};
        const ConjugacyOutcome c = conjugate_maps(q, g.vertices[w].representative, budget);
        if (c.status == ConjugacyStatus::Conjugate) return {static_cast<int>(w), *c.witness};
        if (c.status == ConjugacyStatus::Unknown)
            throw std::domain_error(
                "cw_complete: conjugacy between a rotation composite and a vertex "
                "representative was inconclusive");
    }
    throw std::domain_error("cw_complete: a rotation composite has no vertex in the graph");
}

// [m o f0, f1, ..., f_last o m^{-1}]: conjugates the whole chain, so the
// product becomes m o product o m^{-1}.
Decomposition conjugate_chain(const Decomposition& chain, const Mobius& m, long degree_budget) {
    std::vector<RatMap> f = chain.factors;
    f.front() = mobius_apply(f.front(), std::nullopt, m);
    f.back() = mobius_apply(f.back(), m.inverse(), std::nullopt);
    return make_chain(std::move(f), degree_budget);
}

// Rotation cycle of a chain based at vertex u, canonicalized to start at
// its smallest vertex with the chain conjugated onto that representative.
// Returns nothing when two rotation vertices coincide.
std::optional<CellRecord> make_cell(const DecGraph& g, int u, const Decomposition& chain,
                                    const SplitBudget& budget) {
    const int m = static_cast<int>(chain.factors.size());
    std::vector<int> cyc(m);
    cyc[0] = u;
    for (int k = 1; k < m; ++k) {
        const Decomposition rk = rotate_chain(chain, k, budget.degree_budget);
        cyc[k] = locate_class(g, rk.product, budget).first;
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (cyc[i] == cyc[j]) return std::nullopt;

    const int shift =
        static_cast<int>(std::min_element(cyc.begin(), cyc.end()) - cyc.begin());
    const Decomposition rot = rotate_chain(chain, shift, budget.degree_budget);
    const auto [w, witness] = locate_class(g, rot.product, budget);
    (void)w;
    CellRecord cell{std::vector<int>(m),
                    witness.is_identity() ? rot
                                          : conjugate_chain(rot, witness, budget.degree_budget)};
    for (int i = 0; i < m; ++i) cell.cycle[i] = cyc[(shift + i) % m];
    return cell;
}

// Sign of the permutation carrying `from` onto `to` (both sequences hold
// the same distinct values).
int permutation_parity(const std::vector<int>& from, const std::vector<int>& to) {
    const size_t n = from.size();
    std::vector<int> perm(n);
    for (size_t i = 0; i < n; ++i) {
        const auto it = std::find(to.begin(), to.end(), from[i]);
        perm[i] = static_cast<int>(it - to.begin());
    }
    int sign = 1;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (perm[i] > perm[j]) sign = -sign;
    return sign;
}

} // namespace

CWComplex graph_complex(const DecGraph& g) {
    const std::vector<std::pair<int, int>> und = undirected_edges(g);
    CWComplex c;
    c.cells.push_back(static_cast<int>(g.vertices.size()));
    c.boundary.emplace_back();
    if (und.empty()) return c;
    c.cells.push_back(static_cast<int>(und.size()));
    std::vector<std::vector<BigInt>> d1(g.vertices.size(),
                                        std::vector<BigInt>(und.size(), BigInt(0)));
    for (size_t j = 0; j < und.size(); ++j) {
        const auto [u, v] = und[j];
        if (u != v) {
            d1[u][j] = BigInt(-1);
            d1[v][j] = BigInt(1);
        }
    }
    c.boundary.push_back(std::move(d1));
    return c;
}

CWComplex cw_complete(const DecGraph& g, const GraphBudget& budget) {
    if (g.partial)
        throw std::domain_error("cw_complete: refusing a partial graph");

    const std::vector<std::pair<int, int>> und = undirected_edges(g);
    std::map<std::pair<int, int>, int> eidx;
    for (size_t j = 0; j < und.size(); ++j) eidx[und[j]] = static_cast<int>(j);

    // One cell per rotation class: enumerate prime chains at every vertex,
    // canonicalize, and dedup by chain equivalence at the base vertex.
    std::vector<std::vector<CellRecord>> higher; // higher[i] holds (i+2)-cells
    for (size_t u = 0; u < g.vertices.size(); ++u) {
        const ChainSearch cs = prime_decompositions(g.vertices[u].representative, budget.split);
        if (cs.budget_exhausted)
            throw std::domain_error("cw_complete: the prime chain search was cut short");
        for (const Decomposition& chain : cs.chains) {
            if (chain.factors.size() < 3) continue;
            auto cell = make_cell(g, static_cast<int>(u), chain, budget.split);
            if (!cell) continue;
            const int dim = static_cast<int>(cell->cycle.size()) - 1;
            if (static_cast<int>(higher.size()) < dim - 1) higher.resize(dim - 1);
            auto& bucket = higher[dim - 2];
            bool duplicate = false;
            for (const CellRecord& e : bucket) {
                if (e.cycle != cell->cycle) continue;
                const EquivOutcome eq =
                    decompositions_equivalent(cell->chain, e.chain, budget.split);
                if (eq.status == EquivStatus::Equivalent) {
                    duplicate = true;
                    break;
                }
                if (eq.status == EquivStatus::NumericOnly)
                    throw std::domain_error(
                        "cw_complete: a cell class comparison was inconclusive");
            }
            if (!duplicate) bucket.push_back(std::move(*cell));
        }
    }

    CWComplex c = graph_complex(g);
    while (!higher.empty() && higher.back().empty()) higher.pop_back();
    if (higher.empty()) return c;

    // Boundary of a k-cell, simplex convention on the ordered rotation
    // cycle: face i omits cycle[i] and carries sign (-1)^i, adjusted by the
    // parity between the face tuple and the stored cell's own order.
    for (size_t b = 0; b < higher.size(); ++b) {
        const int dim = static_cast<int>(b) + 2;
        const auto& bucket = higher[b];
        c.cells.push_back(static_cast<int>(bucket.size()));
        std::vector<std::vector<BigInt>> bd(c.cells[dim - 1],
                                            std::vector<BigInt>(bucket.size(), BigInt(0)));
        for (size_t j = 0; j < bucket.size(); ++j) {
            const std::vector<int>& cyc = bucket[j].cycle;
            for (int i = 0; i <= dim; ++i) {
                std::vector<int> face;
                face.reserve(dim);
                for (int t = 0; t <= dim; ++t)
                    if (t != i) face.push_back(cyc[t]);
                const int sign = (i % 2 == 0) ? 1 : -1;
                if (dim == 2) {
                    const auto it =
                        eidx.find({std::min(face[0], face[1]), std::max(face[0], face[1])});
                    if (it == eidx.end())
                        throw std::domain_error(
                            "cw_complete: a triangle edge is missing from the graph");
                    const int parity = face[0] < face[1] ? 1 : -1;
                    bd[it->second][j] += BigInt(sign * parity);
                    continue;
                }
                // Higher faces resolve by vertex set among the cells one
                // dimension down; anything unresolved is refused.
                std::set<int> want(face.begin(), face.end());
                int row = -1, parity = 1;
                for (size_t k = 0; k < higher[b - 1].size(); ++k) {
                    const std::vector<int>& fc = higher[b - 1][k].cycle;
                    if (std::set<int>(fc.begin(), fc.end()) != want) continue;
                    if (row >= 0)
                        throw std::domain_error(
                            "cw_complete: the face of a higher cell matches two attached "
                            "cells; the attachment is ambiguous");
                    row = static_cast<int>(k);
                    parity = permutation_parity(fc, face);
                }
                if (row < 0)
                    throw std::domain_error(
                        "cw_complete: the face of a higher cell is not attached");
                bd[row][j] += BigInt(sign * parity);
            }
        }
        c.boundary.push_back(std::move(bd));
    }
    return c;
}

// ---------------------------------------------------------------------
// 5. Homology
// ---------------------------------------------------------------------

HomologyResult homology(const CWComplex& complex) {
    const int dims = static_cast<int>(complex.cells.size());
    if (static_cast<int>(complex.boundary.size()) != dims)
        throw std::domain_error("homology: one boundary matrix is required per dimension");

    // Validate that consecutive boundaries compose to zero.
    for (int k = 2; k < dims; ++k) {
        const auto& d1 = complex.boundary[k - 1]; // cells[k-2] x cells[k-1]
        const auto& d2 = complex.boundary[k];     // cells[k-1] x cells[k]
        if (complex.cells[k - 2] == 0 || complex.cells[k - 1] == 0 || complex.cells[k] == 0)
            continue;
        for (int j = 0; j < complex.cells[k]; ++j)
            for (int i = 0; i < complex.cells[k - 2]; ++i) {
                BigInt acc(0);
                for (int t = 0; t < complex.cells[k - 1]; ++t) acc += d1[i][t] * d2[t][j];
                if (acc != 0) {
                    std::ostringstream os;
                    os << "homology: boundary composed with boundary is nonzero between "
                          "dimension-"
                       << k << " cell " << j << " and dimension-" << (k - 2) << " cell " << i;
                    throw std::domain_error(os.str());
                }
            }
    }

    std::vector<int> rank(dims + 1, 0);
    std::vector<std::vector<BigInt>> torsion(dims);
    for (int k = 1; k < dims; ++k) {
        if (complex.cells[k] == 0 || complex.cells[k - 1] == 0) continue;
        const std::vector<BigInt> diag = smith_diagonal(complex.boundary[k]);
        for (const BigInt& e : diag) {
            if (e == 0) continue;
            ++rank[k];
            if (e > 1) torsion[k - 1].push_back(e);
        }
    }

    HomologyResult h;
    h.betti.resize(dims);
    for (int k = 0; k < dims; ++k) h.betti[k] = complex.cells[k] - rank[k] - rank[k + 1];
    h.torsion = std::move(torsion);
    return h;
}

// ---------------------------------------------------------------------
// 6. Serialization
// ---------------------------------------------------------------------

std::string export_graph(const DecGraph& g, GraphFormat format) {
    if (format == GraphFormat::Dot) {
        std::ostringstream os;
        os << "digraph decomposition_graph {\n  rankdir=LR;\n";
        for (size_t i = 0; i < g.vertices.size(); ++i) {
            os << "  v" << i << " [label=\"v" << i << ": "
               << print_ratmap(g.vertices[i].representative) << "\"";
            if (static_cast<int>(i) == g.basepoint) os << ", shape=doublecircle";
            os << "];\n";
        }
        for (const RotationEdge& e : g.edges)
            os << "  v" << e.from << " -> v" << e.to << " [label=\"" << e.left.degree() << "|"
               << e.right.degree() << "\"];\n";
        os << "}\n";
        return os.str();
    }

    nlohmann::ordered_json j;
    j["vertices"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        nlohmann::ordered_json v;
        v["id"] = i;
        v["repr"] = print_ratmap(g.vertices[i].representative);
        v["degree"] = g.vertices[i].representative.degree();
        v["fingerprint"] = g.vertices[i].key;
        j["vertices"].push_back(std::move(v));
    }
    j["edges"] = nlohmann::ordered_json::array();
    for (const RotationEdge& e : g.edges) {
        nlohmann::ordered_json ed;
        ed["from"] = e.from;
        ed["to"] = e.to;
        ed["split"] = {print_ratmap(e.left), print_ratmap(e.right)};
        j["edges"].push_back(std::move(ed));
    }
    j["basepoint"] = g.basepoint;
    j["complete"] = !g.partial;
    return j.dump(2) + "\n";
}

} // namespace rittlab
