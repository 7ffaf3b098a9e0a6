#include "rittlab/decompose.hpp"

/*
 * ============================================================================
 *  Decomposition search
 * ============================================================================
 *
 *  The numeric tier works fiber-side. For R = A o B, the fibers of B over
 *  two generic values refine the fibers of R: the fiber R^{-1}(c) breaks
 *  into d1 blocks of size d2, each block one fiber of B. The search
 *  enumerates all such partitions of a numeric fiber and reconstructs a
 *  candidate right factor from each survivor:
 *
 *   1. the block polynomials p(z) = prod(z - r), r in block 0, and q from
 *      block 1, pin down B up to post-composition with a Moebius map: the
 *      two-dimensional span of {p, q} (the pencil) is exactly the span of
 *      {num B, den B};
 *   2. a partition that really comes from a right factor must make p/q
 *      constant on every remaining block (consistency filter) and must
 *      collapse a second, independent fiber into d1 blocks of size d2
 *      (cross-fiber filter; this is the only effective filter when d1 == 2
 *      and the consistency filter is vacuous);
 *   3. the reduced row echelon form of the pencil is basis-independent, so
 *      its entries are Gaussian rationals whenever any right factor with
 *      this fiber partition is, even when p and q themselves have
 *      irrational coefficients. The echelon entries are reconstructed by
 *      continued fractions and re-verified against the partition;
 *   4. the left factor is solved exactly by linear algebra, and the pair
 *      is certified by recomposing. The echelon form doubles as the dedup
 *      key: equivalent splits share the pencil, inequivalent ones cannot.
 *
 *  Failures are counted, never guessed around: a candidate that survives
 *  the numeric filters but cannot be reconstructed or verified increments
 *  `unverified`, and a partition count over the cap sets budget_exhausted.
 * ============================================================================
 */

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "internal.hpp"
#include "rittlab/dynamics.hpp"
#include "rittlab/equivalence.hpp"
#include "rittlab/linalg.hpp"
#include "rittlab/parse.hpp"
#include "rittlab/reconstruct.hpp"
#include "rittlab/roots.hpp"

namespace rittlab {

namespace detail {

std::vector<GQ> generic_values(const std::vector<const RatMap*>& maps, int count) {
    // Only finitely many values give a short or non-squarefree fiber (the
    // critical values and one leading-coefficient ratio per map), so a
    // bounded scan over small integers always finds enough good ones.
    long cap = 16 + count;
    for (const RatMap* r : maps) cap += 2L * r->degree() + 2;
    std::vector<GQ> out;
    for (long t = 2; t < 2 + cap && static_cast<long>(out.size()) < count; ++t) {
        GQ c(t);
        bool good = true;
        for (const RatMap* r : maps) {
            Poly f = fiber_poly(*r, c);
            if (f.degree() != r->degree()) { good = false; break; }
            if (gcd(f, f.derivative()).degree() != 0) { good = false; break; }
        }
        if (good) out.push_back(c);
    }
    if (static_cast<int>(out.size()) < count)
        throw std::runtime_error("generic_values: candidate list exhausted");
    return out;
}

Poly fiber_poly(const RatMap& r, const GQ& c) {
    return r.num() - r.den().scaled(c);
}

std::vector<CLD> fiber_points(const RatMap& r, const GQ& c, const RootOptions& opts) {
    Poly f = fiber_poly(r, c);
    auto pts = aberth_roots(f.to_complex_ld(), opts);
    std::sort(pts.begin(), pts.end(), [](const CLD& a, const CLD& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return pts;
}

double chordal_pair(const CLD& a1, const CLD& b1, const CLD& a2, const CLD& b2) {
    long double cross = std::abs(a1 * b2 - a2 * b1);
    long double n1 = std::hypot(std::abs(a1), std::abs(b1));
    long double n2 = std::hypot(std::abs(a2), std::abs(b2));
    if (n1 == 0.0L || n2 == 0.0L) return 1.0;
    return static_cast<double>(cross / (n1 * n2));
}

CLD eval_cld(const std::vector<CLD>& c, const CLD& x) {
    CLD acc(0.0L, 0.0L);
    for (size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
    return acc;
}

std::vector<CLD> monic_from_roots(const std::vector<CLD>& roots) {
    std::vector<CLD> c{CLD(1.0L, 0.0L)};
    for (const CLD& r : roots) {
        c.push_back(CLD(0.0L, 0.0L));
        for (size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
        c[0] = -r * c[0];
    }
    return c; // ascending
}

std::vector<std::vector<int>> cluster_pairs(const std::vector<std::pair<CLD, CLD>>& pts,
                                            double tol) {
    std::vector<std::vector<int>> groups;
    std::vector<bool> taken(pts.size(), false);
    for (size_t i = 0; i < pts.size(); ++i) {
        if (taken[i]) continue;
        std::vector<int> g{static_cast<int>(i)};
        taken[i] = true;
        for (size_t j = i + 1; j < pts.size(); ++j) {
            if (taken[j]) continue;
            if (chordal_pair(pts[i].first, pts[i].second, pts[j].first, pts[j].second) <= tol) {
                g.push_back(static_cast<int>(j));
                taken[j] = true;
            }
        }
        groups.push_back(std::move(g));
    }
    return groups;
}

BigInt partition_count(int d1, int d2) {
    auto factorial = [](int m) {
        BigInt f = 1;
        for (int k = 2; k <= m; ++k) f *= k;
        return f;
    };
    BigInt den = factorial(d1);
    BigInt fd2 = factorial(d2);
    for (int k = 0; k < d1; ++k) den *= fd2;
    return factorial(d1 * d2) / den;
}

bool equal_blocks_partitions(int n, int d1, int d2,
                             const std::function<bool(const std::vector<std::vector<int>>&)>& visit) {
    std::vector<std::vector<int>> blocks;
    std::vector<bool> used(n, false);

    std::function<bool()> rec = [&]() -> bool {
        if (static_cast<int>(blocks.size()) == d1) return visit(blocks);
        int lead = 0;
        while (used[lead]) ++lead;
        used[lead] = true;
        std::vector<int> avail;
        for (int k = lead + 1; k < n; ++k)
            if (!used[k]) avail.push_back(k);
        const int m = static_cast<int>(avail.size());
        const int pick = d2 - 1;
        // lexicographic combinations of `pick` indices out of avail
        std::vector<int> idx(pick);
        for (int k = 0; k < pick; ++k) idx[k] = k;
        bool alive = true;
        while (alive) {
            std::vector<int> block{lead};
            for (int k = 0; k < pick; ++k) block.push_back(avail[idx[k]]);
            for (int k = 1; k <= pick; ++k) used[block[k]] = true;
            blocks.push_back(block);
            bool keep = rec();
            blocks.pop_back();
            for (int k = 1; k <= pick; ++k) used[block[k]] = false;
            if (!keep) {
                used[lead] = false;
                return false;
            }
            // advance the combination
            int t = pick - 1;
            while (t >= 0 && idx[t] == m - pick + t) --t;
            if (t < 0) {
                alive = false;
            } else {
                ++idx[t];
                for (int k = t + 1; k < pick; ++k) idx[k] = idx[k - 1] + 1;
            }
        }
        used[lead] = false;
        return true;
    };
    if (d1 * d2 != n) throw std::domain_error("equal_blocks_partitions: block sizes do not tile");
    return rec();
}

namespace {

// Does the exact candidate take a single value on every block of the
// partition, with distinct values across blocks?
bool partition_matches(const RatMap& cand, const std::vector<CLD>& fiber,
                       const std::vector<std::vector<int>>& blocks, double tol) {
    auto nc = cand.num().to_complex_ld();
    auto dc = cand.den().to_complex_ld();
    std::vector<std::pair<CLD, CLD>> reps;
    for (const auto& block : blocks) {
        CLD pa = eval_cld(nc, fiber[block[0]]);
        CLD qa = eval_cld(dc, fiber[block[0]]);
        for (size_t t = 1; t < block.size(); ++t) {
            CLD pb = eval_cld(nc, fiber[block[t]]);
            CLD qb = eval_cld(dc, fiber[block[t]]);
            if (chordal_pair(pa, qa, pb, qb) > tol) return false;
        }
        reps.emplace_back(pa, qa);
    }
    for (size_t a = 0; a < reps.size(); ++a)
        for (size_t b = a + 1; b < reps.size(); ++b)
            if (chordal_pair(reps[a].first, reps[a].second, reps[b].first, reps[b].second) <=
                10.0 * tol)
                return false;
    return true;
}

constexpr double kPencilTol = 1e-9; // echelon zero threshold and reconstruction slack

} // namespace

SplitOutcome split_numeric_tier(const RatMap& R, DegreeSplit s, const SplitBudget& budget) {
    SplitOutcome out;
    const int n = R.degree(), d1 = s.d1, d2 = s.d2;

    if (partition_count(d1, d2) > budget.partition_cap) {
        out.budget_exhausted = true;
        return out;
    }

    auto cs = generic_values({&R}, 2);
    auto fiber1 = fiber_points(R, cs[0], budget.roots);
    auto fiber2 = fiber_points(R, cs[1], budget.roots);
    const double ctol = budget.consistency_tol;

    std::set<std::string> seen;

    equal_blocks_partitions(n, d1, d2, [&](const std::vector<std::vector<int>>& blocks) {
        std::vector<CLD> r0, r1;
        for (int idx : blocks[0]) r0.push_back(fiber1[idx]);
        for (int idx : blocks[1]) r1.push_back(fiber1[idx]);
        auto pc = monic_from_roots(r0);
        auto qc = monic_from_roots(r1);

        // Consistency: the remaining blocks each sit in one fiber of p/q.
        for (size_t j = 2; j < blocks.size(); ++j) {
            CLD pa = eval_cld(pc, fiber1[blocks[j][0]]);
            CLD qa = eval_cld(qc, fiber1[blocks[j][0]]);
            for (size_t t = 1; t < blocks[j].size(); ++t) {
                CLD pb = eval_cld(pc, fiber1[blocks[j][t]]);
                CLD qb = eval_cld(qc, fiber1[blocks[j][t]]);
                if (chordal_pair(pa, qa, pb, qb) > ctol) return true;
            }
        }

        // Cross-fiber: p/q must collapse the second fiber into d1 blocks of
        // size d2 as well.
        std::vector<std::pair<CLD, CLD>> vals2;
        vals2.reserve(fiber2.size());
        for (const CLD& x : fiber2) vals2.emplace_back(eval_cld(pc, x), eval_cld(qc, x));
        auto groups = cluster_pairs(vals2, ctol);
        if (static_cast<int>(groups.size()) != d1) return true;
        for (const auto& g : groups)
            if (static_cast<int>(g.size()) != d2) return true;

        // Pencil echelon form, descending coefficients.
        std::vector<std::vector<CLD>> m(2, std::vector<CLD>(d2 + 1));
        for (int k = 0; k <= d2; ++k) {
            m[0][k] = pc[d2 - k];
            m[1][k] = qc[d2 - k];
        }
        if (rref_complex(m, kPencilTol) != 2) {
            ++out.unverified;
            return true;
        }

        std::vector<GQ> row0(d2 + 1), row1(d2 + 1);
        for (int k = 0; k <= d2; ++k) {
            auto a = reconstruct_gq(m[0][k], budget.den_bound, kPencilTol);
            auto b = reconstruct_gq(m[1][k], budget.den_bound, kPencilTol);
            if (!a || !b) {
                ++out.unverified;
                return true;
            }
            row0[d2 - k] = *a;
            row1[d2 - k] = *b;
        }
        Poly pnum(row0), pden(row1);
        if (pnum.is_zero() || pden.is_zero()) {
            ++out.unverified;
            return true;
        }
        RatMap cand(pnum, pden);
        if (cand.degree() != d2 || !partition_matches(cand, fiber1, blocks, ctol)) {
            ++out.unverified;
            return true;
        }

        // The pencil is exact and matches the partition, so the left-factor
        // solve is now the exact decision for this partition.
        auto A = left_factor_solve(R, cand);
        if (!A) return true;

        std::string key = print_ratmap(cand);
        if (seen.insert(key).second)
            out.splits.push_back(Decomposition{{*A, cand}, R});
        return true;
    });

    return out;
}

} // namespace detail

Decomposition make_chain(std::vector<RatMap> factors, long degree_budget) {
    if (factors.empty()) throw std::domain_error("make_chain: empty factor list");
    RatMap prod = factors.front();
    for (size_t k = 1; k < factors.size(); ++k) prod = compose(prod, factors[k], degree_budget);
    return Decomposition{std::move(factors), std::move(prod)};
}

std::vector<DegreeSplit> degree_splits(int n) {
    std::vector<DegreeSplit> out;
    for (int d1 = 2; d1 * 2 <= n; ++d1)
        if (n % d1 == 0) out.push_back(DegreeSplit{d1, n / d1});
    return out;
}

std::optional<RatMap> left_factor_solve(const RatMap& R, const RatMap& B) {
    const int dB = B.degree();
    if (dB < 1) throw std::domain_error("left_factor_solve: inner factor must be nonconstant");
    const int n = R.degree();
    if (n % dB != 0) return std::nullopt;
    const int d1 = n / dB;

    // A = u/v with deg <= d1 satisfies u(B) * den R == num R * v(B); the
    // homogenized monomials p^k q^(d1-k) linearize the unknowns.
    std::vector<Poly> ppow(d1 + 1), qpow(d1 + 1);
    ppow[0] = Poly::one();
    qpow[0] = Poly::one();
    for (int k = 1; k <= d1; ++k) {
        ppow[k] = ppow[k - 1] * B.num();
        qpow[k] = qpow[k - 1] * B.den();
    }

    const int rows = 2 * n + 1;
    GQMatrix m(rows, 2 * (d1 + 1));
    for (int k = 0; k <= d1; ++k) {
        Poly cu = ppow[k] * qpow[d1 - k] * R.den();
        Poly cv = ppow[k] * qpow[d1 - k] * R.num();
        for (int r = 0; r <= cu.degree(); ++r) m.at(r, k) = cu[r];
        for (int r = 0; r <= cv.degree(); ++r) m.at(r, d1 + 1 + k) = -cv[r];
    }

    auto basis = nullspace(m);
    if (basis.empty()) return std::nullopt;
    const auto& vec = basis.front();
    Poly u(std::vector<GQ>(vec.begin(), vec.begin() + d1 + 1));
    Poly v(std::vector<GQ>(vec.begin() + d1 + 1, vec.end()));
    if (v.is_zero()) return std::nullopt; // impossible for nonconstant B; defensive
    RatMap A(u, v);
    if (A.degree() != d1) return std::nullopt;
    if (compose(A, B, static_cast<long>(n) + 1) != R) return std::nullopt;
    return A;
}

SplitOutcome rat_decompose_split(const RatMap& R, DegreeSplit s, const SplitBudget& budget) {
    const int n = R.degree();
    if (s.d1 < 2 || s.d2 < 2 || s.d1 * s.d2 != n)
        throw std::domain_error("rat_decompose_split: split must have both degrees >= 2 and multiply to deg R");
    if (budget.tier == SplitBudget::Tier::Exact) return detail::split_exact_tier(R, s, budget);
    return detail::split_numeric_tier(R, s, budget);
}

std::vector<Poly> poly_right_factor(const Poly& P, int d2) {
    const int n = P.degree();
    if (n < 1) throw std::domain_error("poly_right_factor: map must be nonconstant");
    if (d2 < 1 || d2 > n) throw std::domain_error("poly_right_factor: factor degree out of range");
    if (n % d2 != 0) return {};
    const int d1 = n / d2;

    // Normal form: B monic with zero constant term. The top d2-1
    // coefficients of P/lc determine B triangularly: in B^d1 the
    // coefficient of z^(n-k), k < d2, is d1 * c_{d2-k} plus terms in the
    // already-known higher coefficients, and every other summand of
    // A(B) stops at z^(n-d2).
    Poly M = P.make_monic();
    std::vector<GQ> bc(d2 + 1);
    bc[d2] = GQ(1);
    for (int k = 1; k <= d2 - 1; ++k) {
        Poly partial(bc);
        GQ have = partial.pow(d1)[n - k];
        bc[d2 - k] = (M[n - k] - have) / GQ(d1);
    }
    Poly B(bc);

    auto A = left_factor_solve(RatMap(P), RatMap(B));
    if (!A) return {};
    return {B};
}

PrimalityReport is_prime(const RatMap& R, const SplitBudget& budget) {
    const int n = R.degree();
    if (n < 2) throw std::domain_error("is_prime: degree must be at least 2");
    PrimalityReport rep;
    bool degraded = false;
    for (DegreeSplit s : degree_splits(n)) {
        auto out = rat_decompose_split(R, s, budget);
        if (!out.splits.empty()) {
            rep.verdict = Primality::Composite;
            rep.witness = out.splits.front();
            rep.budget_exhausted = out.budget_exhausted;
            return rep;
        }
        if (out.budget_exhausted || out.unverified > 0) degraded = true;
    }
    rep.verdict = degraded ? Primality::Unknown : Primality::Prime;
    rep.budget_exhausted = degraded;
    return rep;
}

namespace {

struct ChainContext {
    const SplitBudget* budget;
    std::map<std::string, ChainSearch> memo;
};

ChainSearch chains_rec(const RatMap& R, ChainContext& cx) {
    std::string key = print_ratmap(R);
    if (auto it = cx.memo.find(key); it != cx.memo.end()) return it->second;

    ChainSearch result;
    std::vector<Decomposition> splits;
    for (DegreeSplit s : degree_splits(R.degree())) {
        auto out = rat_decompose_split(R, s, *cx.budget);
        result.budget_exhausted |= out.budget_exhausted || out.unverified > 0;
        for (auto& d : out.splits) splits.push_back(std::move(d));
    }

    if (splits.empty()) {
        result.chains.push_back(Decomposition{{R}, R});
    } else {
        std::vector<Decomposition> candidates;
        for (const Decomposition& sp : splits) {
            ChainSearch left = chains_rec(sp.factors[0], cx);
            ChainSearch right = chains_rec(sp.factors[1], cx);
            result.budget_exhausted |= left.budget_exhausted || right.budget_exhausted;
            for (const Decomposition& a : left.chains)
                for (const Decomposition& b : right.chains) {
                    std::vector<RatMap> fs = a.factors;
                    fs.insert(fs.end(), b.factors.begin(), b.factors.end());
                    candidates.push_back(Decomposition{std::move(fs), R});
                }
        }
        for (Decomposition& c : candidates) {
            bool dup = false;
            for (const Decomposition& kept : result.chains) {
                if (kept.factors.size() != c.factors.size()) continue;
                if (decompositions_equivalent(kept, c, *cx.budget).status ==
                    EquivStatus::Equivalent) {
                    dup = true;
                    break;
                }
            }
            if (!dup) result.chains.push_back(std::move(c));
        }
    }
    cx.memo.emplace(std::move(key), result);
    return result;
}

} // namespace

ChainSearch prime_decompositions(const RatMap& R, const SplitBudget& budget) {
    if (R.degree() < 2) throw std::domain_error("prime_decompositions: degree must be at least 2");
    ChainContext cx{&budget, {}};
    return chains_rec(R, cx);
}

bool commutes(const RatMap& r1, const RatMap& r2, long degree_budget) {
    return compose(r1, r2, degree_budget) == compose(r2, r1, degree_budget);
}

std::optional<std::pair<int, int>> common_iterate_search(const RatMap& r1, const RatMap& r2,
                                                         int maxN, long degree_budget) {
    if (maxN < 1) throw std::domain_error("common_iterate_search: maxN must be at least 1");
    if (r1.degree() < 1 || r2.degree() < 1)
        throw std::domain_error("common_iterate_search: maps must be nonconstant");
    std::vector<RatMap> it1, it2; // lazily filled iterates, index k-1 holds the k-th
    auto get = [degree_budget](std::vector<RatMap>& cache, const RatMap& r, int k) -> const RatMap& {
        while (static_cast<int>(cache.size()) < k)
            cache.push_back(cache.empty() ? r
                                          : compose(r, cache.back(), degree_budget));
        return cache[k - 1];
    };
    for (int n = 1; n <= maxN; ++n) {
        BigInt dn = 1;
        for (int t = 0; t < n; ++t) dn *= r1.degree();
        for (int m = 1; m <= maxN; ++m) {
            BigInt dm = 1;
            for (int t = 0; t < m; ++t) dm *= r2.degree();
            if (dn != dm) continue;
            if (get(it1, r1, n) == get(it2, r2, m)) return std::make_pair(n, m);
        }
    }
    return std::nullopt;
}

namespace {

// Two-factor reference chains at iterate level n: every cut of every
// concatenation of n base chains.
std::vector<Decomposition> reference_cuts(const std::vector<Decomposition>& base, int n,
                                          const SplitBudget& budget, bool& partial) {
    std::vector<Decomposition> out;
    std::set<std::string> seen;
    long tuples_visited = 0;
    const long tuple_cap = 512;

    std::vector<const Decomposition*> pick(n);
    std::function<void(int)> rec = [&](int pos) {
        if (tuples_visited > tuple_cap) return;
        if (pos == n) {
            ++tuples_visited;
            if (tuples_visited > tuple_cap) {
                partial = true;
                return;
            }
            std::vector<RatMap> fs;
            for (const Decomposition* d : pick)
                fs.insert(fs.end(), d->factors.begin(), d->factors.end());
            for (size_t cut = 1; cut < fs.size(); ++cut) {
                try {
                    RatMap left = fs[0];
                    for (size_t k = 1; k < cut; ++k)
                        left = compose(left, fs[k], budget.degree_budget);
                    RatMap right = fs[cut];
                    for (size_t k = cut + 1; k < fs.size(); ++k)
                        right = compose(right, fs[k], budget.degree_budget);
                    std::string key = print_ratmap(left) + "|" + print_ratmap(right);
                    if (seen.insert(key).second)
                        out.push_back(Decomposition{{left, right},
                                                    compose(left, right, budget.degree_budget)});
                } catch (const BudgetExceeded&) {
                    partial = true;
                }
            }
            return;
        }
        for (const Decomposition& d : base) {
            pick[pos] = &d;
            rec(pos + 1);
        }
    };
    rec(0);
    return out;
}

FindingStatus classify_finding(const Decomposition& d, const std::vector<Decomposition>& refs,
                               const SplitBudget& budget) {
    bool near = false;
    for (const Decomposition& ref : refs) {
        if (ref.factors[0].degree() != d.factors[0].degree()) continue;
        auto eq = decompositions_equivalent(d, ref, budget);
        if (eq.status == EquivStatus::Equivalent) return FindingStatus::Trivial;
        if (eq.status == EquivStatus::NumericOnly) near = true;
    }
    return near ? FindingStatus::Undecided : FindingStatus::New;
}

} // namespace

VirtualReport virtual_decomposability_scan(const RatMap& R, int maxN, const SplitBudget& budget) {
    if (R.degree() < 2)
        throw std::domain_error("virtual_decomposability_scan: degree must be at least 2");
    if (maxN < 1) throw std::domain_error("virtual_decomposability_scan: maxN must be at least 1");

    VirtualReport rep;
    rep.exceptional = detect_special(R).form != SpecialForm::None;

    ChainSearch base = prime_decompositions(R, budget);
    rep.partial |= base.budget_exhausted;

    RatMap Rn = R;
    for (int n = 1; n <= maxN; ++n) {
        if (n > 1) {
            try {
                Rn = compose(R, Rn, budget.degree_budget);
            } catch (const BudgetExceeded&) {
                rep.partial = true;
                break;
            }
        }
        rep.horizon = n;
        auto refs = reference_cuts(base.chains, n, budget, rep.partial);
        for (DegreeSplit s : degree_splits(Rn.degree())) {
            auto out = rat_decompose_split(Rn, s, budget);
            rep.partial |= out.budget_exhausted || out.unverified > 0;
            for (Decomposition& d : out.splits) {
                FindingStatus st = classify_finding(d, refs, budget);
                rep.findings.push_back(VirtualFinding{n, std::move(d), st});
            }
        }
    }
    for (const VirtualFinding& f : rep.findings)
        if (f.status == FindingStatus::New && f.level > rep.alpha_lower_bound)
            rep.alpha_lower_bound = f.level;
    return rep;
}

} // namespace rittlab
