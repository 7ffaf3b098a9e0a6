#pragma once

// Shared numeric-fiber machinery for the decomposition and equivalence
// searches. Internal to the library; not installed.

#include <complex>
#include <functional>
#include <vector>

#include "rittlab/budget.hpp"
#include "rittlab/decompose.hpp"
#include "rittlab/gq.hpp"
#include "rittlab/ratmap.hpp"

namespace rittlab::detail {

using CLD = std::complex<long double>;

// Values c that keep every listed map's fiber simple, finite, and of full
// size: deg(num - c*den) == deg(map) and the polynomial is squarefree.
// Deterministic (small integers upward).
std::vector<GQ> generic_values(const std::vector<const RatMap*>& maps, int count);

// num - c*den as an exact polynomial.
Poly fiber_poly(const RatMap& r, const GQ& c);

// The fiber over a generic value as numeric points, sorted by (re, im).
std::vector<CLD> fiber_points(const RatMap& r, const GQ& c, const RootOptions& opts);

// Chordal distance between projective pairs (a1:b1), (a2:b2).
double chordal_pair(const CLD& a1, const CLD& b1, const CLD& a2, const CLD& b2);

// Horner evaluation of an ascending coefficient vector.
CLD eval_cld(const std::vector<CLD>& c, const CLD& x);

// Monic polynomial with the given roots, ascending coefficients.
std::vector<CLD> monic_from_roots(const std::vector<CLD>& roots);

// Greedy grouping of projective pairs: each group collects the points
// within tol of its first member.
std::vector<std::vector<int>> cluster_pairs(const std::vector<std::pair<CLD, CLD>>& pts,
                                            double tol);

// (d1*d2)! / ((d2!)^d1 * d1!): the number of partitions of the fiber into
// d1 unordered blocks of size d2.
BigInt partition_count(int d1, int d2);

// Visits every partition of {0..n-1} into d1 blocks of size d2 exactly
// once (blocks ordered by smallest member, members ascending). The visitor
// returns false to abort; the function returns false iff aborted.
bool equal_blocks_partitions(int n, int d1, int d2,
                             const std::function<bool(const std::vector<std::vector<int>>&)>& visit);

// The two search tiers behind rat_decompose_split. The numeric tier lives
// in decompose.cpp, the exact tier in factorqi.cpp.
SplitOutcome split_numeric_tier(const RatMap& R, DegreeSplit s, const SplitBudget& budget);
SplitOutcome split_exact_tier(const RatMap& R, DegreeSplit s, const SplitBudget& budget);

} // namespace rittlab::detail
