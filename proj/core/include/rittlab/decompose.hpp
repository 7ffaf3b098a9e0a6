#pragma once

/**
 * @file decompose.hpp
 * @brief Functional decomposition of rational maps: splitting into
 *        compositional factors, primality, prime chains, commuting-map
 *        checks, and the iterate scan for new decompositions.
 *
 * Key design decisions:
 *  - a length-2 split is represented by the canonical right factor whose
 *    numerator/denominator pencil is in reduced row echelon form; the
 *    pencil is invariant under the Moebius insertions that relate
 *    equivalent splits, so it doubles as the dedup key
 *  - the default search tier is numeric (fiber partitions, then exact
 *    verification); the exact tier never touches floating point and covers
 *    inner degree 2 (deck involutions with Gaussian-rational fibers) and
 *    polynomial maps (monic normal form), serving as a cross-check
 *  - every returned decomposition recomposes to its product exactly;
 *    candidates that fail exact verification are only counted, never
 *    returned
 */

#include <optional>
#include <utility>
#include <vector>

#include "rittlab/budget.hpp"
#include "rittlab/ratmap.hpp"

namespace rittlab {

// An ordered factorization product = factors[0] o factors[1] o ... Every
// factor has degree >= 2.
struct Decomposition {
    std::vector<RatMap> factors;
    RatMap product;
};

// Composes the factors (outermost first) and attaches the product.
Decomposition make_chain(std::vector<RatMap> factors,
                         long degree_budget = degree_budget_default());

struct DegreeSplit {
    int d1; // degree of the left factor
    int d2; // degree of the right factor
};

// Ordered degree splits (d1, d2) of n with both parts >= 2.
std::vector<DegreeSplit> degree_splits(int n);

struct SplitOutcome {
    std::vector<Decomposition> splits; // certified two-factor chains, deduped
    bool budget_exhausted = false;     // search space was cut short
    int unverified = 0;                // numeric candidates that resisted exact verification
};

// The unique A with compose(A, B) == R, if one exists.
std::optional<RatMap> left_factor_solve(const RatMap& R, const RatMap& B);

// All R = A o B with deg A = s.d1, deg B = s.d2, up to insertion of a
// Moebius between the factors.
SplitOutcome rat_decompose_split(const RatMap& R, DegreeSplit s, const SplitBudget& budget = {});

// Monic right factors of a polynomial map with constant term zero, found
// from the series expansion at infinity and verified; at most one exists.
std::vector<Poly> poly_right_factor(const Poly& P, int d2);

enum class Primality { Prime, Composite, Unknown };

struct PrimalityReport {
    Primality verdict = Primality::Unknown;
    std::optional<Decomposition> witness; // set when composite
    bool budget_exhausted = false;
};

PrimalityReport is_prime(const RatMap& R, const SplitBudget& budget = {});

struct ChainSearch {
    std::vector<Decomposition> chains; // maximal prime chains up to equivalence
    bool budget_exhausted = false;
};

ChainSearch prime_decompositions(const RatMap& R, const SplitBudget& budget = {});

// Exact commutation test R1 o R2 == R2 o R1.
bool commutes(const RatMap& r1, const RatMap& r2, long degree_budget = degree_budget_default());

// Least n (then m) with iterate(r1, n) == iterate(r2, m), both within maxN.
std::optional<std::pair<int, int>> common_iterate_search(const RatMap& r1, const RatMap& r2,
                                                         int maxN,
                                                         long degree_budget = degree_budget_default());

enum class FindingStatus {
    New,       // certified inequivalent to every reference chain
    Trivial,   // exactly equivalent to a reference chain
    Undecided, // numerically matched a reference chain but not certified
};

struct VirtualFinding {
    int level = 1;              // iterate level n
    Decomposition decomposition;
    FindingStatus status = FindingStatus::Undecided;
};

struct VirtualReport {
    int horizon = 0;            // highest level actually scanned
    std::vector<VirtualFinding> findings;
    int alpha_lower_bound = 0;  // max level with a certified new finding
    bool partial = false;       // some level was cut short by a budget
    bool exceptional = false;   // power or Chebyshev form; bounds do not apply
};

// Scans iterates R^n, n <= maxN, for decompositions inequivalent to every
// chain assembled from iterates of R and the prime factors of R.
VirtualReport virtual_decomposability_scan(const RatMap& R, int maxN,
                                           const SplitBudget& budget = {});

} // namespace rittlab
