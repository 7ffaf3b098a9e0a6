#pragma once

/**
 * @file dynamics.hpp
 * @brief Numerical and exact dynamics: critical points with ramification
 *        indices, fixed points with multipliers, critical orbit
 *        classification, and detection of power and Chebyshev forms.
 *
 * Key design decisions:
 *  - ramification indices are exact: the multiplicity of a finite point in
 *    the Wronskian is its index minus one (pole or not), and the point at
 *    infinity is read off the 1/z-conjugated map, so the index sum 2d - 2
 *    is checked exactly, never to a tolerance
 *  - orbits iterate in homogeneous coordinates with renormalization; cycle
 *    multipliers are accumulated as spherical derivatives, which are
 *    invariant under the chart swap z -> 1/z, so no orbit ever needs to
 *    leave machine range
 *  - form detection returns exact Moebius witnesses over the Gaussian
 *    rationals or reports nothing; a conjugacy that only exists over a
 *    larger field is out of scope by design
 */

#include <complex>
#include <optional>
#include <vector>

#include "rittlab/budget.hpp"
#include "rittlab/mobius.hpp"
#include "rittlab/ratmap.hpp"

namespace rittlab {

struct RamificationPoint {
    ProjPoint point;
    int index = 2;   // local valence e >= 2
    ProjPoint value; // image of the point
};

// All critical points with exact indices; sum of (index - 1) == 2d - 2.
std::vector<RamificationPoint> critical_points(const RatMap& r, const RootOptions& opts = {});

// Verifies that the critical points of outer(inner) are exactly the
// critical points of inner together with the inner-preimages of the
// critical points of outer, with multiplicative indices. Exact points
// compare exactly; numeric ones pair within pair_tol.
bool chain_rule_check(const RatMap& outer, const RatMap& inner, double pair_tol = 1e-8,
                      const RootOptions& opts = {});

struct FixedPointInfo {
    ProjPoint point;
    std::complex<double> multiplier;
};

// The d + 1 fixed points counted with multiplicity (a multiple root of
// the fixed point equation appears once; its multiplier is 1).
std::vector<FixedPointInfo> fixed_points(const RatMap& r, const RootOptions& opts = {});

enum class OrbitFate {
    Attracted,        // converges to a cycle with |multiplier| < 1 - margin
    OnRepellingCycle, // lands exactly on a cycle with |multiplier| > 1 + margin
    Undecided,
};

struct OrbitRecord {
    ProjPoint start;
    OrbitFate fate = OrbitFate::Undecided;
    int period = 0;            // cycle length when a cycle was identified
    double multiplier_modulus = 0.0;
    int steps = 0;             // iterations consumed
};

enum class StabilityVerdict { Hyperbolic, NotHyperbolic, Undecided };

struct OrbitClassification {
    std::vector<OrbitRecord> orbits;
    StabilityVerdict verdict = StabilityVerdict::Undecided;
};

// Classifies every critical orbit; Hyperbolic when all are attracted,
// NotHyperbolic when one sits on a repelling cycle, Undecided otherwise.
OrbitClassification classify_critical_orbits(const RatMap& r, const OrbitOptions& opts = {});

struct SymmetryProbe {
    StabilityVerdict first = StabilityVerdict::Undecided;  // r1 o r2
    StabilityVerdict second = StabilityVerdict::Undecided; // r2 o r1
    bool decided_agree = true; // false only when both decided and disagree
};

// Classifies both composition orders of a pair.
SymmetryProbe hyperbolic_symmetry_probe(const RatMap& r1, const RatMap& r2,
                                        const OrbitOptions& opts = {});

enum class SpecialForm { None, Power, Chebyshev };

struct SpecialReport {
    SpecialForm form = SpecialForm::None;
    int degree = 0;
    bool inverted = false; // power form z -> c * z^(-d)
    int sign = 1;          // Chebyshev sign: witness conjugates to sign * T_d
    // witness w satisfies w o r o w^{-1} == c * z^(+-d) (power, c a unit of
    // the search, not normalized away) or == sign * T_d (Chebyshev, exact).
    std::optional<Mobius> witness;
};

// Detects Moebius conjugates of power maps c*z^(+-d) and of +-T_d, with
// exact witnesses over the Gaussian rationals.
SpecialReport detect_special(const RatMap& r);

// The degree-d Chebyshev polynomial T_d (T_d(cos t) = cos(d t)).
Poly chebyshev_poly(int d);

} // namespace rittlab
