#pragma once

/**
 * @file equivalence.hpp
 * @brief Equivalence of decompositions under Moebius insertion, with
 *        exact witnesses.
 *
 * Two chains [P1..Pm] and [R1..Rm] of the same product are equivalent
 * when there are Moebius maps g1..g_{m-1} with
 *
 *   P1 = R1 o g1,   Pi = gi_{-1}^{-1} o Ri o gi,   Pm = g_{m-1}^{-1} o Rm.
 *
 * Key design decisions:
 *  - candidate insertions are enumerated from fibers over two generic
 *    values: any admissible Moebius permutes the fibers pointwise, so
 *    three anchor images determine it and the search is exhaustive
 *  - candidates are reconstructed over the Gaussian rationals and
 *    verified exactly; a candidate that survives every numeric check but
 *    fails reconstruction or exact verification is reported as
 *    NumericOnly instead of silently dropped
 *  - NotEquivalent is only returned when the exhaustive candidate
 *    enumeration finds no numerically admissible insertion at all
 */

#include <optional>
#include <vector>

#include "rittlab/budget.hpp"
#include "rittlab/decompose.hpp"
#include "rittlab/mobius.hpp"

namespace rittlab {

enum class EquivStatus { Equivalent, NumericOnly, NotEquivalent };

struct EquivOutcome {
    EquivStatus status = EquivStatus::NotEquivalent;
    // The insertion chain g1..g_{m-1}, set when status == Equivalent.
    std::optional<std::vector<Mobius>> witness;
    // Best residual over near-miss candidates when status == NumericOnly.
    double residual = 0.0;
};

// Decides equivalence of two chains; chains of different lengths or with
// different products are NotEquivalent.
EquivOutcome decompositions_equivalent(const Decomposition& a, const Decomposition& b,
                                       const SplitBudget& budget = {});

struct MobiusSearch {
    std::vector<Mobius> solutions; // every g with lhs o g == rhs, exact
    bool numeric_only = false;     // some candidate resisted exact verification
    double residual = 0.0;
};

// All Moebius g with lhs o g == rhs. Requires deg lhs == deg rhs >= 2.
MobiusSearch right_mobius_solutions(const RatMap& lhs, const RatMap& rhs,
                                    const SplitBudget& budget = {});

} // namespace rittlab
