#pragma once

/**
 * @file roots.hpp
 * @brief Polynomial root finding: simultaneous Aberth iteration over
 *        complex long doubles, with exact multiplicities supplied by the
 *        squarefree decomposition.
 *
 * Key design decisions:
 *  - multiplicities are never inferred numerically; an exact input is
 *    split into squarefree factors first, so the iteration only ever sees
 *    simple roots
 *  - initialization is deterministic (fixed circle of starting points),
 *    making every downstream output reproducible bit for bit
 *  - each root carries a forward-error estimate (the final Newton step)
 */

#include <complex>
#include <vector>

#include "rittlab/budget.hpp"
#include "rittlab/poly.hpp"

namespace rittlab {

struct NumRoot {
    std::complex<long double> value;
    int multiplicity = 1;
    double error = 0.0; // magnitude of the last Newton correction
};

// All roots of sum c[k] z^k, c.back() != 0, counted without multiplicity
// grouping (a multiple root appears as a tight cluster). Deterministic.
std::vector<std::complex<long double>> aberth_roots(std::vector<std::complex<long double>> c,
                                                    const RootOptions& opts = {});

// Roots of an exact polynomial with exact multiplicities, sorted by
// (re, im). Degree < 1 gives an empty list.
std::vector<NumRoot> certified_roots(const Poly& p, const RootOptions& opts = {});

// A few Newton steps for a simple root near z.
std::complex<long double> polish_root(const std::vector<std::complex<long double>>& c,
                                      std::complex<long double> z, int steps = 3);

// Greedy clustering: indices grouped so that members of a group are within
// radius of the group's first member (absolute metric).
std::vector<std::vector<int>> cluster_points(const std::vector<std::complex<long double>>& pts,
                                             double radius);

} // namespace rittlab
