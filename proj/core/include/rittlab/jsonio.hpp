#pragma once

/**
 * @file jsonio.hpp
 * @brief JSON documents for library results.
 *
 * Maps and factors are serialized as grammar strings (print_ratmap), so
 * every coefficient stays exact and the text round-trips through
 * parse_ratmap. Moebius witnesses appear as arrays of four coefficient
 * strings [a, b, c, d]; exact sphere points as coefficient strings (with
 * "inf" for the point at infinity) and numeric ones as {re, im} objects.
 * Keys keep a fixed order, so output under fixed inputs is byte-stable.
 *
 * indent < 0 emits the compact single-line form; indent >= 0 pretty-prints
 * with that many spaces.
 */

#include <string>
#include <vector>

#include "rittlab/decgraph.hpp"
#include "rittlab/decompose.hpp"
#include "rittlab/dynamics.hpp"
#include "rittlab/equivalence.hpp"

namespace rittlab {

// {product, split, decompositions: [{product, split, factors, certified,
//  budgetExhausted}], budgetExhausted, unverified}
std::string split_report_json(const RatMap& product, DegreeSplit split,
                              const SplitOutcome& out, int indent = -1);

// {product, chains: [decomposition records], budgetExhausted}
std::string chain_search_json(const RatMap& product, const ChainSearch& out,
                              int indent = -1);

// {map, verdict, witness?, budgetExhausted}
std::string primality_json(const RatMap& r, const PrimalityReport& rep,
                           int indent = -1);

// {product, chains: [factors, factors], status, witness?, residual?}
std::string equivalence_json(const Decomposition& a, const Decomposition& b,
                             const EquivOutcome& out, int indent = -1);

// {map, horizon, alphaLowerBound, exceptional, partial, findings}
std::string virtual_report_json(const RatMap& r, const VirtualReport& rep,
                                int indent = -1);

// {map, degree, criticalPoints: [{point, index, value}]}
std::string critical_points_json(const RatMap& r,
                                 const std::vector<RamificationPoint>& pts,
                                 int indent = -1);

// {map, criticalPoints, orbits: [{point, status, period?, multiplierAbs?,
//  steps}], verdict}
std::string classification_json(const RatMap& r,
                                const std::vector<RamificationPoint>& pts,
                                const OrbitClassification& cls, int indent = -1);

// {map, form, degree?, inverted?, sign?, witness?}
std::string special_report_json(const RatMap& r, const SpecialReport& rep,
                                int indent = -1);

// {maps, status, witness?}
std::string conjugacy_json(const RatMap& a, const RatMap& b,
                           const ConjugacyOutcome& out, int indent = -1);

// {vertices, partial, filled, cells, betti, torsion}
std::string homology_json(const DecGraph& g, const CWComplex& complex,
                          const HomologyResult& h, bool filled, int indent = -1);

} // namespace rittlab
