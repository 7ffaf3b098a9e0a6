#pragma once

/**
 * @file decgraph.hpp
 * @brief The decomposition graph of a rational map: vertices are Moebius
 *        conjugacy classes, directed edges are rotation moves
 *        R1 o R2 -> R2 o R1 across certified splits, and rotation cycles
 *        of longer prime chains span a cell complex whose integral
 *        homology is computed via the Smith normal form.
 *
 * Key design decisions:
 *  - two vertices merge only after an exact conjugacy witness has been
 *    verified; the invariant fingerprint (degree, ramification profile,
 *    fixed point structure) filters candidates but never decides a merge
 *  - edges are deduplicated as directed vertex pairs, while homology
 *    treats the graph as an undirected 1-complex, so a pair of opposite
 *    rotation edges carries a single 1-cell
 *  - a length-(k+1) prime chain whose rotation vertices are pairwise
 *    distinct spans one k-cell per rotation class; boundaries follow the
 *    simplex convention on the ordered rotation cycle, which makes the
 *    composite of consecutive boundary maps vanish structurally
 */

#include <optional>
#include <string>
#include <vector>

#include "rittlab/budget.hpp"
#include "rittlab/gq.hpp"
#include "rittlab/mobius.hpp"
#include "rittlab/ratmap.hpp"

namespace rittlab {

enum class ConjugacyStatus { Conjugate, NotConjugate, Unknown };

struct ConjugacyOutcome {
    ConjugacyStatus status = ConjugacyStatus::Unknown;
    // g with g o a o g^{-1} == b, set when status == Conjugate.
    std::optional<Mobius> witness;
};

// Searches for an exact Moebius conjugacy between two maps of equal
// degree >= 2 (throws std::domain_error otherwise). Candidates send
// distinguished points (fixed points tagged by multiplier, critical
// points tagged by index) to compatible distinguished points; survivors
// are reconstructed over the Gaussian rationals and verified exactly.
// Unknown is returned when a candidate passes every numeric screen but
// resists exact reconstruction.
ConjugacyOutcome conjugate_maps(const RatMap& a, const RatMap& b,
                                const SplitBudget& budget = {});

struct MapClass {
    RatMap representative; // first map discovered in the class
    std::string key;       // exact conjugacy-invariant fingerprint
};

// The invariant fingerprint used to index vertices: degree, sorted
// ramification index multiset, and the multiplicity profile of the fixed
// point divisor. Conjugate maps always produce equal keys.
std::string conjugacy_fingerprint(const RatMap& r);

struct RotationEdge {
    int from = 0;
    int to = 0;
    RatMap left;  // the certified split left factor at `from`
    RatMap right; // ... and right factor; to is the class of right o left
};

struct DecGraph {
    std::vector<MapClass> vertices;
    std::vector<RotationEdge> edges; // deduplicated by (from, to)
    int basepoint = 0;
    bool partial = false; // a budget cut the closure short
};

// Breadth-first closure of the basepoint class under rotation of every
// certified two-factor split. Requires degree >= 2; a prime map yields a
// single vertex and no edges.
DecGraph build_graph(const RatMap& r, const GraphBudget& budget = {});

// Finite cell complex. boundary[k] is the matrix of the k-th boundary map
// with cells[k-1] rows and cells[k] columns; boundary[0] is empty. The
// composite of consecutive boundary maps is zero.
struct CWComplex {
    std::vector<int> cells;
    std::vector<std::vector<std::vector<BigInt>>> boundary;
};

// The bare 1-complex of a graph: vertices and deduplicated undirected
// edges (a self-loop becomes a 1-cell with zero boundary).
CWComplex graph_complex(const DecGraph& g);

// Attaches one k-cell per rotation class of every certified length-(k+1)
// prime chain whose rotation vertices are pairwise distinct, on top of
// the bare 1-complex. Throws std::domain_error on a partial graph or when
// a chain search is cut short, since completeness of the cell set could
// then not be certified.
CWComplex cw_complete(const DecGraph& g, const GraphBudget& budget = {});

struct HomologyResult {
    std::vector<int> betti;                   // betti[k] = rank of H_k
    std::vector<std::vector<BigInt>> torsion; // invariant factors > 1 per dim
};

// Integral homology of a cell complex via the Smith normal form of the
// boundary matrices.
HomologyResult homology(const CWComplex& complex);

enum class GraphFormat { Dot, Json };

// Serializes a graph to Graphviz DOT or to JSON.
std::string export_graph(const DecGraph& g, GraphFormat format);

} // namespace rittlab
