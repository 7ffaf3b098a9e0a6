#pragma once

/**
 * @file budget.hpp
 * @brief Resource budgets and numeric thresholds.
 *
 * Every potentially expensive search takes one of these structs; exceeding
 * a cap degrades the answer (flags it partial or unknown), it never makes
 * the answer wrong. All thresholds are pinned here so call sites and tests
 * agree on a single set of values.
 */

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rittlab {

// Thrown when a composition or iterate would exceed the degree budget.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Default 4096, overridable by the RITTLAB_DEGREE_BUDGET environment
// variable (read once per process).
long degree_budget_default();

struct RootOptions {
    double tol = 1e-10;        // relative convergence target
    double cluster = 1e-8;     // cluster radius for merging roots
    int max_sweeps = 200;      // Aberth iteration budget
};

struct SplitBudget {
    enum class Tier { Numeric, Exact };

    Tier tier = Tier::Numeric;
    std::int64_t partition_cap = 100000;   // fiber partitions per degree split
    std::int64_t subset_cap = 65536;       // divisor lists and candidate triples in the exact tier
    std::int64_t den_bound = 1000000;      // rational reconstruction denominators
    long degree_budget = degree_budget_default();
    double consistency_tol = 1e-6;         // chordal spread accepted on a block
    RootOptions roots{};
};

struct OrbitOptions {
    int max_iter = 10000;
    double tol = 1e-8;             // chordal near-return threshold
    int period_cap = 64;
    double margin = 1e-6;          // attracted needs |multiplier| < 1 - margin
};

struct GraphBudget {
    int max_vertices = 64;
    SplitBudget split{};
};

} // namespace rittlab
