#pragma once

/**
 * @file linalg.hpp
 * @brief Exact dense linear algebra over the Gaussian rationals, a complex
 *        floating-point echelon form, and the Smith normal form over the
 *        integers.
 */

#include <complex>
#include <vector>

#include "rittlab/gq.hpp"

namespace rittlab {

// Row-major dense matrix over GQ.
class GQMatrix {
public:
    GQMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    GQ& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const GQ& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

private:
    int rows_, cols_;
    std::vector<GQ> a_;
};

// In-place reduced row echelon form; returns the rank.
int rref(GQMatrix& m);

// Basis of the right nullspace {v : m v = 0}, each vector of length cols().
std::vector<std::vector<GQ>> nullspace(const GQMatrix& m);

// Reduced row echelon form over complex long doubles with partial pivoting;
// entries below tol count as zero. Returns the rank.
int rref_complex(std::vector<std::vector<std::complex<long double>>>& m, double tol);

// Diagonal of the Smith normal form (nonnegative, divisibility chain,
// zeros trailing). The input matrix is consumed.
std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> m);

} // namespace rittlab
