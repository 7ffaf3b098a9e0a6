#include "rittlab/linalg.hpp"

#include <cmath>

namespace rittlab {

int rref(GQMatrix& m) {
    int rank = 0;
    for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
        int pivot = -1;
        for (int r = rank; r < m.rows(); ++r) {
            if (!m.at(r, col).is_zero()) { pivot = r; break; }
        }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int c = 0; c < m.cols(); ++c) std::swap(m.at(pivot, c), m.at(rank, c));
        GQ inv = m.at(rank, col).inv();
        for (int c = col; c < m.cols(); ++c) m.at(rank, c) = m.at(rank, c) * inv;
        for (int r = 0; r < m.rows(); ++r) {
            if (r == rank || m.at(r, col).is_zero()) continue;
            GQ f = m.at(r, col);
            for (int c = col; c < m.cols(); ++c)
                m.at(r, c) = m.at(r, c) - f * m.at(rank, c);
        }
        ++rank;
    }
    return rank;
}

std::vector<std::vector<GQ>> nullspace(const GQMatrix& m) {
    GQMatrix e = m;
    rref(e);
    // Pivot column of each nonzero row.
    std::vector<int> pivot_of_row;
    std::vector<bool> is_pivot(static_cast<size_t>(e.cols()), false);
    for (int r = 0; r < e.rows(); ++r) {
        int p = -1;
        for (int c = 0; c < e.cols(); ++c)
            if (!e.at(r, c).is_zero()) { p = c; break; }
        if (p < 0) break;
        pivot_of_row.push_back(p);
        is_pivot[static_cast<size_t>(p)] = true;
    }
    std::vector<std::vector<GQ>> basis;
    for (int free = 0; free < e.cols(); ++free) {
        if (is_pivot[static_cast<size_t>(free)]) continue;
        std::vector<GQ> v(static_cast<size_t>(e.cols()));
        v[static_cast<size_t>(free)] = GQ(1);
        for (size_t r = 0; r < pivot_of_row.size(); ++r)
            v[static_cast<size_t>(pivot_of_row[r])] = -e.at(static_cast<int>(r), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

int rref_complex(std::vector<std::vector<std::complex<long double>>>& m, double tol) {
    if (m.empty()) return 0;
    int rows = static_cast<int>(m.size());
    int cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        long double best = tol;
        for (int r = rank; r < rows; ++r) {
            long double mag = std::abs(m[static_cast<size_t>(r)][static_cast<size_t>(col)]);
            if (mag > best) { best = mag; pivot = r; }
        }
        if (pivot < 0) {
            for (int r = rank; r < rows; ++r) m[static_cast<size_t>(r)][static_cast<size_t>(col)] = 0;
            continue;
        }
        std::swap(m[static_cast<size_t>(pivot)], m[static_cast<size_t>(rank)]);
        auto inv = std::complex<long double>(1) / m[static_cast<size_t>(rank)][static_cast<size_t>(col)];
        for (int c = col; c < cols; ++c) m[static_cast<size_t>(rank)][static_cast<size_t>(c)] *= inv;
        m[static_cast<size_t>(rank)][static_cast<size_t>(col)] = 1;
        for (int r = 0; r < rows; ++r) {
            if (r == rank) continue;
            auto f = m[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (std::abs(f) == 0.0L) continue;
            for (int c = col; c < cols; ++c)
                m[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
                    f * m[static_cast<size_t>(rank)][static_cast<size_t>(c)];
            m[static_cast<size_t>(r)][static_cast<size_t>(col)] = 0;
        }
        ++rank;
    }
    return rank;
}

namespace {

BigInt abs_int(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

} // namespace

std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> m) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    std::vector<BigInt> diag;
    size_t t = 0;
    while (t < rows && t < cols) {
        // Find the nonzero entry of least magnitude in the remaining block.
        size_t pr = rows, pc = cols;
        for (size_t r = t; r < rows; ++r)
            for (size_t c = t; c < cols; ++c) {
                if (m[r][c] == 0) continue;
                if (pr == rows || abs_int(m[r][c]) < abs_int(m[pr][pc])) { pr = r; pc = c; }
            }
        if (pr == rows) break;
        std::swap(m[t], m[pr]);
        for (size_t r = 0; r < rows; ++r) std::swap(m[r][t], m[r][pc]);

        bool clean = true;
        for (size_t r = t + 1; r < rows; ++r) {
            if (m[r][t] == 0) continue;
            BigInt q = m[r][t] / m[t][t];
            for (size_t c = t; c < cols; ++c) m[r][c] -= q * m[t][c];
            if (m[r][t] != 0) clean = false;
        }
        for (size_t c = t + 1; c < cols; ++c) {
            if (m[t][c] == 0) continue;
            BigInt q = m[t][c] / m[t][t];
            for (size_t r = t; r < rows; ++r) m[r][c] -= q * m[r][t];
            if (m[t][c] != 0) clean = false;
        }
        if (!clean) continue; // smaller pivot now exists; repeat this step

        // Enforce divisibility: fold any non-divisible entry into column t.
        bool folded = false;
        for (size_t r = t + 1; r < rows && !folded; ++r)
            for (size_t c = t + 1; c < cols && !folded; ++c)
                if (m[r][c] % m[t][t] != 0) {
                    for (size_t cc = t; cc < cols; ++cc) m[t][cc] += m[r][cc];
                    folded = true;
                }
        if (folded) continue;

        diag.push_back(abs_int(m[t][t]));
        ++t;
    }
    return diag;
}

} // namespace rittlab
