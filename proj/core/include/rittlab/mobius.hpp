#pragma once

/**
 * @file mobius.hpp
 * @brief Moebius transformations z -> (a z + b) / (c z + d) over the
 *        Gaussian rationals.
 *
 * Stored as the 2x2 coefficient matrix, canonically scaled so the first
 * nonzero entry of (a, b, c, d) is 1; equality is therefore structural.
 * The determinant is nonzero by construction.
 */

#include <array>

#include "rittlab/gq.hpp"
#include "rittlab/projpoint.hpp"

namespace rittlab {

class Mobius {
public:
    // Throws std::domain_error when ad - bc == 0.
    Mobius(const GQ& a, const GQ& b, const GQ& c, const GQ& d);

    static Mobius identity() { return Mobius(GQ(1), GQ(0), GQ(0), GQ(1)); }
    // z -> s*z + t
    static Mobius affine(const GQ& s, const GQ& t) { return Mobius(s, t, GQ(0), GQ(1)); }

    const GQ& a() const { return a_; }
    const GQ& b() const { return b_; }
    const GQ& c() const { return c_; }
    const GQ& d() const { return d_; }

    GQ det() const { return a_ * d_ - b_ * c_; }
    Mobius inverse() const { return Mobius(d_, -b_, -c_, a_); }

    // Matrix product: (m1 * m2)(z) = m1(m2(z)).
    friend Mobius operator*(const Mobius& m1, const Mobius& m2);

    friend bool operator==(const Mobius& m1, const Mobius& m2) {
        return m1.a_ == m2.a_ && m1.b_ == m2.b_ && m1.c_ == m2.c_ && m1.d_ == m2.d_;
    }
    friend bool operator!=(const Mobius& m1, const Mobius& m2) { return !(m1 == m2); }

    bool is_identity() const { return *this == identity(); }

    ProjPoint apply(const ProjPoint& p) const;
    std::complex<double> apply(const std::complex<double>& z) const;

private:
    void canonicalize();
    GQ a_, b_, c_, d_;
};

// The unique Moebius mapping the three pairwise distinct source points to
// the three pairwise distinct target points, in order. Throws
// std::domain_error when either triple has a repeated point.
Mobius mobius_from_three_points(const std::array<ProjPoint, 3>& src,
                                const std::array<ProjPoint, 3>& dst);

} // namespace rittlab
