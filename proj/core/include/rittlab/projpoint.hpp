#pragma once

/**
 * @file projpoint.hpp
 * @brief Points on the Riemann sphere in homogeneous coordinates (x : y),
 *        either exact over the Gaussian rationals or as complex doubles.
 *
 * Exact points are normalized to (x, 1) or (1, 0); the approximate flavor
 * keeps unnormalized coordinates and compares in the chordal metric.
 */

#include <complex>

#include "rittlab/gq.hpp"

namespace rittlab {

struct ProjPoint {
    bool exact = true;
    GQ x{1}, y{1};                 // valid when exact
    std::complex<double> ax{0.0, 0.0}, ay{1.0, 0.0}; // valid when !exact

    ProjPoint() = default;

    static ProjPoint finite(const GQ& v) {
        ProjPoint p;
        p.exact = true;
        p.x = v;
        p.y = GQ(1);
        p.ax = v.to_complex();
        p.ay = {1.0, 0.0};
        return p;
    }
    static ProjPoint infinity() {
        ProjPoint p;
        p.exact = true;
        p.x = GQ(1);
        p.y = GQ(0);
        p.ax = {1.0, 0.0};
        p.ay = {0.0, 0.0};
        return p;
    }
    static ProjPoint approx(std::complex<double> v) {
        ProjPoint p;
        p.exact = false;
        p.ax = v;
        p.ay = {1.0, 0.0};
        return p;
    }
    static ProjPoint approx_infinity() {
        ProjPoint p;
        p.exact = false;
        p.ax = {1.0, 0.0};
        p.ay = {0.0, 0.0};
        return p;
    }

    bool is_infinity() const { return exact ? y.is_zero() : ay == std::complex<double>(0.0, 0.0); }

    // Affine value; only meaningful for finite points.
    std::complex<double> value() const {
        return exact ? (is_infinity() ? std::complex<double>(0, 0) : (x / y).to_complex())
                     : ax / ay;
    }
};

// Chordal distance on the sphere, |x1 y2 - x2 y1| / (|(x1,y1)| |(x2,y2)|).
double chordal(const std::complex<double>& x1, const std::complex<double>& y1,
               const std::complex<double>& x2, const std::complex<double>& y2);
double chordal(const ProjPoint& a, const ProjPoint& b);
// Chordal distance between two affine values (either may be large).
double chordal_affine(const std::complex<double>& a, const std::complex<double>& b);

// Exact equality when both points are exact; chordal tolerance otherwise.
bool same_point(const ProjPoint& a, const ProjPoint& b, double tol);

} // namespace rittlab
