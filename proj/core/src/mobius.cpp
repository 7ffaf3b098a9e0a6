#include "rittlab/mobius.hpp"

#include <cmath>
#include <stdexcept>

namespace rittlab {

double chordal(const std::complex<double>& x1, const std::complex<double>& y1,
               const std::complex<double>& x2, const std::complex<double>& y2) {
    double num = std::abs(x1 * y2 - x2 * y1);
    double n1 = std::sqrt(std::norm(x1) + std::norm(y1));
    double n2 = std::sqrt(std::norm(x2) + std::norm(y2));
    if (n1 == 0.0 || n2 == 0.0) return 2.0;
    return num / (n1 * n2);
}

double chordal(const ProjPoint& a, const ProjPoint& b) {
    std::complex<double> x1 = a.exact ? a.x.to_complex() : a.ax;
    std::complex<double> y1 = a.exact ? a.y.to_complex() : a.ay;
    std::complex<double> x2 = b.exact ? b.x.to_complex() : b.ax;
    std::complex<double> y2 = b.exact ? b.y.to_complex() : b.ay;
    return chordal(x1, y1, x2, y2);
}

double chordal_affine(const std::complex<double>& a, const std::complex<double>& b) {
    return chordal(a, {1.0, 0.0}, b, {1.0, 0.0});
}

bool same_point(const ProjPoint& a, const ProjPoint& b, double tol) {
    if (a.exact && b.exact) return a.x * b.y == a.y * b.x;
    return chordal(a, b) <= tol;
}

void Mobius::canonicalize() {
    const GQ* entries[4] = {&a_, &b_, &c_, &d_};
    for (const GQ* e : entries) {
        if (!e->is_zero()) {
            GQ s = e->inv();
            a_ = a_ * s;
            b_ = b_ * s;
            c_ = c_ * s;
            d_ = d_ * s;
            return;
        }
    }
}

Mobius::Mobius(const GQ& a, const GQ& b, const GQ& c, const GQ& d)
    : a_(a), b_(b), c_(c), d_(d) {
    if (det().is_zero()) throw std::domain_error("Mobius: singular matrix");
    canonicalize();
}

Mobius operator*(const Mobius& m1, const Mobius& m2) {
    return Mobius(m1.a_ * m2.a_ + m1.b_ * m2.c_, m1.a_ * m2.b_ + m1.b_ * m2.d_,
                  m1.c_ * m2.a_ + m1.d_ * m2.c_, m1.c_ * m2.b_ + m1.d_ * m2.d_);
}

ProjPoint Mobius::apply(const ProjPoint& p) const {
    if (p.exact) {
        GQ nx = a_ * p.x + b_ * p.y;
        GQ ny = c_ * p.x + d_ * p.y;
        if (ny.is_zero()) return ProjPoint::infinity();
        return ProjPoint::finite(nx / ny);
    }
    ProjPoint q;
    q.exact = false;
    q.ax = a_.to_complex() * p.ax + b_.to_complex() * p.ay;
    q.ay = c_.to_complex() * p.ax + d_.to_complex() * p.ay;
    return q;
}

std::complex<double> Mobius::apply(const std::complex<double>& z) const {
    return (a_.to_complex() * z + b_.to_complex()) / (c_.to_complex() * z + d_.to_complex());
}

namespace {

// Matrix sending (p1, p2, p3) to (0, 1, inf).
std::array<GQ, 4> to_standard_triple(const std::array<ProjPoint, 3>& p) {
    for (const auto& q : p)
        if (!q.exact) throw std::domain_error("mobius_from_three_points: approximate point");
    const GQ &x1 = p[0].x, &y1 = p[0].y, &x2 = p[1].x, &y2 = p[1].y, &x3 = p[2].x, &y3 = p[2].y;
    GQ alpha = x2 * y3 - x3 * y2;
    GQ beta = x2 * y1 - x1 * y2;
    if (alpha.is_zero() || beta.is_zero() || (x1 * y3 - x3 * y1).is_zero())
        throw std::domain_error("mobius_from_three_points: repeated point");
    return {alpha * y1, -(alpha * x1), beta * y3, -(beta * x3)};
}

} // namespace

Mobius mobius_from_three_points(const std::array<ProjPoint, 3>& src,
                                const std::array<ProjPoint, 3>& dst) {
    auto t = to_standard_triple(src);
    auto s = to_standard_triple(dst);
    // adj(s) * t
    GQ a = s[3] * t[0] - s[1] * t[2];
    GQ b = s[3] * t[1] - s[1] * t[3];
    GQ c = s[0] * t[2] - s[2] * t[0];
    GQ d = s[0] * t[3] - s[2] * t[1];
    return Mobius(a, b, c, d);
}

} // namespace rittlab
