#include "rittlab/ratmap.hpp"

#include <stdexcept>

namespace rittlab {

RatMap::RatMap(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("RatMap: zero denominator");
    if (!num_.is_zero()) {
        Poly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = divmod(num_, g).first;
            den_ = divmod(den_, g).first;
        }
    }
    scale_canonically();
}

RatMap RatMap::from_reduced(Poly num, Poly den) {
    RatMap r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    if (r.den_.is_zero()) throw std::domain_error("RatMap: zero denominator");
    r.scale_canonically();
    return r;
}

void RatMap::scale_canonically() {
    if (num_.is_zero()) {
        den_ = Poly::one();
        deg_ = 0;
        return;
    }
    // Den monic, or num monic when den is constant.
    GQ s = den_.is_constant() ? num_.lc().inv() : den_.lc().inv();
    num_ = num_.scaled(s);
    den_ = den_.scaled(s);
    deg_ = std::max(num_.degree(), den_.degree());
}

RatMap RatMap::from_mobius(const Mobius& m) {
    Poly num(std::vector<GQ>{m.b(), m.a()});
    Poly den(std::vector<GQ>{m.d(), m.c()});
    return RatMap(num, den);
}

Mobius RatMap::to_mobius() const {
    if (deg_ != 1) throw std::domain_error("RatMap: not a Moebius map");
    return Mobius(num_[1], num_[0], den_[1], den_[0]);
}

RatMap RatMap::derivative() const {
    Poly w = num_.derivative() * den_ - num_ * den_.derivative();
    return RatMap(w, den_ * den_);
}

GQ RatMap::eval_finite(const GQ& z) const {
    GQ d = den_.eval(z);
    if (d.is_zero()) throw std::domain_error("RatMap: evaluation at a pole");
    return num_.eval(z) / d;
}

std::complex<double> RatMap::eval(const std::complex<double>& z) const {
    return num_.eval(z) / den_.eval(z);
}

ProjPoint RatMap::eval(const ProjPoint& p) const { return eval_proj(*this, p); }

ProjPoint eval_proj(const RatMap& r, const ProjPoint& p) {
    int d = r.degree();
    const Poly& f = r.num();
    const Poly& g = r.den();
    if (p.exact) {
        // Homogenized Horner: F(x,y) = sum f_k x^k y^(d-k), G likewise.
        GQ fx, gx;
        GQ ypow(1);
        for (int k = d; k >= 0; --k) {
            fx = fx * p.x + f[k] * ypow;
            gx = gx * p.x + g[k] * ypow;
            if (k > 0) ypow = ypow * p.y;
        }
        if (gx.is_zero()) return ProjPoint::infinity();
        return ProjPoint::finite(fx / gx);
    }
    std::complex<double> fx = 0, gx = 0, ypow = 1;
    for (int k = d; k >= 0; --k) {
        fx = fx * p.ax + f[k].to_complex() * ypow;
        gx = gx * p.ax + g[k].to_complex() * ypow;
        if (k > 0) ypow = ypow * p.ay;
    }
    ProjPoint q;
    q.exact = false;
    q.ax = fx;
    q.ay = gx;
    return q;
}

RatMap compose(const RatMap& outer, const RatMap& inner, long degree_budget) {
    long prod = static_cast<long>(outer.degree()) * static_cast<long>(inner.degree());
    if (prod > degree_budget)
        throw BudgetExceeded("compose: degree " + std::to_string(prod) + " exceeds budget " +
                             std::to_string(degree_budget));
    int m = outer.degree();
    Poly u = homogeneous_eval(outer.num(), inner.num(), inner.den(), m);
    Poly v = homogeneous_eval(outer.den(), inner.num(), inner.den(), m);
    // Coprimality survives substitution: a common root would force a common
    // root of the outer pair, or of the inner pair at infinity.
    return RatMap::from_reduced(std::move(u), std::move(v));
}

RatMap ratmap_pow(const RatMap& r, long e, long degree_budget) {
    if (e < 0) throw std::domain_error("ratmap_pow: negative exponent");
    if (e == 0) return RatMap(Poly::one());
    if (static_cast<long>(r.degree()) * e > degree_budget || e > 1000000)
        throw BudgetExceeded("ratmap_pow: degree exceeds budget " +
                             std::to_string(degree_budget));
    return RatMap::from_reduced(r.num().pow(static_cast<int>(e)),
                                r.den().pow(static_cast<int>(e)));
}

RatMap iterate(const RatMap& r, int n, long degree_budget) {
    if (n < 1) throw std::domain_error("iterate: n must be >= 1");
    double dd = 1.0;
    for (int k = 0; k < n; ++k) {
        dd *= r.degree();
        if (dd > static_cast<double>(degree_budget))
            throw BudgetExceeded("iterate: degree exceeds budget " +
                                 std::to_string(degree_budget));
    }
    RatMap acc = r;
    for (int k = 1; k < n; ++k) acc = compose(r, acc, degree_budget);
    return acc;
}

Poly wronskian(const RatMap& r) {
    return r.num().derivative() * r.den() - r.num() * r.den().derivative();
}

RatMap mobius_apply(const RatMap& r, const std::optional<Mobius>& pre,
                    const std::optional<Mobius>& post) {
    Poly f = r.num(), g = r.den();
    if (pre) {
        int d = r.degree();
        Poly pn(std::vector<GQ>{pre->b(), pre->a()});
        Poly pd(std::vector<GQ>{pre->d(), pre->c()});
        f = homogeneous_eval(r.num(), pn, pd, d);
        g = homogeneous_eval(r.den(), pn, pd, d);
    }
    if (post) {
        Poly nf = f.scaled(post->a()) + g.scaled(post->b());
        Poly ng = f.scaled(post->c()) + g.scaled(post->d());
        f = std::move(nf);
        g = std::move(ng);
    }
    return RatMap::from_reduced(std::move(f), std::move(g));
}

RatMap mobius_conjugate(const RatMap& r, const Mobius& m) {
    return mobius_apply(r, m.inverse(), m);
}

} // namespace rittlab
