#include "rittlab/poly.hpp"

#include <stdexcept>

namespace rittlab {

namespace {
const GQ kZero{};
} // namespace

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::monomial(const GQ& c, int k) {
    if (k < 0) throw std::domain_error("Poly: negative exponent");
    std::vector<GQ> v(static_cast<size_t>(k) + 1);
    v[static_cast<size_t>(k)] = c;
    return Poly(std::move(v));
}

const GQ& Poly::operator[](int k) const {
    if (k < 0 || static_cast<size_t>(k) >= c_.size()) return kZero;
    return c_[static_cast<size_t>(k)];
}

const GQ& Poly::lc() const {
    if (c_.empty()) throw std::domain_error("Poly: leading coefficient of zero");
    return c_.back();
}

const GQ& Poly::constant_term() const {
    if (c_.empty()) return kZero;
    return c_.front();
}

Poly Poly::operator-() const {
    std::vector<GQ> v(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) v[k] = -c_[k];
    return Poly(std::move(v));
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<GQ> v(std::max(a.c_.size(), b.c_.size()));
    for (size_t k = 0; k < v.size(); ++k) {
        if (k < a.c_.size()) v[k] += a.c_[k];
        if (k < b.c_.size()) v[k] += b.c_[k];
    }
    return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) {
    std::vector<GQ> v(std::max(a.c_.size(), b.c_.size()));
    for (size_t k = 0; k < v.size(); ++k) {
        if (k < a.c_.size()) v[k] += a.c_[k];
        if (k < b.c_.size()) v[k] -= b.c_[k];
    }
    return Poly(std::move(v));
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<GQ> v(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j].is_zero()) continue;
            v[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return Poly(std::move(v));
}

Poly Poly::scaled(const GQ& s) const {
    std::vector<GQ> v(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) v[k] = c_[k] * s;
    return Poly(std::move(v));
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<GQ> v(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) v[k - 1] = c_[k] * GQ(static_cast<long>(k));
    return Poly(std::move(v));
}

Poly Poly::pow(int e) const {
    if (e < 0) throw std::domain_error("Poly: negative power");
    Poly acc = Poly::one();
    Poly base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

GQ Poly::eval(const GQ& x) const {
    GQ acc;
    for (size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
}

std::complex<double> Poly::eval(const std::complex<double>& x) const {
    std::complex<double> acc = 0;
    for (size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k].to_complex();
    return acc;
}

std::complex<long double> Poly::eval(const std::complex<long double>& x) const {
    std::complex<long double> acc = 0;
    for (size_t k = c_.size(); k-- > 0;) {
        auto c = c_[k].to_complex();
        acc = acc * x + std::complex<long double>(c.real(), c.imag());
    }
    return acc;
}

std::vector<std::complex<double>> Poly::to_complex() const {
    std::vector<std::complex<double>> v(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) v[k] = c_[k].to_complex();
    return v;
}

std::vector<std::complex<long double>> Poly::to_complex_ld() const {
    std::vector<std::complex<long double>> v(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) {
        auto c = c_[k].to_complex();
        v[k] = {static_cast<long double>(c.real()), static_cast<long double>(c.imag())};
    }
    return v;
}

Poly Poly::make_monic() const {
    if (is_zero()) return *this;
    return scaled(lc().inv());
}

Poly Poly::shifted_up(int k) const {
    if (k < 0) throw std::domain_error("Poly: negative shift");
    if (is_zero()) return *this;
    std::vector<GQ> v(c_.size() + static_cast<size_t>(k));
    for (size_t j = 0; j < c_.size(); ++j) v[j + static_cast<size_t>(k)] = c_[j];
    return Poly(std::move(v));
}

int Poly::valuation() const {
    if (is_zero()) return 0;
    int k = 0;
    while (c_[static_cast<size_t>(k)].is_zero()) ++k;
    return k;
}

Poly Poly::shifted_down(int k) const {
    if (k == 0) return *this;
    if (valuation() < k) throw std::domain_error("Poly: shift below valuation");
    std::vector<GQ> v(c_.begin() + k, c_.end());
    return Poly(std::move(v));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<GQ> rem(a.coeffs());
    std::vector<GQ> quo(static_cast<size_t>(a.degree() - b.degree()) + 1);
    GQ inv_lc = b.lc().inv();
    for (int k = a.degree(); k >= b.degree(); --k) {
        GQ q = rem[static_cast<size_t>(k)] * inv_lc;
        if (!q.is_zero()) {
            quo[static_cast<size_t>(k - b.degree())] = q;
            for (int j = 0; j <= b.degree(); ++j)
                rem[static_cast<size_t>(k - b.degree() + j)] -= q * b[j];
        }
    }
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        // Monic normalization each round keeps coefficient growth in check.
        y = y.make_monic();
        Poly r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.is_zero() ? x : x.make_monic();
}

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& a) {
    std::vector<std::pair<Poly, int>> out;
    if (a.degree() < 1) return out;
    Poly f = a.make_monic();
    Poly g = gcd(f, f.derivative());
    Poly w = divmod(f, g).first;            // product of distinct factors
    int mult = 1;
    while (w.degree() > 0) {
        Poly y = gcd(w, g);
        Poly factor = divmod(w, y).first;   // factors of exactly this multiplicity
        if (factor.degree() > 0) out.emplace_back(factor.make_monic(), mult);
        w = std::move(y);
        g = divmod(g, w).first;
        ++mult;
    }
    return out;
}

Poly homogeneous_eval(const Poly& u, const Poly& p, const Poly& q, int m) {
    if (u.degree() > m) throw std::domain_error("homogeneous_eval: level below degree");
    // Horner in p with running powers of q.
    Poly acc = Poly(u[m]);
    Poly qpow = Poly::one();
    for (int k = m - 1; k >= 0; --k) {
        acc = acc * p;
        qpow = qpow * q;
        if (!u[k].is_zero()) acc = acc + qpow.scaled(u[k]);
    }
    return acc;
}

Poly poly_compose(const Poly& a, const Poly& b) {
    Poly acc;
    for (int k = a.degree(); k >= 0; --k) {
        acc = acc * b;
        acc = acc + Poly(a[k]);
    }
    return acc;
}

} // namespace rittlab
