#pragma once

/**
 * @file poly.hpp
 * @brief Dense univariate polynomials over the Gaussian rationals.
 *
 * Invariants: coefficients are stored ascending by power and the leading
 * coefficient is nonzero; the zero polynomial has an empty coefficient
 * vector and degree() == -1.
 */

#include <complex>
#include <vector>

#include "rittlab/gq.hpp"

namespace rittlab {

class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<GQ> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(const GQ& constant) { c_.push_back(constant); trim(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(GQ(1)); }
    // z^k with coefficient c.
    static Poly monomial(const GQ& c, int k);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    const std::vector<GQ>& coeffs() const { return c_; }
    // Coefficient of z^k; zero beyond the degree.
    const GQ& operator[](int k) const;
    const GQ& lc() const;           // leading coefficient; throws on zero poly
    const GQ& constant_term() const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const GQ& s) const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly derivative() const;
    Poly pow(int e) const;

    GQ eval(const GQ& x) const;
    std::complex<double> eval(const std::complex<double>& x) const;
    std::complex<long double> eval(const std::complex<long double>& x) const;

    std::vector<std::complex<double>> to_complex() const;
    std::vector<std::complex<long double>> to_complex_ld() const;

    bool is_monic() const { return !is_zero() && lc().is_one(); }
    Poly make_monic() const;

    // Shifts by z^k (k >= 0), i.e. multiplies by the monomial z^k.
    Poly shifted_up(int k) const;
    // Largest k with z^k dividing the polynomial (0 for nonzero constant).
    int valuation() const;
    // Divides by z^k; requires valuation() >= k.
    Poly shifted_down(int k) const;

private:
    void trim();
    std::vector<GQ> c_;
};

// Euclidean division: a = q*b + r with deg r < deg b. Throws on b == 0.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);

// Monic gcd; gcd(0, 0) == 0.
Poly gcd(const Poly& a, const Poly& b);

// Yun squarefree decomposition: returns pairs (factor, multiplicity) with
// the factors squarefree, pairwise coprime, monic, and
// a == lc * prod factor^multiplicity.
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& a);

// Sum_k u_k * p^k * q^(m - k) for m >= deg u: the numerator (or denominator)
// of u evaluated at the rational function p/q, homogenized at level m.
Poly homogeneous_eval(const Poly& u, const Poly& p, const Poly& q, int m);

// Composition a(b) of plain polynomials (Horner).
Poly poly_compose(const Poly& a, const Poly& b);

} // namespace rittlab
