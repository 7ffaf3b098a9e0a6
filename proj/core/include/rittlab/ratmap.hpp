#pragma once

/**
 * @file ratmap.hpp
 * @brief Rational maps on the Riemann sphere with exact Gaussian rational
 *        coefficients.
 *
 * Invariants: num and den are coprime and canonically scaled, so two maps
 * are equal as sphere maps iff their stored coefficients are equal. The
 * canonical scaling makes den monic, or num monic when den is constant.
 * degree() == max(deg num, deg den).
 */

#include <optional>

#include "rittlab/budget.hpp"
#include "rittlab/mobius.hpp"
#include "rittlab/poly.hpp"
#include "rittlab/projpoint.hpp"

namespace rittlab {

class RatMap {
public:
    // Reduces to lowest terms and rescales canonically. Throws
    // std::domain_error when den == 0.
    RatMap(Poly num, Poly den);

    explicit RatMap(const Poly& num) : RatMap(num, Poly::one()) {}

    static RatMap identity() { return RatMap(Poly::monomial(GQ(1), 1)); }
    static RatMap from_mobius(const Mobius& m);
    // Skips the gcd reduction; requires gcd(num, den) == 1.
    static RatMap from_reduced(Poly num, Poly den);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    int degree() const { return deg_; }

    bool is_constant() const { return deg_ == 0; }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_mobius() const { return deg_ == 1; }

    // Only for degree-1 maps.
    Mobius to_mobius() const;

    friend bool operator==(const RatMap& a, const RatMap& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatMap& a, const RatMap& b) { return !(a == b); }

    // Derivative as a rational map, (f'g - fg')/g^2.
    RatMap derivative() const;

    ProjPoint eval(const ProjPoint& p) const;
    GQ eval_finite(const GQ& z) const; // throws std::domain_error at a pole
    std::complex<double> eval(const std::complex<double>& z) const;

private:
    RatMap() = default;
    void scale_canonically();
    Poly num_, den_;
    int deg_ = 0;
};

// Pointwise power (f/g)^e, e >= 0; e == 0 gives the constant map 1.
RatMap ratmap_pow(const RatMap& r, long e, long degree_budget = degree_budget_default());

// Composition outer(inner). Throws BudgetExceeded when the product of the
// degrees exceeds the budget.
RatMap compose(const RatMap& outer, const RatMap& inner,
               long degree_budget = degree_budget_default());

// n-fold iterate, n >= 1.
RatMap iterate(const RatMap& r, int n, long degree_budget = degree_budget_default());

// num' den - num den', the polynomial whose finite roots (with multiplicity)
// are the finite critical points of the map.
Poly wronskian(const RatMap& r);

// post o r o pre, with either transformation optional.
RatMap mobius_apply(const RatMap& r, const std::optional<Mobius>& pre,
                    const std::optional<Mobius>& post);

// Conjugation m o r o m^{-1}.
RatMap mobius_conjugate(const RatMap& r, const Mobius& m);

// Homogeneous evaluation; total on the sphere, exact on exact points.
ProjPoint eval_proj(const RatMap& r, const ProjPoint& p);

} // namespace rittlab
