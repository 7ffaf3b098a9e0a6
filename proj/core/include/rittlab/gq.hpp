#pragma once

/**
 * @file gq.hpp
 * @brief Exact Gaussian rational numbers: re + im*i with re, im arbitrary
 *        precision rationals.
 *
 * Key design decisions:
 *  - backed by boost::multiprecision::cpp_rational, which keeps numerator
 *    and denominator reduced and the denominator positive
 *  - all field operations are exact; division by zero throws
 *    std::domain_error
 *  - the canonical text form is "a/b+c/d*i" with b, d > 0, used by the
 *    JSON layer; expression printing lives in parse.hpp
 */

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace rittlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

class GQ {
public:
    GQ() : re_(0), im_(0) {}
    GQ(long v) : re_(v), im_(0) {}
    GQ(const BigInt& v) : re_(v), im_(0) {}
    GQ(const BigRat& re) : re_(re), im_(0) {}
    GQ(const BigRat& re, const BigRat& im) : re_(re), im_(im) {}

    static GQ i() { return GQ(BigRat(0), BigRat(1)); }

    const BigRat& re() const { return re_; }
    const BigRat& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GQ conj() const { return GQ(re_, -im_); }

    // |z|^2 = re^2 + im^2, an exact nonnegative rational.
    BigRat norm2() const { return re_ * re_ + im_ * im_; }

    GQ operator-() const { return GQ(-re_, -im_); }

    GQ& operator+=(const GQ& o) { re_ += o.re_; im_ += o.im_; return *this; }
    GQ& operator-=(const GQ& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    GQ& operator*=(const GQ& o) {
        BigRat r = re_ * o.re_ - im_ * o.im_;
        BigRat m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }
    GQ& operator/=(const GQ& o) {
        if (o.is_zero()) throw std::domain_error("GQ: division by zero");
        BigRat n = o.norm2();
        BigRat r = (re_ * o.re_ + im_ * o.im_) / n;
        BigRat m = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }

    friend GQ operator+(GQ a, const GQ& b) { a += b; return a; }
    friend GQ operator-(GQ a, const GQ& b) { a -= b; return a; }
    friend GQ operator*(GQ a, const GQ& b) { a *= b; return a; }
    friend GQ operator/(GQ a, const GQ& b) { a /= b; return a; }

    friend bool operator==(const GQ& a, const GQ& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GQ& a, const GQ& b) { return !(a == b); }

    GQ inv() const {
        if (is_zero()) throw std::domain_error("GQ: inverse of zero");
        BigRat n = norm2();
        return GQ(re_ / n, -im_ / n);
    }

    std::complex<double> to_complex() const {
        return {re_.convert_to<double>(), im_.convert_to<double>()};
    }

    // Canonical JSON coefficient form "a/b+c/d*i" (b, d always printed).
    std::string str() const;

    // Parses the canonical form and small variations ("3", "-1/2*i", "i").
    static std::optional<GQ> parse(const std::string& s);

    // Total order (lexicographic on re, then im); used for canonical sorts,
    // not for analytic comparisons.
    friend bool lex_less(const GQ& a, const GQ& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

private:
    BigRat re_, im_;
};

// Exact square root when one exists in the Gaussian rationals. Of the two
// roots, returns the one with re > 0, or im >= 0 when re == 0.
std::optional<GQ> gq_sqrt(const GQ& v);

} // namespace rittlab
