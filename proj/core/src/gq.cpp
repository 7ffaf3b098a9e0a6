#include "rittlab/gq.hpp"

#include <sstream>

namespace rittlab {

namespace {

std::string rat_str(const BigRat& r) {
    std::ostringstream os;
    os << numerator(r) << "/" << denominator(r);
    return os.str();
}

// Parses "a" or "a/b" starting at s[pos]; advances pos past the match.
std::optional<BigRat> parse_rat(const std::string& s, size_t& pos) {
    size_t p = pos;
    bool neg = false;
    if (p < s.size() && (s[p] == '+' || s[p] == '-')) {
        neg = (s[p] == '-');
        ++p;
    }
    size_t d0 = p;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    if (p == d0) return std::nullopt;
    BigInt num(s.substr(d0, p - d0));
    BigInt den = 1;
    if (p < s.size() && s[p] == '/') {
        size_t q = p + 1;
        size_t e0 = q;
        while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
        if (q == e0) return std::nullopt;
        den = BigInt(s.substr(e0, q - e0));
        if (den == 0) return std::nullopt;
        p = q;
    }
    pos = p;
    BigRat r(num, den);
    return neg ? -r : r;
}

} // namespace

std::string GQ::str() const {
    std::string out = rat_str(re_);
    if (im_ >= 0) out += "+";
    out += rat_str(im_) + "*i";
    return out;
}

namespace {

std::optional<BigRat> rat_sqrt(const BigRat& r) {
    if (r < 0) return std::nullopt;
    const BigInt n = numerator(r), d = denominator(r);
    const BigInt sn = sqrt(n), sd = sqrt(d);
    if (sn * sn != n || sd * sd != d) return std::nullopt;
    return BigRat(sn, sd);
}

} // namespace

std::optional<GQ> gq_sqrt(const GQ& v) {
    const BigRat& a = v.re();
    const BigRat& b = v.im();
    if (b == 0) {
        if (a >= 0) {
            auto s = rat_sqrt(a);
            if (!s) return std::nullopt;
            return GQ(*s, BigRat(0));
        }
        auto s = rat_sqrt(-a);
        if (!s) return std::nullopt;
        return GQ(BigRat(0), *s);
    }
    // (x + y i)^2 = a + b i needs x^2 = (a + |v|)/2 and y = b / (2x).
    auto m = rat_sqrt(a * a + b * b);
    if (!m) return std::nullopt;
    auto x = rat_sqrt((a + *m) / 2);
    if (!x || *x == 0) return std::nullopt;
    GQ s(*x, b / (2 * *x));
    if (s * s != v) return std::nullopt;
    return s;
}

std::optional<GQ> GQ::parse(const std::string& raw) {
    std::string s;
    s.reserve(raw.size());
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) return std::nullopt;

    BigRat re = 0, im = 0;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t start = pos;
        // A term is either "<rat>*i", "<sign>i", or "<rat>".
        if (s[pos] == '+' || s[pos] == '-') {
            if (pos + 1 < s.size() && s[pos + 1] == 'i') {
                im += (s[pos] == '-') ? -1 : 1;
                pos += 2;
                continue;
            }
        }
        if (s[pos] == 'i') {
            im += 1;
            ++pos;
            continue;
        }
        auto r = parse_rat(s, pos);
        if (!r) return std::nullopt;
        if (pos < s.size() && s[pos] == '*') {
            if (pos + 1 < s.size() && s[pos + 1] == 'i') {
                im += *r;
                pos += 2;
            } else {
                return std::nullopt;
            }
        } else if (pos < s.size() && s[pos] == 'i') {
            im += *r;
            ++pos;
        } else {
            re += *r;
        }
        if (pos == start) return std::nullopt;
    }
    return GQ(re, im);
}

} // namespace rittlab
