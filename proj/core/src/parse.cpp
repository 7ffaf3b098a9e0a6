#include "rittlab/parse.hpp"

#include <cctype>

namespace rittlab {

namespace {

class Parser {
public:
    Parser(const std::string& text, long budget) : s_(text), budget_(budget) {}

    RatMap run() {
        RatMap r = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("parse error at " + std::to_string(pos_) + ": " + msg);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) { ++pos_; return true; }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    RatMap expr() {
        RatMap acc = term();
        for (;;) {
            char c = peek();
            if (c != '+' && c != '-') return acc;
            // A sign directly followed by a digit after '+'/'-' still reads
            // as the binary operator; the literal sign only exists where an
            // atom begins.
            ++pos_;
            RatMap rhs = term();
            const Poly &f1 = acc.num(), &g1 = acc.den();
            const Poly &f2 = rhs.num(), &g2 = rhs.den();
            Poly top = (c == '+') ? f1 * g2 + f2 * g1 : f1 * g2 - f2 * g1;
            acc = RatMap(std::move(top), g1 * g2);
        }
    }

    RatMap term() {
        RatMap acc = factor();
        for (;;) {
            char c = peek();
            if (c != '*' && c != '/') return acc;
            ++pos_;
            RatMap rhs = factor();
            if (c == '/' && rhs.num().is_zero())
                throw std::domain_error("parse: division by the zero map");
            Poly top = (c == '*') ? acc.num() * rhs.num() : acc.num() * rhs.den();
            Poly bot = (c == '*') ? acc.den() * rhs.den() : acc.den() * rhs.num();
            acc = RatMap(std::move(top), std::move(bot));
        }
    }

    RatMap factor() {
        RatMap base = atom();
        if (accept('^')) {
            long e = parse_uint("exponent");
            base = ratmap_pow(base, e, budget_);
        }
        if (accept('@')) {
            RatMap inner = factor();
            base = compose(base, inner, budget_);
        }
        return base;
    }

    RatMap atom() {
        char c = peek();
        if (c == 'z') { ++pos_; return RatMap::identity(); }
        if (c == 'i') { ++pos_; return RatMap(Poly(GQ::i())); }
        if (c == '(') {
            ++pos_;
            RatMap r = expr();
            expect(')');
            return r;
        }
        if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c)))
            return RatMap(Poly(rational()));
        if (c == '\0') fail("unexpected end of input");
        fail(std::string("unexpected character '") + c + "'");
    }

    GQ rational() {
        bool neg = false;
        if (accept('-')) neg = true;
        else accept('+');
        BigInt n = digits("integer");
        BigInt d = 1;
        // '/' binds into the literal only when digits follow; "1/z" is a
        // division of maps.
        size_t save = pos_;
        if (accept('/')) {
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                d = digits("denominator");
                if (d == 0) fail("zero denominator in rational literal");
            } else {
                pos_ = save;
            }
        }
        BigRat v(n, d);
        return GQ(neg ? -v : v);
    }

    long parse_uint(const char* what) {
        BigInt v = digits(what);
        if (v > 1000000) throw BudgetExceeded(std::string(what) + " too large");
        return v.convert_to<long>();
    }

    BigInt digits(const char* what) {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) fail(std::string("expected ") + what);
        return BigInt(s_.substr(start, pos_ - start));
    }

    const std::string& s_;
    size_t pos_ = 0;
    long budget_;
};

// "a/b" with b > 0 omitted when 1, as boost prints it.
std::string rat_str(const BigRat& v) { return v.str(); }

// The magnitude part of one coefficient token; sign handled by the caller.
// For mixed coefficients the token is fully parenthesized and self-signed,
// and negative() is false.
struct CoeffToken {
    std::string body;
    bool negative = false;
    bool unit = false; // body is empty; coefficient was +-1
};

CoeffToken coeff_token(const GQ& c, bool allow_unit) {
    CoeffToken t;
    if (c.is_real()) {
        t.negative = c.re() < 0;
        BigRat mag = t.negative ? BigRat(-c.re()) : c.re();
        if (allow_unit && mag == 1) t.unit = true;
        else t.body = rat_str(mag);
        return t;
    }
    if (c.re() == 0) {
        t.negative = c.im() < 0;
        BigRat mag = t.negative ? BigRat(-c.im()) : c.im();
        t.body = (mag == 1) ? "i" : rat_str(mag) + "*i";
        return t;
    }
    std::string im_part = (c.im() == 1)    ? "i"
                          : (c.im() == -1) ? "i"
                                           : rat_str(c.im() < 0 ? BigRat(-c.im()) : c.im()) + "*i";
    t.body = "(" + rat_str(c.re()) + (c.im() < 0 ? "-" : "+") + im_part + ")";
    return t;
}

} // namespace

RatMap parse_ratmap(const std::string& text, long degree_budget) {
    return Parser(text, degree_budget).run();
}

std::vector<RatMap> parse_chain(const std::string& text, long degree_budget) {
    std::vector<RatMap> out;
    size_t start = 0;
    int depth = 0;
    for (size_t k = 0; k <= text.size(); ++k) {
        if (k < text.size() && text[k] == '(') ++depth;
        else if (k < text.size() && text[k] == ')') --depth;
        else if (k == text.size() || (text[k] == ',' && depth == 0)) {
            out.push_back(parse_ratmap(text.substr(start, k - start), degree_budget));
            start = k + 1;
        }
    }
    return out;
}

std::string print_poly(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = p.degree(); k >= 0; --k) {
        const GQ& c = p[k];
        if (c.is_zero()) continue;
        bool leading = out.empty();
        CoeffToken t = coeff_token(c, /*allow_unit=*/k > 0);
        std::string zpart = (k == 0) ? "" : (k == 1 ? "z" : "z^" + std::to_string(k));
        std::string body = t.unit ? zpart : (zpart.empty() ? t.body : t.body + "*" + zpart);
        if (leading) {
            if (!t.negative) out = body;
            else if (!body.empty() && (std::isdigit(static_cast<unsigned char>(body[0]))))
                out = "-" + body;
            else
                out = "-1*" + body;
        } else {
            out += t.negative ? "-" : "+";
            out += body;
        }
    }
    return out;
}

std::string print_ratmap(const RatMap& r) {
    if (r.den().is_constant())
        return print_poly(r.num().scaled(r.den().constant_term().inv()));
    return "(" + print_poly(r.num()) + ")/(" + print_poly(r.den()) + ")";
}

std::string print_chain(const std::vector<RatMap>& chain) {
    std::string out;
    for (size_t k = 0; k < chain.size(); ++k) {
        std::string s = print_ratmap(chain[k]);
        int depth = 0;
        bool bare = true;
        for (char c : s) {
            if (c == '(') ++depth;
            else if (c == ')') --depth;
            else if (depth == 0 && (c == '+' || c == '-' || c == '*' || c == '/' || c == '@'))
                bare = false;
        }
        if (!bare) s = "(" + s + ")";
        if (k) out += " @ ";
        out += s;
    }
    return out;
}

} // namespace rittlab
