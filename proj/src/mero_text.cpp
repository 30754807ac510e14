#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "sslab/errors.hpp"
#include "sslab/mero.hpp"

namespace sslab {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string cplx(Complex c) {
    if (c.imag() == 0.0) return num(c.real());
    return "(" + num(c.real()) + "," + num(c.imag()) + ")";
}

std::string dense_list(const LaurentPoly& p) {
    std::string s = "[";
    auto d = p.dense();
    for (size_t i = 0; i < d.size(); ++i) s += (i ? ", " : "") + cplx(d[i]);
    return s + "]";
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    MeroExpr expr() {
        MeroExpr f = term();
        while (accept('+')) f += term();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return f;
    }

    Complex complex_literal() {
        skip();
        if (accept('(')) {
            double re = real();
            expect(',');
            double im = real();
            expect(')');
            return {re, im};
        }
        return {real(), 0.0};
    }

private:
    MeroExpr term() {
        LaurentPoly n = poly();
        LaurentPoly d = LaurentPoly::constant(1.0);
        if (accept('/')) d = poly();
        if (d.is_zero()) fail("zero denominator");
        RationalPart r(n, d);
        if (accept('*')) {
            skip();
            if (s_.compare(pos_, 3, "exp") != 0) fail("expected exp(");
            pos_ += 3;
            expect('(');
            LaurentPoly e = laurent();
            expect(')');
            return MeroExpr(r, e);
        }
        return MeroExpr(r);
    }

    LaurentPoly poly() {
        expect('[');
        std::vector<Complex> c;
        c.push_back(complex_literal());
        while (accept(',')) c.push_back(complex_literal());
        expect(']');
        return LaurentPoly::from_dense(c);
    }

    LaurentPoly laurent() {
        expect('{');
        LaurentPoly::Map m;
        skip();
        if (!accept('}')) {
            do {
                skip();
                char* end = nullptr;
                long e = std::strtol(s_.c_str() + pos_, &end, 10);
                if (end == s_.c_str() + pos_) fail("expected exponent");
                pos_ = static_cast<size_t>(end - s_.c_str());
                expect(':');
                m[static_cast<int>(e)] += complex_literal();
            } while (accept(','));
            expect('}');
        }
        return LaurentPoly(m);
    }

    double real() {
        skip();
        char* end = nullptr;
        double v = std::strtod(s_.c_str() + pos_, &end);
        if (end == s_.c_str() + pos_) fail("expected number");
        pos_ = static_cast<size_t>(end - s_.c_str());
        return v;
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    [[noreturn]] void fail(const std::string& what) {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + s_ + "\"");
    }

    const std::string& s_;
    size_t pos_ = 0;
};

}  // namespace

std::string to_string(const MeroExpr& f) {
    if (f.is_zero()) return "[0]";
    std::string out;
    for (auto& t : f.terms()) {
        if (!out.empty()) out += " + ";
        out += dense_list(t.rat.num());
        if (!(t.rat.den().is_constant() && t.rat.den().coeff(0) == Complex(1.0, 0.0)))
            out += " / " + dense_list(t.rat.den());
        if (!t.expo.is_zero()) {
            out += " * exp({";
            bool first = true;
            for (auto& [e, c] : t.expo.coeffs()) {
                out += (first ? "" : ", ") + std::to_string(e) + ": " + cplx(c);
                first = false;
            }
            out += "})";
        }
    }
    return out;
}

MeroExpr parse_mero(const std::string& text) { return Parser(text).expr(); }

// Accepts "x", "(x,y)", "x,y", "yi", "x+yi", "x-yi", "i", "-i".
Complex parse_complex(const std::string& text0) {
    std::string t;
    for (char ch : text0)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) throw ParseError("empty complex literal");
    if (t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
    auto full = [&](const std::string& s, double& v) {
        if (s.empty()) return false;
        char* end = nullptr;
        v = std::strtod(s.c_str(), &end);
        return end == s.c_str() + s.size();
    };
    double re = 0.0, im = 0.0;
    if (auto comma = t.find(','); comma != std::string::npos) {
        if (full(t.substr(0, comma), re) && full(t.substr(comma + 1), im)) return {re, im};
        throw ParseError("bad complex literal \"" + text0 + "\"");
    }
    if (full(t, re)) return {re, 0.0};
    if (t.back() == 'i') {
        std::string body = t.substr(0, t.size() - 1);
        // split at the last sign that is not an exponent sign
        size_t split = std::string::npos;
        for (size_t i = body.size(); i-- > 1;)
            if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
                split = i;
                break;
            }
        std::string a = split == std::string::npos ? "" : body.substr(0, split);
        std::string b = split == std::string::npos ? body : body.substr(split);
        if (b.empty() || b == "+") b = "1";
        if (b == "-") b = "-1";
        if ((a.empty() || full(a, re)) && full(b, im)) return {a.empty() ? 0.0 : re, im};
    }
    throw ParseError("bad complex literal \"" + text0 + "\"");
}

}  // namespace sslab
