#include "bsforge/mpoly.hpp"

#include <cctype>

namespace bsforge {

RatPoly mpoly_normalize(const RatPoly& f) {
    if (f.is_zero()) fail_input("ZeroPolynomial", "cannot normalize the zero polynomial");
    mpz_class den = 1, num = 0;
    for (const auto& [e, c] : f.terms()) den = lcm_den(den, c);
    for (const auto& [e, c] : f.terms()) {
        mpz_class v = (c * Rat(den)).num();
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_mpz_t());
    }
    Rat scale(den, num);
    if (f.leading_coeff().sign() < 0) scale = -scale;
    return scale * f;
}

std::string to_string(const RatPoly& f, std::string_view prefix) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : f.terms()) {
        if (first) {
            if (c.sign() < 0) out += "-";
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += std::string(prefix) + std::to_string(i);
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        Rat mag = c.abs();
        if (mono.empty()) {
            out += mag.to_string();
        } else {
            if (!mag.is_one()) out += mag.to_string() + "*";
            out += mono;
        }
    }
    return out;
}

namespace {

class MPolyParser {
public:
    MPolyParser(std::string_view src, std::size_t nvars, std::string_view prefix)
        : src_(src), nvars_(nvars), prefix_(prefix) {}

    RatPoly parse() {
        RatPoly out(nvars_);
        skip_ws();
        if (at_end()) throw SyntaxError(pos_, "empty polynomial");
        int sign = 1;
        if (peek() == '-' || peek() == '+') {
            sign = peek() == '-' ? -1 : 1;
            ++pos_;
        }
        term(out, sign);
        for (;;) {
            skip_ws();
            if (at_end()) break;
            char c = peek();
            if (c != '+' && c != '-') throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
            ++pos_;
            term(out, c == '-' ? -1 : 1);
        }
        return out;
    }

private:
    bool at_end() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool digit() const { return !at_end() && std::isdigit(static_cast<unsigned char>(peek())); }
    std::string digits() {
        std::size_t start = pos_;
        while (digit()) ++pos_;
        return std::string(src_.substr(start, pos_ - start));
    }

    void term(RatPoly& out, int sign) {
        skip_ws();
        Rat coeff(1);
        Exps e(nvars_, 0);
        bool any = false;
        if (digit()) {
            mpz_class num(digits(), 10), den(1);
            if (!at_end() && peek() == '/') {
                ++pos_;
                if (!digit()) throw SyntaxError(pos_, "expected denominator");
                den = mpz_class(digits(), 10);
                if (den == 0) fail_input("DivByZero", "zero denominator in polynomial literal");
            }
            coeff = Rat(num, den);
            any = true;
            skip_ws();
            if (at_end() || peek() != '*') return out.add_term(e, sign > 0 ? coeff : -coeff);
            ++pos_;
            skip_ws();
        }
        for (;;) {
            if (src_.substr(pos_, prefix_.size()) != prefix_) throw SyntaxError(pos_, "expected variable");
            pos_ += prefix_.size();
            if (!digit()) throw SyntaxError(pos_, "expected variable index");
            std::size_t at = pos_;
            std::string idx = digits();
            std::size_t i = idx.size() > 6 ? nvars_ : std::stoul(idx);
            if (i >= nvars_) throw SyntaxError(at, "variable index out of range");
            int power = 1;
            skip_ws();
            if (!at_end() && peek() == '^') {
                ++pos_;
                skip_ws();
                if (!digit()) throw SyntaxError(pos_, "expected exponent");
                std::string p = digits();
                if (p.size() > 4) throw SyntaxError(pos_, "exponent too large");
                power = std::stoi(p);
            }
            e[i] += power;
            any = true;
            skip_ws();
            if (at_end() || peek() != '*') break;
            ++pos_;
            skip_ws();
        }
        if (!any) throw SyntaxError(pos_, "expected term");
        out.add_term(e, sign > 0 ? coeff : -coeff);
    }

    std::string_view src_;
    std::size_t nvars_;
    std::string_view prefix_;
    std::size_t pos_ = 0;
};

}  // namespace

RatPoly parse_mpoly(std::string_view src, std::size_t nvars, std::string_view prefix) {
    return MPolyParser(src, nvars, prefix).parse();
}

}  // namespace bsforge
