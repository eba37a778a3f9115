#include "bsforge/rational.hpp"

#include <cctype>

#include "bsforge/error.hpp"

namespace bsforge {

Rat::Rat(const mpz_class& num, const mpz_class& den) {
    if (den == 0) fail_input("DivByZero", "rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) fail_compute("DivisionByZero", "rational division by zero");
    q_ /= o.q_;
    return *this;
}

Rat Rat::inverse() const {
    if (is_zero()) fail_compute("DivisionByZero", "inverse of zero");
    return Rat(mpq_class(1) / q_);
}

Rat Rat::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rat(n, d);
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rat Rat::parse(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num_part = body.substr(0, slash);
    std::string_view den_part = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num_part) || !all_digits(den_part))
        throw SyntaxError(0, "malformed rational '" + std::string(text) + "'");
    mpz_class num(std::string(num_part), 10);
    mpz_class den(std::string(den_part), 10);
    if (den == 0) fail_input("DivByZero", "zero denominator in '" + std::string(text) + "'");
    if (negative) num = -num;
    return Rat(num, den);
}

std::string Rat::to_string() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rat::to_wire() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

long valuation(const Rat& x, unsigned long p) {
    if (x.is_zero()) fail_input("ZeroAlpha", "valuation of zero");
    long v = 0;
    mpz_class n = x.num(), d = x.den();
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++v;
    }
    while (mpz_divisible_ui_p(d.get_mpz_t(), p)) {
        mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), p);
        --v;
    }
    return v;
}

mpz_class lcm_den(const mpz_class& acc, const Rat& r) {
    mpz_class out;
    mpz_lcm(out.get_mpz_t(), acc.get_mpz_t(), r.value().get_den_mpz_t());
    return out;
}

}  // namespace bsforge
