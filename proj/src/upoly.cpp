#include "bsforge/upoly.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <set>

#include "bsforge/error.hpp"
#include "bsforge/matrix.hpp"

namespace bsforge {

UPoly::UPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UPoly UPoly::monomial(const Rat& c, int degree) {
    std::vector<Rat> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return UPoly(std::move(v));
}

void UPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rat UPoly::coeff(int k) const {
    if (k < 0 || k > degree()) return Rat(0);
    return coeffs_[static_cast<std::size_t>(k)];
}

Rat UPoly::leading() const { return is_zero() ? Rat(0) : coeffs_.back(); }

bool UPoly::has_integer_coeffs() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& c) { return c.is_integer(); });
}

UPoly UPoly::operator-() const {
    std::vector<Rat> v = coeffs_;
    for (auto& c : v) c = -c;
    return UPoly(std::move(v));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rat> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i < a.coeffs_.size()) v[i] += a.coeffs_[i];
        if (i < b.coeffs_.size()) v[i] += b.coeffs_[i];
    }
    return UPoly(std::move(v));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UPoly(std::move(v));
}

UPoly operator*(const Rat& c, const UPoly& a) {
    std::vector<Rat> v = a.coeffs_;
    for (auto& x : v) x *= c;
    return UPoly(std::move(v));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& divisor) const {
    if (divisor.is_zero()) fail_compute("DivisionByZero", "polynomial division by zero");
    std::vector<Rat> rem = coeffs_;
    int dd = divisor.degree();
    int qd = degree() - dd;
    if (qd < 0) return {UPoly(), *this};
    std::vector<Rat> quo(static_cast<std::size_t>(qd) + 1);
    Rat lc_inv = divisor.leading().inverse();
    for (int k = qd; k >= 0; --k) {
        Rat c = rem[static_cast<std::size_t>(k + dd)] * lc_inv;
        quo[static_cast<std::size_t>(k)] = c;
        if (c.is_zero()) continue;
        for (int j = 0; j <= dd; ++j)
            rem[static_cast<std::size_t>(k + j)] -= c * divisor.coeffs_[static_cast<std::size_t>(j)];
    }
    return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

UPoly UPoly::derivative() const {
    if (degree() < 1) return {};
    std::vector<Rat> v(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) v[k - 1] = coeffs_[k] * Rat(static_cast<long>(k));
    return UPoly(std::move(v));
}

Rat UPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UPoly UPoly::monic() const {
    if (is_zero()) return {};
    return leading().inverse() * *this;
}

std::string UPoly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rat& c = coeffs_[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        Rat mag = c.abs();
        if (first) {
            if (c.sign() < 0) out += "-";
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        first = false;
        if (k == 0) {
            out += mag.to_string();
            continue;
        }
        if (!mag.is_one()) out += mag.to_string() + "*";
        out += "t";
        if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
}

UPoly gcd(const UPoly& a, const UPoly& b) {
    UPoly x = a, y = b;
    while (!y.is_zero()) {
        UPoly r = x.divmod(y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

std::pair<UPoly, UPoly> half_gcdex(const UPoly& a, const UPoly& b) {
    UPoly r0 = a, r1 = b;
    UPoly s0({Rat(1)}), s1;
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        UPoly s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.is_zero()) return {UPoly(), UPoly()};
    Rat inv = r0.leading().inverse();
    return {inv * r0, inv * s0};
}

namespace {

class UPolyParser {
public:
    explicit UPolyParser(std::string_view src) : src_(src) {}

    UPoly parse() {
        skip_ws();
        if (pos_ >= src_.size()) throw SyntaxError(pos_, "empty polynomial");
        std::vector<Rat> acc;
        int sign = 1;
        if (peek() == '-' || peek() == '+') {
            sign = peek() == '-' ? -1 : 1;
            ++pos_;
        }
        add_term(acc, sign);
        for (;;) {
            skip_ws();
            if (pos_ >= src_.size()) break;
            char c = peek();
            if (c != '+' && c != '-') throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
            ++pos_;
            add_term(acc, c == '-' ? -1 : 1);
        }
        return UPoly(std::move(acc));
    }

private:
    char peek() const { return src_[pos_]; }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool digit_here() {
        skip_ws();
        return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(peek()));
    }

    std::string read_digits() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return std::string(src_.substr(start, pos_ - start));
    }

    void add_term(std::vector<Rat>& acc, int sign) {
        skip_ws();
        std::size_t term_start = pos_;
        Rat coeff(1);
        bool have_coeff = false;
        if (digit_here()) {
            mpz_class num(read_digits(), 10);
            mpz_class den(1);
            skip_ws();
            if (pos_ < src_.size() && peek() == '/') {
                ++pos_;
                if (!digit_here()) throw SyntaxError(pos_, "expected denominator");
                std::size_t den_pos = pos_;
                den = mpz_class(read_digits(), 10);
                if (den == 0) throw Error(ErrorKind::InvalidInput, "DivByZero",
                                          "zero denominator at position " + std::to_string(den_pos));
            }
            coeff = Rat(num, den);
            have_coeff = true;
        }
        skip_ws();
        bool star = false;
        if (pos_ < src_.size() && peek() == '*') {
            star = true;
            ++pos_;
            skip_ws();
        }
        int degree = 0;
        if (pos_ < src_.size() && peek() == 't') {
            ++pos_;
            degree = 1;
            skip_ws();
            if (pos_ < src_.size() && peek() == '^') {
                ++pos_;
                if (!digit_here()) throw SyntaxError(pos_, "expected exponent");
                std::string e = read_digits();
                if (e.size() > 6) throw SyntaxError(pos_, "exponent too large");
                degree = std::stoi(e);
            }
        } else if (star || !have_coeff) {
            throw SyntaxError(pos_ < src_.size() ? pos_ : term_start, "expected term");
        }
        if (acc.size() <= static_cast<std::size_t>(degree)) acc.resize(static_cast<std::size_t>(degree) + 1);
        acc[static_cast<std::size_t>(degree)] += sign > 0 ? coeff : -coeff;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

// Minimal modular polynomial helpers (coefficients in [0, p), ascending).
using ModPoly = std::vector<std::uint64_t>;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

void mod_trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly mod_rem(ModPoly a, const ModPoly& m, std::uint64_t p) {
    mod_trim(a);
    std::uint64_t inv = powmod(m.back(), p - 2, p);
    std::size_t dm = m.size() - 1;
    while (a.size() >= m.size()) {
        std::uint64_t c = mulmod(a.back(), inv, p);
        std::size_t shift = a.size() - 1 - dm;
        for (std::size_t j = 0; j <= dm; ++j) a[shift + j] = (a[shift + j] + p - mulmod(c, m[j], p)) % p;
        mod_trim(a);
    }
    return a;
}

ModPoly mod_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    return mod_rem(std::move(r), m, p);
}

ModPoly mod_gcd(ModPoly a, ModPoly b, std::uint64_t p) {
    mod_trim(a);
    mod_trim(b);
    while (!b.empty()) {
        ModPoly r = mod_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// x^(p^k) mod m by repeated p-th powering.
ModPoly frobenius_power(const ModPoly& m, std::uint64_t p, int k) {
    ModPoly x = mod_rem({0, 1}, m, p);
    for (int i = 0; i < k; ++i) {
        ModPoly base = x, acc = {1};
        std::uint64_t e = p;
        while (e) {
            if (e & 1) acc = mod_mulmod(acc, base, m, p);
            base = mod_mulmod(base, base, m, p);
            e >>= 1;
        }
        x = acc;
    }
    return x;
}

ModPoly mod_sub_x(ModPoly a, std::uint64_t p) {
    if (a.size() < 2) a.resize(2, 0);
    a[1] = (a[1] + p - 1) % p;
    mod_trim(a);
    return a;
}

std::vector<int> prime_factors(int n) {
    std::vector<int> out;
    for (int q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::vector<mpz_class> divisors(mpz_class n) {
    n = abs(n);
    std::vector<std::pair<mpz_class, int>> fac;
    for (mpz_class q = 2; q * q <= n; ++q) {
        if (q > 10000000) fail_compute("InputTooLarge", "rational root search needs a factorization beyond 1e7");
        if (n % q == 0) {
            int e = 0;
            while (n % q == 0) {
                n /= q;
                ++e;
            }
            fac.emplace_back(q, e);
        }
    }
    if (n > 1) fac.emplace_back(n, 1);
    std::vector<mpz_class> out{1};
    for (auto& [q, e] : fac) {
        std::size_t sz = out.size();
        mpz_class pw = 1;
        for (int i = 1; i <= e; ++i) {
            pw *= q;
            for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pw);
        }
    }
    return out;
}

}  // namespace

UPoly parse_upoly(std::string_view src) { return UPolyParser(src).parse(); }

Rat resultant(const UPoly& a, const UPoly& b) {
    int m = a.degree(), n = b.degree();
    if (m < 0 || n < 0) return Rat(0);
    if (m == 0 && n == 0) return Rat(1);
    std::size_t size = static_cast<std::size_t>(m + n);
    Mat<Rat> s(size, size);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j)
            s(static_cast<std::size_t>(i), static_cast<std::size_t>(i + j)) = a.coeff(m - j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j)
            s(static_cast<std::size_t>(n + i), static_cast<std::size_t>(i + j)) = b.coeff(n - j);
    return determinant(s);
}

Rat discriminant(const UPoly& p) {
    int n = p.degree();
    if (n < 2) fail_input("DegreeTooLow", "discriminant needs degree >= 2");
    Rat r = resultant(p, p.derivative()) / p.leading();
    if ((n * (n - 1) / 2) % 2 == 1) r = -r;
    return r;
}

bool irreducible_mod_p(const UPoly& poly, unsigned long prime) {
    if (poly.degree() < 1) fail_input("DegreeTooLow", "irreducibility needs degree >= 1");
    ModPoly m;
    for (const Rat& c : poly.coeffs()) {
        if (mpz_divisible_ui_p(c.den().get_mpz_t(), prime))
            fail_input("BadPrime", "prime " + std::to_string(prime) + " divides a coefficient denominator");
        mpz_class num = c.num() % prime;
        if (num < 0) num += prime;
        mpz_class den = c.den() % prime;
        std::uint64_t inv = powmod(den.get_ui(), prime - 2, prime);
        m.push_back(mulmod(num.get_ui(), inv, prime));
    }
    if (m.back() == 0) fail_input("BadPrime", "prime " + std::to_string(prime) + " divides the leading coefficient");
    int d = poly.degree();
    if (d == 1) return true;
    // x^(p^d) == x mod m, and gcd(x^(p^(d/q)) - x, m) == 1 for every prime q | d.
    ModPoly top = mod_sub_x(frobenius_power(m, prime, d), prime);
    if (!top.empty()) return false;
    for (int q : prime_factors(d)) {
        ModPoly g = mod_gcd(m, mod_sub_x(frobenius_power(m, prime, d / q), prime), prime);
        if (g.size() > 1) return false;
    }
    return true;
}

std::vector<Rat> rational_roots(const UPoly& p) {
    if (p.degree() < 1) return {};
    mpz_class scale = 1;
    for (const Rat& c : p.coeffs()) scale = lcm_den(scale, c);
    std::vector<mpz_class> ints;
    for (const Rat& c : p.coeffs()) ints.push_back((c * Rat(scale)).num());
    std::set<Rat> roots;
    std::size_t low = 0;
    while (ints[low] == 0) ++low;
    if (low > 0) roots.insert(Rat(0));
    for (const mpz_class& a : divisors(ints[low]))
        for (const mpz_class& b : divisors(ints.back()))
            for (int s : {1, -1}) {
                Rat cand(mpz_class(s * a), b);
                if (p.eval(cand).is_zero()) roots.insert(cand);
            }
    return {roots.begin(), roots.end()};
}

std::vector<unsigned long> primes_up_to(unsigned long bound) {
    std::vector<unsigned long> out;
    if (bound < 2) return out;
    std::vector<bool> composite(bound + 1, false);
    for (unsigned long i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (unsigned long j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return out;
}

}  // namespace bsforge
