#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bsforge/rational.hpp"

namespace bsforge {

/// Dense univariate polynomial over Q in the variable t, coefficients ascending.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rat> coeffs);

    static UPoly monomial(const Rat& c, int degree);

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rat>& coeffs() const { return coeffs_; }
    /// Coefficient of t^k (zero past the degree).
    Rat coeff(int k) const;
    Rat leading() const;

    bool is_monic() const { return !is_zero() && leading().is_one(); }
    bool has_integer_coeffs() const;

    UPoly operator-() const;
    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const Rat& c, const UPoly& a);
    friend bool operator==(const UPoly& a, const UPoly& b) = default;

    /// Euclidean division; throws DivisionByZero for a zero divisor.
    std::pair<UPoly, UPoly> divmod(const UPoly& divisor) const;
    UPoly derivative() const;
    Rat eval(const Rat& x) const;
    UPoly monic() const;

    /// Canonical text, e.g. "t^3 - 3*t + 1".
    std::string to_string() const;

private:
    void trim();
    std::vector<Rat> coeffs_;
};

/// Monic gcd (zero if both are zero).
UPoly gcd(const UPoly& a, const UPoly& b);

/// Extended Euclid: returns (g, s) with s*a ≡ g (mod b), g the monic gcd.
std::pair<UPoly, UPoly> half_gcdex(const UPoly& a, const UPoly& b);

/// Parser for `poly := term (('+'|'-') term)*`, `term := [rational]['*']['t'['^' nat]]`.
/// A leading sign on the first term is accepted so printed output parses back.
UPoly parse_upoly(std::string_view src);

/// Sylvester resultant.
Rat resultant(const UPoly& a, const UPoly& b);

/// Discriminant with the classical sign: (-1)^{n(n-1)/2} Res(P, P') / lc(P).
Rat discriminant(const UPoly& p);

/// Irreducibility of P mod p via distinct-degree testing.
bool irreducible_mod_p(const UPoly& p, unsigned long prime);

/// Rational roots of a polynomial with rational coefficients.
std::vector<Rat> rational_roots(const UPoly& p);

/// Primes up to `bound` (sieve).
std::vector<unsigned long> primes_up_to(unsigned long bound);

}  // namespace bsforge
