#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bsforge/matrix.hpp"
#include "bsforge/rational.hpp"
#include "bsforge/upoly.hpp"

namespace bsforge {

/// sigma(t) = (p*t + q) / (r*t + s).
struct MobiusCoeffs {
    Rat p, q, r, s;
    friend bool operator==(const MobiusCoeffs&, const MobiusCoeffs&) = default;
};

enum class Generator { Default, Other };

/// Shared, immutable description of Q[t]/(P) with its chosen generator.
struct FieldData {
    UPoly poly;
    int degree = 0;
    /// Coordinates of t^k mod P for k = 0 .. 2d-2.
    std::vector<std::vector<Rat>> reduction;
    /// sigma_pow[k] has column j = coordinates of sigma^k(t^j).
    std::vector<Mat<Rat>> sigma_pow;
    std::optional<MobiusCoeffs> mobius;
};

/// Element of Q[t]/(P) in the power basis. A default-constructed or
/// rational-constructed element has no field attached and behaves as a
/// scalar; it is promoted on contact with a field element.
class FieldElem {
public:
    FieldElem() : coords_{Rat(0)} {}
    FieldElem(const Rat& r) : coords_{r} {}  // NOLINT(google-explicit-constructor)
    FieldElem(long v) : coords_{Rat(v)} {}   // NOLINT(google-explicit-constructor)
    FieldElem(int v) : coords_{Rat(v)} {}    // NOLINT(google-explicit-constructor)
    FieldElem(std::shared_ptr<const FieldData> field, std::vector<Rat> coords);

    const std::shared_ptr<const FieldData>& field() const { return field_; }
    /// Length d when attached to a field, else length 1.
    const std::vector<Rat>& coords() const { return coords_; }
    Rat coord(int k) const;

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    /// Requires is_rational().
    Rat rational_value() const;

    FieldElem operator-() const;
    FieldElem& operator+=(const FieldElem& o);
    FieldElem& operator-=(const FieldElem& o);
    FieldElem& operator*=(const FieldElem& o);
    FieldElem& operator/=(const FieldElem& o) { return *this *= o.inverse(); }
    friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
    friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
    friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
    friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }
    friend bool operator==(const FieldElem& a, const FieldElem& b);

    FieldElem inverse() const;
    FieldElem pow(long e) const;

    /// Polynomial in t, e.g. "t^2 - 2".
    std::string to_string() const;

private:
    void attach(const std::shared_ptr<const FieldData>& f);
    static const std::shared_ptr<const FieldData>& common(const FieldElem& a, const FieldElem& b);

    std::shared_ptr<const FieldData> field_;
    std::vector<Rat> coords_;
};

std::ostream& operator<<(std::ostream& os, const FieldElem& a);

/// Cyclic number field with a distinguished generator sigma of its Galois group.
class CyclicField {
public:
    CyclicField() = default;
    explicit CyclicField(std::shared_ptr<const FieldData> data) : data_(std::move(data)) {}

    const std::shared_ptr<const FieldData>& data() const { return data_; }
    const UPoly& poly() const { return data_->poly; }
    int degree() const { return data_->degree; }
    const std::optional<MobiusCoeffs>& mobius() const { return data_->mobius; }

    FieldElem elem(std::vector<Rat> coords) const { return FieldElem(data_, std::move(coords)); }
    FieldElem scalar(const Rat& r) const;
    FieldElem t() const;
    FieldElem sigma_of_t() const;
    /// t, sigma(t), ..., sigma^{d-1}(t).
    std::vector<FieldElem> roots() const;

private:
    std::shared_ptr<const FieldData> data_;
};

/// Builds Q[t]/(P) for monic integral irreducible P whose roots all lie in
/// Q[t]/(P) and whose Galois group is cyclic.
CyclicField make_cyclic_field(const UPoly& poly, Generator gen = Generator::Default);

/// sigma^k(a), k taken mod d.
FieldElem galois_apply(const FieldElem& a, long k);
Rat norm(const FieldElem& a);
Rat trace(const FieldElem& a);

bool roots_form_basis(const CyclicField& f);

struct NormCertificate {
    enum class Kind { InertPrimeNontrivial, PreimageFound };
    unsigned long prime = 0;
    long valuation = 0;
    Kind kind = Kind::InertPrimeNontrivial;
    std::optional<FieldElem> preimage;
};

/// One-sided: a certificate proves alpha is not a norm; nothing is inconclusive.
std::optional<NormCertificate> certify_non_norm(const CyclicField& f, const Rat& alpha,
                                                unsigned long prime_bound);

/// Exhaustive search over integer coordinates in [-H, H] and denominators 1..H.
std::optional<FieldElem> find_norm_preimage(const CyclicField& f, const Rat& alpha, unsigned height_bound);

/// Matrix entries mapped through sigma^k.
Mat<FieldElem> galois_apply(const Mat<FieldElem>& m, long k);

}  // namespace bsforge
