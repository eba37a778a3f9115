#include "bsforge/numfield.hpp"

#include <algorithm>
#include <numeric>

#include "bsforge/error.hpp"
#include "bsforge/kernels.hpp"

namespace bsforge {

// ---------------------------------------------------------------- FieldElem

FieldElem::FieldElem(std::shared_ptr<const FieldData> field, std::vector<Rat> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
    if (!field_) {
        if (coords_.size() != 1) fail_input("DimensionMismatch", "scalar element needs exactly one coordinate");
        return;
    }
    if (coords_.size() != static_cast<std::size_t>(field_->degree))
        fail_input("DimensionMismatch", "field element needs d coordinates");
}

Rat FieldElem::coord(int k) const {
    if (k < 0 || static_cast<std::size_t>(k) >= coords_.size()) return Rat(0);
    return coords_[static_cast<std::size_t>(k)];
}

bool FieldElem::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rat& c) { return c.is_zero(); });
}

bool FieldElem::is_rational() const {
    return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rat& c) { return c.is_zero(); });
}

bool FieldElem::is_one() const { return is_rational() && coords_[0].is_one(); }

Rat FieldElem::rational_value() const {
    if (!is_rational()) fail_compute("NonRationalCoefficient", "element " + to_string() + " is not rational");
    return coords_[0];
}

void FieldElem::attach(const std::shared_ptr<const FieldData>& f) {
    if (field_ || !f) return;
    Rat r = coords_[0];
    coords_.assign(static_cast<std::size_t>(f->degree), Rat(0));
    coords_[0] = r;
    field_ = f;
}

const std::shared_ptr<const FieldData>& FieldElem::common(const FieldElem& a, const FieldElem& b) {
    if (a.field_ && b.field_ && a.field_ != b.field_) {
        bool same = a.field_->poly == b.field_->poly && a.field_->sigma_pow.size() > 1 &&
                    b.field_->sigma_pow.size() > 1 && a.field_->sigma_pow[1] == b.field_->sigma_pow[1];
        if (!same) fail_input("MixedFields", "operands belong to different fields");
    }
    return a.field_ ? a.field_ : b.field_;
}

FieldElem FieldElem::operator-() const {
    FieldElem out = *this;
    for (Rat& c : out.coords_) c = -c;
    return out;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
    auto f = common(*this, o);
    attach(f);
    if (!o.field_ || !f) {
        coords_[0] += o.coords_[0];
        return *this;
    }
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) { return *this += -o; }

FieldElem& FieldElem::operator*=(const FieldElem& o) {
    auto f = common(*this, o);
    if (!o.field_) {
        for (Rat& c : coords_) c *= o.coords_[0];
        return *this;
    }
    if (!field_) {
        Rat s = coords_[0];
        coords_ = o.coords_;
        field_ = f;
        for (Rat& c : coords_) c *= s;
        return *this;
    }
    std::size_t d = coords_.size();
    std::vector<Rat> prod(2 * d - 1);
    for (std::size_t i = 0; i < d; ++i) {
        if (coords_[i].is_zero()) continue;
        for (std::size_t j = 0; j < d; ++j)
            if (!o.coords_[j].is_zero()) prod[i + j] += coords_[i] * o.coords_[j];
    }
    std::vector<Rat> out(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(d));
    for (std::size_t k = d; k < prod.size(); ++k) {
        if (prod[k].is_zero()) continue;
        const auto& red = f->reduction[k];
        for (std::size_t i = 0; i < d; ++i)
            if (!red[i].is_zero()) out[i] += prod[k] * red[i];
    }
    coords_ = std::move(out);
    field_ = f;
    return *this;
}

bool operator==(const FieldElem& a, const FieldElem& b) {
    std::size_t n = std::max(a.coords_.size(), b.coords_.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a.coord(static_cast<int>(i)) != b.coord(static_cast<int>(i))) return false;
    return true;
}

FieldElem FieldElem::inverse() const {
    if (is_zero()) fail_compute("DivisionByZero", "inverse of zero field element");
    if (!field_) return FieldElem(coords_[0].inverse());
    if (is_rational()) return FieldElem(field_, [&] {
        std::vector<Rat> v(coords_.size());
        v[0] = coords_[0].inverse();
        return v;
    }());
    auto [g, s] = half_gcdex(UPoly(coords_), field_->poly);
    if (g.degree() != 0) fail_compute("DivisionByZero", "element is not invertible");
    std::vector<Rat> v(coords_.size());
    UPoly r = s.divmod(field_->poly).second;
    for (int k = 0; k <= r.degree(); ++k) v[static_cast<std::size_t>(k)] = r.coeff(k);
    return FieldElem(field_, std::move(v));
}

FieldElem FieldElem::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElem out(1), base = *this;
    while (e) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    if (field_) out.attach(field_);
    return out;
}

std::string FieldElem::to_string() const { return UPoly(coords_).to_string(); }

std::ostream& operator<<(std::ostream& os, const FieldElem& a) { return os << a.to_string(); }

// ---------------------------------------------------------------- CyclicField

FieldElem CyclicField::scalar(const Rat& r) const {
    std::vector<Rat> v(static_cast<std::size_t>(degree()));
    v[0] = r;
    return elem(std::move(v));
}

FieldElem CyclicField::t() const {
    std::vector<Rat> v(static_cast<std::size_t>(degree()));
    if (degree() == 1) fail_input("BadDegree", "degree one has no generator t");
    v[1] = Rat(1);
    return elem(std::move(v));
}

FieldElem CyclicField::sigma_of_t() const { return galois_apply(t(), 1); }

std::vector<FieldElem> CyclicField::roots() const {
    std::vector<FieldElem> out;
    for (int k = 0; k < degree(); ++k) out.push_back(galois_apply(t(), k));
    return out;
}

FieldElem galois_apply(const FieldElem& a, long k) {
    const auto& f = a.field();
    if (!f) return a;
    long d = f->degree;
    long kk = ((k % d) + d) % d;
    if (kk == 0) return a;
    return FieldElem(f, f->sigma_pow[static_cast<std::size_t>(kk)] * a.coords());
}

Mat<FieldElem> galois_apply(const Mat<FieldElem>& m, long k) {
    return m.map([k](const FieldElem& x) { return galois_apply(x, k); });
}

Rat norm(const FieldElem& a) {
    if (!a.field()) return a.coords()[0];
    FieldElem acc = a;
    for (int k = 1; k < a.field()->degree; ++k) acc *= galois_apply(a, k);
    return acc.rational_value();
}

Rat trace(const FieldElem& a) {
    if (!a.field()) return a.coords()[0];
    FieldElem acc = a;
    for (int k = 1; k < a.field()->degree; ++k) acc += galois_apply(a, k);
    return acc.rational_value();
}

bool roots_form_basis(const CyclicField& f) {
    auto roots = f.roots();
    std::size_t d = roots.size();
    Mat<Rat> m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = roots[i].coords()[j];
    return !determinant(m).is_zero();
}

// ---------------------------------------------------------------- construction

namespace {

std::vector<std::vector<Rat>> reduction_table(const UPoly& p) {
    int d = p.degree();
    std::vector<std::vector<Rat>> table;
    for (int k = 0; k <= 2 * d - 2; ++k) {
        UPoly r = UPoly::monomial(Rat(1), k).divmod(p).second;
        std::vector<Rat> v(static_cast<std::size_t>(d));
        for (int i = 0; i <= r.degree(); ++i) v[static_cast<std::size_t>(i)] = r.coeff(i);
        table.push_back(std::move(v));
    }
    return table;
}

// Scratch field with the multiplication table only (no Galois data yet).
std::shared_ptr<FieldData> bare_field(const UPoly& p) {
    auto f = std::make_shared<FieldData>();
    f->poly = p;
    f->degree = p.degree();
    f->reduction = reduction_table(p);
    return f;
}

FieldElem poly_in_field(const std::shared_ptr<const FieldData>& f, const UPoly& g) {
    std::vector<Rat> v(static_cast<std::size_t>(f->degree));
    UPoly r = g.divmod(f->poly).second;
    for (int i = 0; i <= r.degree(); ++i) v[static_cast<std::size_t>(i)] = r.coeff(i);
    return FieldElem(f, std::move(v));
}

FieldElem eval_in_field(const UPoly& p, const FieldElem& x) {
    FieldElem acc(0);
    for (int k = p.degree(); k >= 0; --k) acc = acc * x + FieldElem(p.coeff(k));
    return acc;
}

std::optional<Rat> rational_sqrt(const Rat& r) {
    if (r.sign() < 0) return std::nullopt;
    mpz_class n = r.num(), d = r.den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    return Rat(sqrt(n), sqrt(d));
}

// ---- p-adic recovery of a Galois generator for d >= 4

mpz_class mod_eval(const std::vector<mpz_class>& c, const mpz_class& x, const mpz_class& m) {
    mpz_class acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc * x + *it) % m;
    if (acc < 0) acc += m;
    return acc;
}

mpz_class mod_inv(const mpz_class& a, const mpz_class& m) {
    mpz_class out;
    if (!mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        fail_compute("NotGalois", "p-adic lifting lost invertibility");
    return out;
}

std::optional<Rat> rational_reconstruct(mpz_class a, const mpz_class& m) {
    mpz_class bound = sqrt(m / 2);
    mpz_class r0 = m, r1 = a % m, t0 = 0, t1 = 1;
    if (r1 < 0) r1 += m;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1, t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0 || abs(t1) > bound) return std::nullopt;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
    if (g != 1) return std::nullopt;
    if (t1 < 0) {
        t1 = -t1;
        r1 = -r1;
    }
    return Rat(r1, t1);
}

// Solves the Vandermonde system sum_k c_k x_i^k = y_i modulo m.
std::vector<mpz_class> mod_interpolate(const std::vector<mpz_class>& xs, const std::vector<mpz_class>& ys,
                                       const mpz_class& m) {
    std::size_t n = xs.size();
    std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class pw = 1;
        for (std::size_t k = 0; k < n; ++k) {
            a[i][k] = pw;
            pw = pw * xs[i] % m;
        }
        a[i][n] = ys[i];
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        mpz_class g;
        for (; piv < n; ++piv) {
            mpz_gcd(g.get_mpz_t(), a[piv][col].get_mpz_t(), m.get_mpz_t());
            if (g == 1) break;
        }
        if (piv == n) fail_compute("NotGalois", "degenerate p-adic interpolation");
        std::swap(a[piv], a[col]);
        mpz_class inv = mod_inv(a[col][col], m);
        for (auto& v : a[col]) v = v * inv % m;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            mpz_class f = a[r][col];
            for (std::size_t j = col; j <= n; ++j) a[r][j] = (a[r][j] - f * a[col][j]) % m;
        }
    }
    std::vector<mpz_class> c(n);
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = a[i][n] % m;
        if (c[i] < 0) c[i] += m;
    }
    return c;
}

std::optional<FieldElem> padic_generator(const std::shared_ptr<const FieldData>& f, const Rat& disc) {
    const UPoly& p = f->poly;
    int d = p.degree();
    std::vector<mpz_class> ints;
    for (const Rat& c : p.coeffs()) ints.push_back(c.num());
    std::vector<mpz_class> dints;
    UPoly dp = p.derivative();
    for (const Rat& c : dp.coeffs()) dints.push_back(c.num());
    // A prime that splits completely and is unramified.
    unsigned long prime = 0;
    std::vector<mpz_class> roots;
    for (unsigned long q : primes_up_to(200000)) {
        if (q <= static_cast<unsigned long>(d) || mpz_divisible_ui_p(disc.num().get_mpz_t(), q)) continue;
        mpz_class mq(static_cast<unsigned long>(q));
        std::vector<mpz_class> found;
        for (unsigned long x = 0; x < q && found.size() <= static_cast<std::size_t>(d); ++x)
            if (mod_eval(ints, mpz_class(x), mq) == 0) found.emplace_back(x);
        if (found.size() == static_cast<std::size_t>(d)) {
            prime = q;
            roots = std::move(found);
            break;
        }
    }
    if (prime == 0) return std::nullopt;
    std::vector<int> perm(static_cast<std::size_t>(d));
    mpz_class modulus = prime;
    for (int precision_bits = 64; precision_bits <= 8192; precision_bits *= 2) {
        mpz_class target;
        mpz_ui_pow_ui(target.get_mpz_t(), 2, static_cast<unsigned long>(precision_bits));
        while (modulus < target) {
            modulus *= modulus;
            for (auto& r : roots) {
                mpz_class val = mod_eval(ints, r, modulus), der = mod_eval(dints, r, modulus);
                r = (r - val * mod_inv(der, modulus)) % modulus;
                if (r < 0) r += modulus;
            }
        }
        // Every d-cycle sending root 0 around the full orbit.
        std::vector<int> rest(static_cast<std::size_t>(d - 1));
        std::iota(rest.begin(), rest.end(), 1);
        do {
            std::vector<int> image(static_cast<std::size_t>(d));
            int prev = 0;
            for (int nxt : rest) {
                image[static_cast<std::size_t>(prev)] = nxt;
                prev = nxt;
            }
            image[static_cast<std::size_t>(prev)] = 0;
            std::vector<mpz_class> ys;
            for (int i = 0; i < d; ++i) ys.push_back(roots[static_cast<std::size_t>(image[static_cast<std::size_t>(i)])]);
            auto c = mod_interpolate(roots, ys, modulus);
            std::vector<Rat> coords;
            bool ok = true;
            for (const auto& ci : c) {
                auto r = rational_reconstruct(ci, modulus);
                if (!r) {
                    ok = false;
                    break;
                }
                coords.push_back(*r);
            }
            if (!ok) continue;
            FieldElem g(f, coords);
            if (eval_in_field(p, g).is_zero()) return g;
        } while (std::next_permutation(rest.begin(), rest.end()));
    }
    return std::nullopt;
}

std::vector<Mat<Rat>> sigma_powers(const std::shared_ptr<const FieldData>& f, const FieldElem& g) {
    std::size_t d = static_cast<std::size_t>(f->degree);
    Mat<Rat> s(d, d);
    FieldElem pw(f, [&] {
        std::vector<Rat> v(d);
        v[0] = Rat(1);
        return v;
    }());
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i) s(i, j) = pw.coords()[i];
        pw *= g;
    }
    std::vector<Mat<Rat>> out{Mat<Rat>::identity(d)};
    for (std::size_t k = 1; k < d; ++k) out.push_back(out.back() * s);
    return out;
}

FieldElem apply_with(const std::vector<Mat<Rat>>& sp, const FieldElem& a, std::size_t k) {
    return FieldElem(a.field(), sp[k % sp.size()] * a.coords());
}

std::optional<MobiusCoeffs> solve_mobius(const std::shared_ptr<const FieldData>& f, const FieldElem& g) {
    std::size_t d = static_cast<std::size_t>(f->degree);
    std::vector<Rat> tv(d), one(d);
    one[0] = Rat(1);
    if (d > 1) tv[1] = Rat(1);
    FieldElem t(f, tv);
    FieldElem tg = t * g;
    // Columns: p, q, r, s in r*t*g + s*g - p*t - q = 0.
    auto build = [&](bool pin_r) {
        Mat<Rat> m(d + (pin_r ? 1 : 0), 4);
        for (std::size_t i = 0; i < d; ++i) {
            m(i, 0) = -tv[i];
            m(i, 1) = -one[i];
            m(i, 2) = tg.coords()[i];
            m(i, 3) = g.coords()[i];
        }
        if (pin_r) m(d, 2) = Rat(1);
        return nullspace(m);
    };
    auto ker = build(false);
    if (ker.empty()) return std::nullopt;
    if (ker.size() > 1) ker = build(true);
    if (ker.size() != 1) return std::nullopt;
    auto v = ker.front();
    if ((v[0] * v[3] - v[1] * v[2]).is_zero()) return std::nullopt;
    if (d == 3 && !(v[0] + v[3]).is_zero()) {
        Rat scale = Rat(-1) / (v[0] + v[3]);
        for (auto& x : v) x *= scale;
        mpz_class den = 1;
        for (const auto& x : v) den = lcm_den(den, x);
        for (auto& x : v) x *= Rat(den);
    } else {
        mpz_class den = 1, num = 0;
        for (const auto& x : v) den = lcm_den(den, x);
        for (auto& x : v) x *= Rat(den);
        for (const auto& x : v) {
            mpz_class n = x.num();
            mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), n.get_mpz_t());
        }
        for (auto& x : v) x /= Rat(num);
        bool flip = v[3].sign() < 0 || (v[3].is_zero() && v[2].sign() < 0);
        if (flip)
            for (auto& x : v) x = -x;
    }
    return MobiusCoeffs{v[0], v[1], v[2], v[3]};
}

bool certify_irreducible(const UPoly& p, const Rat& disc) {
    if (p.degree() <= 3) return rational_roots(p).empty();
    for (unsigned long q : primes_up_to(5000)) {
        if (mpz_divisible_ui_p(disc.num().get_mpz_t(), q)) continue;
        if (irreducible_mod_p(p, q)) return true;
    }
    return false;
}

}  // namespace

CyclicField make_cyclic_field(const UPoly& poly, Generator gen) {
    int d = poly.degree();
    if (d < 2) fail_input("BadDegree", "field polynomial must have degree at least 2");
    if (!poly.is_monic()) fail_input("NotMonic", "field polynomial must be monic");
    if (!poly.has_integer_coeffs()) fail_input("NotIntegral", "field polynomial must have integer coefficients");
    Rat disc = discriminant(poly);
    if (disc.is_zero()) fail_compute("NotIrreducible", poly.to_string() + " has a repeated factor");
    if (!certify_irreducible(poly, disc))
        fail_compute("NotIrreducible", poly.to_string() + " is reducible (or has no inert prime below 5000)");

    auto scratch = bare_field(poly);
    std::shared_ptr<const FieldData> cf = scratch;
    std::vector<Rat> tv(static_cast<std::size_t>(d));
    tv[1] = Rat(1);
    FieldElem t(cf, tv);
    const Rat& a = poly.coeff(d - 1);

    // Some root g != t of P in Q[t]/(P) that generates the Galois group.
    std::optional<FieldElem> g;
    if (d == 2) {
        g = FieldElem(-a) - t;
    } else if (d == 3) {
        auto root_disc = rational_sqrt(disc);
        if (!root_disc) fail_compute("NotGalois", "discriminant " + disc.to_string() + " is not a square");
        FieldElem inv_dp = poly_in_field(cf, poly.derivative()).inverse();
        FieldElem delta = FieldElem(*root_disc) * inv_dp;
        g = (-(t + FieldElem(a)) + delta) * FieldElem(Rat(1, 2));
    } else {
        g = padic_generator(cf, disc);
        if (!g) fail_compute("NotGalois", "no cyclic Galois generator found in Q[t]/(P)");
    }
    if (!eval_in_field(poly, *g).is_zero() || *g == t)
        fail_compute("NotGalois", "P has no second root in Q[t]/(P)");

    auto sp = sigma_powers(cf, *g);
    // The orbit of t under g must have size d with distinct roots.
    std::vector<FieldElem> orbit;
    for (int k = 0; k < d; ++k) orbit.push_back(apply_with(sp, t, static_cast<std::size_t>(k)));
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (orbit[static_cast<std::size_t>(i)] == orbit[static_cast<std::size_t>(j)])
                fail_compute("NotGalois", "Galois group is not cyclic of order d");
    if (!(apply_with(sp, orbit.back(), 1) == t)) fail_compute("NotGalois", "generator does not have order d");

    // Lexicographically smallest generating root.
    FieldElem best = orbit[1];
    for (int k = 2; k < d; ++k)
        if (std::gcd(k, d) == 1 && orbit[static_cast<std::size_t>(k)].coords() < best.coords())
            best = orbit[static_cast<std::size_t>(k)];
    if (gen == Generator::Other) {
        // sigma^{-1}(t): the root r with sigma(r) = t.
        auto bsp = sigma_powers(cf, best);
        best = apply_with(bsp, t, static_cast<std::size_t>(d - 1));
    }

    auto data = bare_field(poly);
    data->sigma_pow = sigma_powers(cf, best);
    data->mobius = solve_mobius(cf, best);
    if (d == 3 && !data->mobius) fail_compute("NotGalois", "no Mobius form for sigma on a cubic");
    return CyclicField(std::move(data));
}

// ---------------------------------------------------------------- norms

std::optional<NormCertificate> certify_non_norm(const CyclicField& f, const Rat& alpha, unsigned long prime_bound) {
    if (alpha.is_zero()) fail_input("ZeroAlpha", "alpha must be nonzero");
    Rat disc = discriminant(f.poly());
    long d = f.degree();
    for (unsigned long p : primes_up_to(prime_bound)) {
        if (mpz_divisible_ui_p(disc.num().get_mpz_t(), p)) continue;
        if (mpz_divisible_ui_p(alpha.den().get_mpz_t(), p)) continue;
        long v = valuation(alpha, p);
        if (v % d == 0) continue;
        if (!irreducible_mod_p(f.poly(), p)) continue;
        NormCertificate c;
        c.prime = p;
        c.valuation = v;
        c.kind = NormCertificate::Kind::InertPrimeNontrivial;
        return c;
    }
    return std::nullopt;
}

namespace {

// Integer coordinate vectors with max |c_i| == h, ordered for a stable search.
std::vector<kernels::IntPoint> shell(int d, long h) {
    std::vector<kernels::IntPoint> pts;
    kernels::IntPoint x(static_cast<std::size_t>(d), -h);
    for (;;) {
        long mx = 0;
        for (long v : x) mx = std::max(mx, std::labs(v));
        if (mx == h) pts.push_back(x);
        int i = d - 1;
        while (i >= 0 && x[static_cast<std::size_t>(i)] == h) x[static_cast<std::size_t>(i--)] = -h;
        if (i < 0) break;
        ++x[static_cast<std::size_t>(i)];
    }
    auto key = [](const kernels::IntPoint& p) {
        int neg = 0, deg = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] < 0) ++neg;
            if (p[i] != 0) deg = static_cast<int>(i);
        }
        return std::pair{neg, deg};
    };
    std::stable_sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
        auto ka = key(a), kb = key(b);
        if (ka != kb) return ka < kb;
        return a < b;
    });
    return pts;
}

}  // namespace

std::optional<FieldElem> find_norm_preimage(const CyclicField& f, const Rat& alpha, unsigned height_bound) {
    if (alpha.is_zero()) fail_input("ZeroAlpha", "alpha must be nonzero");
    for (unsigned den = 1; den <= height_bound; ++den) {
        for (long h = 1; h <= static_cast<long>(height_bound); ++h) {
            auto pts = shell(f.degree(), h);
            std::vector<kernels::IntPoint> cands;
            for (auto& p : pts) {
                long g = den;
                for (long v : p) g = std::gcd(g, std::labs(v));
                if (g == 1) cands.push_back(std::move(p));
            }
            kernels::NormQuery q{&f, &cands, mpz_class(den), alpha.num(), alpha.den()};
            if (auto i = kernels::first_norm_match(q)) {
                std::vector<Rat> coords;
                for (long v : cands[*i]) coords.emplace_back(mpz_class(v), mpz_class(den));
                return f.elem(std::move(coords));
            }
        }
    }
    return std::nullopt;
}

}  // namespace bsforge
