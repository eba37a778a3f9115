#include "bsforge/models.hpp"

#include "bsforge/rng.hpp"

namespace bsforge {

long model_exponent(int n, ExponentMode mode) {
    long raw = static_cast<long>(n) * (n + 3) / 2;
    switch (mode) {
        case ExponentMode::Raw: return raw;
        case ExponentMode::Reduced: return raw % (n + 1);
        case ExponentMode::Unit: return 1;
    }
    return raw;
}

namespace {

Mat<Rat> coordinate_matrix(const std::vector<FieldElem>& basis, int d) {
    auto n = static_cast<std::size_t>(d);
    Mat<Rat> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(j, i) = basis[i].coord(static_cast<int>(j));
    return m;
}

void check_basis(const std::vector<FieldElem>& basis, int d) {
    if (basis.size() != static_cast<std::size_t>(d)) fail_input("NotABasis", "basis needs exactly d elements");
    if (determinant(coordinate_matrix(basis, d)).is_zero()) fail_input("NotABasis", "elements are Q-linearly dependent");
}

Exps unit(std::size_t nv, std::initializer_list<std::pair<std::size_t, int>> powers) {
    Exps e(nv, 0);
    for (auto [i, k] : powers) e[i] += k;
    return e;
}

}  // namespace

RatPoly norm_form(const CyclicField& field, const std::vector<FieldElem>& basis) {
    int d = field.degree();
    check_basis(basis, d);
    auto nv = static_cast<std::size_t>(d + 1);
    MPoly<FieldElem> prod = MPoly<FieldElem>::constant(nv, field.scalar(Rat(1)));
    for (int k = 0; k < d; ++k) {
        MPoly<FieldElem> lin(nv);
        for (std::size_t i = 0; i < basis.size(); ++i)
            lin += MPoly<FieldElem>::var(nv, i + 1, galois_apply(basis[i], k));
        prod = prod * lin;
    }
    return prod.map_coeffs([](const FieldElem& c) { return c.rational_value(); });
}

SingularModel singular_model_with_exponent(const CyclicField& field, const Rat& alpha, long e,
                                           std::optional<std::vector<FieldElem>> basis) {
    if (alpha.is_zero()) fail_input("ZeroAlpha", "alpha must be nonzero");
    SingularModel m;
    m.n = field.degree() - 1;
    m.field = field;
    m.alpha = alpha;
    m.basis = basis ? *basis : field.roots();
    m.exponent = e;
    auto nv = static_cast<std::size_t>(field.degree() + 1);
    m.equation = norm_form(field, m.basis);
    m.equation.add_term(unit(nv, {{0, field.degree()}}), -alpha.pow(e));
    return m;
}

SingularModel singular_model(const CyclicField& field, const Rat& alpha, ExponentMode mode,
                             std::optional<std::vector<FieldElem>> basis) {
    SingularModel m =
        singular_model_with_exponent(field, alpha, model_exponent(field.degree() - 1, mode), std::move(basis));
    m.mode = mode;
    return m;
}

CubicClosedForm cubic_closed_form(const CyclicField& field, const Rat& alpha, ExponentMode mode) {
    if (field.degree() != 3) fail_input("BadDegree", "closed form needs a cyclic cubic");
    SingularModel model = singular_model(field, alpha, mode);
    auto l = field.roots();
    const Rat a = field.poly().coeff(2), b = field.poly().coeff(1), c = field.poly().coeff(0);
    CubicClosedForm out;
    out.coeffs.c_pure = -c;
    out.coeffs.d1 = (l[0] * l[0] * l[1] + l[1] * l[1] * l[2] + l[2] * l[2] * l[0]).rational_value();
    out.coeffs.d2 = (l[0] * l[1] * l[1] + l[1] * l[2] * l[2] + l[2] * l[0] * l[0]).rational_value();
    out.coeffs.c_mixed = model.equation.coeff(unit(4, {{1, 1}, {2, 1}, {3, 1}}));
    out.printed_mixed = Rat(3) * a * b - a.pow(3);
    out.mixed_deviates = out.coeffs.c_mixed != out.printed_mixed;

    RatPoly f(4);
    for (std::size_t i = 1; i <= 3; ++i) {
        std::size_t j = i % 3 + 1;
        f.add_term(unit(4, {{i, 3}}), out.coeffs.c_pure);
        f.add_term(unit(4, {{i, 2}, {j, 1}}), out.coeffs.d1);
        f.add_term(unit(4, {{i, 1}, {j, 2}}), out.coeffs.d2);
    }
    f.add_term(unit(4, {{1, 1}, {2, 1}, {3, 1}}), out.coeffs.c_mixed);
    f.add_term(unit(4, {{0, 3}}), -alpha.pow(model.exponent));
    out.equation = f;
    out.matches_norm_form = f == model.equation;
    return out;
}

std::vector<Rat> psi_map(int n, const std::vector<Rat>& x) {
    if (x.size() != static_cast<std::size_t>(n + 1)) fail_input("DimensionMismatch", "psi needs n+1 coordinates");
    Rat prod(1);
    for (int i = 1; i <= n; ++i) prod *= x[static_cast<std::size_t>(i)];
    if (prod.is_zero()) fail_input("IndeterminacyLocus", "psi is undefined where x_1 ... x_n = 0");
    std::vector<Rat> out;
    for (const Rat& v : x) out.push_back(v * prod);
    out.push_back(x[0].pow(n + 1));
    mpz_class den = 1, num = 0;
    for (const Rat& v : out) den = lcm_den(den, v);
    for (const Rat& v : out) {
        mpz_class k = (v * Rat(den)).num();
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), k.get_mpz_t());
    }
    Rat scale(den, num);
    for (Rat& v : out) v *= scale;
    return out;
}

std::vector<std::vector<FieldElem>> l_points_of_model(const SingularModel& model, std::size_t count,
                                                      std::uint64_t seed) {
    const CyclicField& f = model.field;
    int d = f.degree();
    auto n = static_cast<std::size_t>(d);
    Mat<FieldElem> lin(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) lin(k, i) = galois_apply(model.basis[i], static_cast<long>(k));
    FieldElem target = f.scalar(model.alpha.pow(model.exponent));
    Rng rng(seed);
    std::vector<std::vector<FieldElem>> out;
    while (out.size() < count) {
        Mat<FieldElem> u(n, 1);
        FieldElem prod = f.scalar(Rat(1));
        bool degenerate = false;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            u(k, 0) = rng.field_elem(f, 20);
            if (u(k, 0).is_zero()) degenerate = true;
            prod *= u(k, 0);
        }
        if (degenerate) continue;
        u(n - 1, 0) = target / prod;
        auto x = try_solve(lin, u);
        if (!x) fail_compute("SingularSystem", "conjugate linear forms are dependent");
        std::vector<FieldElem> pt{f.scalar(Rat(1))};
        for (std::size_t i = 0; i < n; ++i) pt.push_back((*x)(i, 0));
        if (!model.equation.eval<FieldElem>(pt).is_zero())
            fail_validation("ValidationFailed", "constructed L-point does not satisfy the model");
        out.push_back(std::move(pt));
    }
    return out;
}

std::vector<Rat> rational_point_by_construction(const SingularModel& model) {
    int d = model.field.degree();
    if (model.exponent % d != 0) fail_input("NotApplicable", "exponent is not divisible by the degree");
    auto n = static_cast<std::size_t>(d);
    Mat<Rat> rhs(n, 1);
    rhs(0, 0) = model.alpha.pow(model.exponent / d);
    auto x = try_solve(coordinate_matrix(model.basis, d), rhs);
    if (!x) fail_input("NotABasis", "basis is degenerate");
    std::vector<Rat> pt{Rat(1)};
    for (std::size_t i = 0; i < n; ++i) pt.push_back((*x)(i, 0));
    return pt;
}

std::vector<kernels::IntPoint> rational_points(const std::vector<RatPoly>& system, long height,
                                               std::size_t max_results) {
    std::vector<kernels::IntForm> forms;
    for (const auto& f : system) forms.push_back(kernels::to_int_form(f));
    return kernels::integer_zeros(forms, height, max_results);
}

}  // namespace bsforge
