#include "bsforge/descent.hpp"

#include <map>
#include <set>

#include "bsforge/rng.hpp"

namespace bsforge {

CyclicAlgebraInput make_input(CyclicField field, const Rat& alpha) {
    if (alpha.is_zero()) fail_input("ZeroAlpha", "alpha must be nonzero");
    return CyclicAlgebraInput{std::move(field), alpha};
}

Mat<Rat> companion_matrix(int d, const Rat& alpha) {
    if (d < 2) fail_input("BadDegree", "companion matrix needs d >= 2");
    if (alpha.is_zero()) fail_input("ZeroAlpha", "alpha must be nonzero");
    auto n = static_cast<std::size_t>(d);
    Mat<Rat> a(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) a(i, i + 1) = Rat(1);
    a(n - 1, 0) = alpha;
    return a;
}

namespace {

Mat<FieldElem> to_field(const Mat<Rat>& m) {
    return m.map([](const Rat& r) { return FieldElem(r); });
}

std::uint64_t sampling_seed(std::uint64_t seed) { return seed * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL; }

}  // namespace

Cocycle lift_cocycle(const CyclicAlgebraInput& input) {
    int d = input.field.degree();
    VeroneseSpace space = monomial_basis(d - 1);
    Mat<FieldElem> xi = to_field(iota(space, companion_matrix(d, input.alpha)));
    Cocycle c;
    c.entries.push_back(Mat<FieldElem>::identity(xi.rows()));
    for (int k = 1; k < d; ++k) c.entries.push_back(c.entries.back() * xi);
    auto report = check_cocycle(c);
    if (!report.ok) fail_compute("NotACocycle", report.detail);
    return c;
}

CheckReport check_cocycle(const Cocycle& c) {
    std::size_t d = c.entries.size();
    CheckReport r;
    if (d == 0 || !(c.entries[0] == Mat<FieldElem>::identity(c.entries[0].rows()))) {
        r.ok = false;
        r.failing_index = 0;
        r.detail = "xi_id is not the identity";
        return r;
    }
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
            auto lhs = c.entries[(j + k) % d];
            auto rhs = c.entries[j] * galois_apply(c.entries[k], static_cast<long>(j));
            if (!(lhs == rhs)) {
                r.ok = false;
                r.failing_index = j * d + k;
                r.detail = "cocycle relation fails at (j, k) = (" + std::to_string(j) + ", " + std::to_string(k) + ")";
                return r;
            }
        }
    return r;
}

SplittingMatrix closed_phi_n2(const CyclicAlgebraInput& input) {
    if (input.field.degree() != 3) fail_input("BadDegree", "the closed form exists only for cyclic cubics");
    auto roots = input.field.roots();
    const Rat& a = input.alpha;
    struct Entry {
        int col;
        int root;
    };
    // Each row lists (column, root index); row r carries alpha^{exp[r]}.
    static const std::vector<std::vector<Entry>> rows = {
        {{0, 0}, {6, 1}, {9, 2}}, {{1, 0}, {5, 1}, {7, 2}}, {{2, 0}, {3, 1}, {8, 2}}, {{2, 2}, {3, 0}, {8, 1}},
        {{4, -1}},                {{1, 1}, {5, 2}, {7, 0}}, {{0, 2}, {6, 0}, {9, 1}}, {{1, 2}, {5, 0}, {7, 1}},
        {{2, 1}, {3, 2}, {8, 0}}, {{0, 1}, {6, 2}, {9, 0}}};
    static const std::vector<int> exps = {0, 0, 0, 0, 0, 1, 1, 1, 1, 2};
    SplittingMatrix s;
    s.phi = Mat<FieldElem>(10, 10, input.field.scalar(Rat(0)));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        FieldElem scale = input.field.scalar(a.pow(exps[r]));
        for (const auto& e : rows[r]) {
            auto col = static_cast<std::size_t>(e.col);
            s.phi(r, col) = e.root < 0 ? input.field.scalar(Rat(1)) : roots[static_cast<std::size_t>(e.root)] * scale;
        }
    }
    s.method = SplitMethod::ClosedN2;
    s.row_alpha_exp = exps;
    return s;
}

SplitReport check_splitting(const Cocycle& c, const SplittingMatrix& s) {
    SplitReport r;
    r.invertible = !determinant(s.phi).is_zero();
    r.identity = true;
    for (std::size_t k = 1; k < c.entries.size(); ++k) {
        if (!(c.entries[k] * galois_apply(s.phi, static_cast<long>(k)) == s.phi)) {
            r.identity = false;
            r.failing_k = k;
            break;
        }
    }
    return r;
}

SplittingMatrix hilbert90_closed_n2(const CyclicAlgebraInput& input) {
    SplittingMatrix s = closed_phi_n2(input);
    Cocycle c = lift_cocycle(input);
    auto report = check_splitting(c, s);
    if (!report.invertible) fail_compute("SingularPhi", "the closed-form splitting matrix is singular for this field");
    if (!report.identity) fail_validation("ValidationFailed", "the closed-form matrix does not split the cocycle");
    return s;
}

SplittingMatrix hilbert90_average(const Cocycle& cocycle, const CyclicField& field, std::uint64_t seed) {
    Rng rng(seed);
    std::size_t size = cocycle.entries.front().rows();
    for (int attempt = 1; attempt <= 100; ++attempt) {
        Mat<FieldElem> b(size, size);
        for (std::size_t i = 0; i < size; ++i)
            for (std::size_t j = 0; j < size; ++j) b(i, j) = rng.field_elem(field, 9);
        Mat<FieldElem> phi(size, size, field.scalar(Rat(0)));
        for (std::size_t k = 0; k < cocycle.entries.size(); ++k)
            phi = phi + cocycle.entries[k] * galois_apply(b, static_cast<long>(k));
        if (determinant(phi).is_zero()) continue;
        SplittingMatrix s;
        s.phi = std::move(phi);
        s.method = SplitMethod::Average;
        s.seed = seed;
        s.attempts = attempt;
        s.row_alpha_exp.assign(size, 0);
        return s;
    }
    fail_compute("ExhaustedRetries", "no invertible averaged matrix after 100 draws");
}

std::vector<LPoly> pull_back_raw(const std::vector<RatPoly>& eqs, const Mat<FieldElem>& phi) {
    std::size_t nv = phi.cols();
    std::vector<LPoly> images;
    for (std::size_t k = 0; k < phi.rows(); ++k) {
        LPoly f(nv);
        for (std::size_t j = 0; j < nv; ++j)
            if (!phi(k, j).is_zero()) f.add_term([&] {
                Exps e(nv, 0);
                e[j] = 1;
                return e;
            }(), phi(k, j));
        images.push_back(std::move(f));
    }
    for (const auto& eq : eqs)
        if (eq.nvars() != phi.rows()) fail_input("DimensionMismatch", "equation and matrix sizes differ");
    return kernels::pull_back(eqs, images);
}

std::vector<LPoly> pull_back(const VeroneseIdeal& ideal, const SplittingMatrix& s, const Rat& alpha) {
    auto pulled = pull_back_raw(ideal.equations, s.phi);
    if (s.row_alpha_exp.empty()) return pulled;
    for (std::size_t i = 0; i < pulled.size(); ++i) {
        int least = -1;
        for (const auto& [e, c] : ideal.equations[i].terms()) {
            int w = 0;
            for (std::size_t k = 0; k < e.size(); ++k) w += e[k] * s.row_alpha_exp[k];
            least = least < 0 ? w : std::min(least, w);
        }
        if (least > 0) pulled[i] = FieldElem(alpha.pow(-least)) * pulled[i];
    }
    return pulled;
}

std::vector<RatPoly> slices(const LPoly& eq, int degree) {
    std::vector<RatPoly> out;
    for (int k = degree - 1; k >= 0; --k) {
        RatPoly s(eq.nvars());
        for (const auto& [e, c] : eq.terms()) s.add_term(e, c.coord(k));
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<RatPoly> rational_descent(const std::vector<LPoly>& eqs, const CyclicField& field) {
    std::vector<RatPoly> out;
    std::set<RatPoly::Terms> seen;
    for (const auto& eq : eqs)
        for (auto& s : slices(eq, field.degree())) {
            if (s.is_zero()) continue;
            s = mpoly_normalize(s);
            if (seen.insert(s.terms()).second) out.push_back(std::move(s));
        }
    return out;
}

std::vector<RatPoly> reduce_rational(const std::vector<RatPoly>& eqs) {
    std::map<Exps, std::size_t, DescLex> index;
    for (const auto& f : eqs)
        for (const auto& [e, c] : f.terms()) index.emplace(e, 0);
    std::size_t col = 0;
    for (auto& [e, i] : index) i = col++;
    // Echelon rows keyed by pivot column, each normalized to pivot 1.
    std::map<std::size_t, std::vector<Rat>> basis;
    std::vector<RatPoly> kept;
    for (const auto& f : eqs) {
        std::vector<Rat> v(col);
        for (const auto& [e, c] : f.terms()) v[index[e]] = c;
        for (const auto& [p, row] : basis) {
            if (v[p].is_zero()) continue;
            Rat factor = v[p];
            for (std::size_t j = 0; j < col; ++j)
                if (!row[j].is_zero()) v[j] -= factor * row[j];
        }
        std::size_t p = 0;
        while (p < col && v[p].is_zero()) ++p;
        if (p == col) continue;
        Rat inv = v[p].inverse();
        for (auto& x : v) x *= inv;
        for (auto& [q, row] : basis) {
            if (row[p].is_zero()) continue;
            Rat factor = row[p];
            for (std::size_t j = 0; j < col; ++j)
                if (!v[j].is_zero()) row[j] -= factor * v[j];
        }
        basis.emplace(p, std::move(v));
        kept.push_back(f);
    }
    return kept;
}

bool proportional(const LPoly& a, const LPoly& b) {
    if (a.nvars() != b.nvars() || a.size() != b.size()) return false;
    if (a.is_zero()) return true;
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    if (ia->first != ib->first) return false;
    FieldElem c = ia->second / ib->second;
    return a == c * b;
}

LPoly galois_apply(const LPoly& f, long k) {
    return f.map_coeffs([k](const FieldElem& c) { return galois_apply(c, k); });
}

std::vector<std::vector<FieldElem>> sample_points(const VeroneseSpace& space, const CyclicField& field,
                                                  const Mat<FieldElem>& phi, std::size_t count, std::uint64_t seed) {
    Mat<FieldElem> inv = inverse(phi);
    Rng rng(sampling_seed(seed));
    std::vector<std::vector<FieldElem>> out;
    while (out.size() < count) {
        std::vector<FieldElem> x;
        for (int i = 0; i <= space.n; ++i) x.push_back(rng.field_elem(field, 20));
        bool zero = std::all_of(x.begin(), x.end(), [](const FieldElem& c) { return c.is_zero(); });
        if (zero) continue;
        out.push_back(inv * veronese_point(space, x));
    }
    return out;
}

BSPresentation bs_smooth_model(const CyclicAlgebraInput& input, const SmoothOptions& opt) {
    BSPresentation out;
    out.input = input;
    out.n = input.n();
    VeroneseSpace space = monomial_basis(out.n);
    out.m = space.m;
    out.ideal = veronese_ideal(space);
    Cocycle cocycle = lift_cocycle(input);

    std::optional<SplittingMatrix> split;
    if (opt.solver == Solver::Closed) {
        if (input.field.degree() != 3) {
            out.fallback_reason = "ClosedFormUnavailable: the closed form covers cyclic cubics only";
        } else {
            try {
                split = hilbert90_closed_n2(input);
            } catch (const Error& e) {
                if (e.code() != "SingularPhi") throw;
                out.fallback_reason = e.code() + ": " + e.what();
            }
        }
    }
    if (!split) split = hilbert90_average(cocycle, input.field, opt.seed);
    out.split = *split;
    if (!check_splitting(cocycle, out.split).ok())
        fail_validation("ValidationFailed", "splitting matrix does not split the cocycle");

    out.equations_over_l = pull_back(out.ideal, out.split, input.alpha);
    out.rational_equations = rational_descent(out.equations_over_l, input.field);
    if (opt.reduce) out.rational_equations = reduce_rational(out.rational_equations);

    auto points = sample_points(space, input.field, out.split.phi, opt.samples, opt.seed);
    if (auto bad = kernels::check_vanishing(out.equations_over_l, points))
        fail_validation("ValidationFailed", "equation over L #" + std::to_string(bad->equation) +
                                                " does not vanish at sample #" + std::to_string(bad->point));
    if (auto bad = kernels::check_vanishing(out.rational_equations, points))
        fail_validation("ValidationFailed", "rational equation #" + std::to_string(bad->equation) +
                                                " does not vanish at sample #" + std::to_string(bad->point));
    out.validation = ValidationReport{points.size(), opt.seed, true};
    return out;
}

std::string to_string(const LPoly& f, std::string_view prefix) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : f.terms()) {
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += std::string(prefix) + std::to_string(i);
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        std::string coeff;
        bool negative = false;
        if (c.is_rational()) {
            Rat r = c.rational_value();
            negative = r.sign() < 0;
            if (!r.abs().is_one() || mono.empty()) coeff = r.abs().to_string();
        } else {
            coeff = "(" + c.to_string() + ")";
        }
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        out += coeff;
        if (!coeff.empty() && !mono.empty()) out += "*";
        out += mono;
    }
    return out;
}

}  // namespace bsforge
