#include "bsforge/veronese.hpp"

#include <algorithm>
#include <set>

#include "bsforge/numfield.hpp"

namespace bsforge {

std::size_t VeroneseSpace::index_of(const Exps& e) const {
    auto it = std::lower_bound(monomials.begin(), monomials.end(), e, DescLex{});
    if (it == monomials.end() || *it != e) fail_input("DimensionMismatch", "not a basis monomial");
    return static_cast<std::size_t>(it - monomials.begin());
}

namespace {

void compositions(int parts, int total, Exps& cur, std::size_t at, std::vector<Exps>& out) {
    if (at + 1 == static_cast<std::size_t>(parts)) {
        cur[at] = total;
        out.push_back(cur);
        return;
    }
    for (int k = total; k >= 0; --k) {
        cur[at] = k;
        compositions(parts, total - k, cur, at + 1, out);
    }
}

}  // namespace

VeroneseSpace monomial_basis(int n) {
    if (n < 1) fail_input("BadDegree", "n must be at least 1");
    VeroneseSpace s;
    s.n = n;
    Exps cur(static_cast<std::size_t>(n + 1));
    compositions(n + 1, n + 1, cur, 0, s.monomials);
    s.m = static_cast<int>(s.monomials.size()) - 1;
    return s;
}

template <class C>
std::vector<C> veronese_point(const VeroneseSpace& space, const std::vector<C>& x) {
    if (x.size() != static_cast<std::size_t>(space.n + 1))
        fail_input("DimensionMismatch", "point has the wrong number of coordinates");
    if (std::all_of(x.begin(), x.end(), [](const C& c) { return c.is_zero(); }))
        fail_input("ZeroVector", "the zero vector is not a projective point");
    std::vector<C> out;
    out.reserve(space.monomials.size());
    for (const Exps& e : space.monomials) {
        C v(1);
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) v *= x[i];
        out.push_back(v);
    }
    return out;
}

template <class C>
Mat<C> iota(const VeroneseSpace& space, const Mat<C>& a) {
    std::size_t n1 = static_cast<std::size_t>(space.n + 1);
    if (a.rows() != n1 || a.cols() != n1) fail_input("DimensionMismatch", "iota needs an (n+1)x(n+1) matrix");
    C det = determinant(a);
    if (det.is_zero()) fail_compute("SingularMatrix", "iota needs an invertible matrix");
    C inv_det = det.inverse();
    std::vector<MPoly<C>> forms;
    for (std::size_t i = 0; i < n1; ++i) {
        MPoly<C> f(n1);
        for (std::size_t j = 0; j < n1; ++j) f += MPoly<C>::var(n1, j, a(i, j));
        forms.push_back(std::move(f));
    }
    std::size_t size = space.monomials.size();
    Mat<C> out(size, size);
    for (std::size_t k = 0; k < size; ++k) {
        MPoly<C> prod = MPoly<C>::constant(n1, C(1));
        const Exps& e = space.monomials[k];
        for (std::size_t i = 0; i < n1; ++i) prod = prod * forms[i].pow(static_cast<unsigned>(e[i]));
        for (const auto& [mono, c] : prod.terms()) out(k, space.index_of(mono)) = c * inv_det;
    }
    return out;
}

template std::vector<Rat> veronese_point(const VeroneseSpace&, const std::vector<Rat>&);
template std::vector<FieldElem> veronese_point(const VeroneseSpace&, const std::vector<FieldElem>&);
template Mat<Rat> iota(const VeroneseSpace&, const Mat<Rat>&);
template Mat<FieldElem> iota(const VeroneseSpace&, const Mat<FieldElem>&);

VeroneseIdeal veronese_ideal(const VeroneseSpace& space) {
    VeroneseIdeal ideal;
    ideal.space = space;
    const int n = space.n;
    const std::size_t nv = space.monomials.size();
    std::set<RatPoly::Terms> seen;
    for (int p = n; p >= 0; --p) {
        Exps top(static_cast<std::size_t>(n + 1), 0);
        top[static_cast<std::size_t>(p)] = n + 1;
        std::size_t top_idx = space.index_of(top);
        std::vector<std::size_t> chart(static_cast<std::size_t>(n + 1));
        for (int i = 0; i <= n; ++i) {
            Exps e(static_cast<std::size_t>(n + 1), 0);
            e[static_cast<std::size_t>(p)] = n;
            e[static_cast<std::size_t>(i)] += 1;
            chart[static_cast<std::size_t>(i)] = space.index_of(e);
        }
        for (std::size_t k = 0; k < nv; ++k) {
            const Exps& mono = space.monomials[k];
            Exps lhs(nv, 0), rhs(nv, 0);
            lhs[k] += 1;
            lhs[top_idx] += n;
            for (int i = 0; i <= n; ++i) rhs[chart[static_cast<std::size_t>(i)]] += mono[static_cast<std::size_t>(i)];
            if (lhs == rhs) continue;
            RatPoly eq(nv);
            eq.add_term(lhs, Rat(1));
            eq.add_term(rhs, Rat(-1));
            eq = mpoly_normalize(eq);
            if (!seen.insert(eq.terms()).second) continue;
            ideal.equations.push_back(std::move(eq));
            ideal.pivots.push_back({p, k});
        }
    }
    return ideal;
}

}  // namespace bsforge
