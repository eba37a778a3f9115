#pragma once

#include <cstddef>
#include <vector>

#include "bsforge/matrix.hpp"
#include "bsforge/mpoly.hpp"

namespace bsforge {

/// Degree-(n+1) monomials in x_0..x_n, descending lex; m + 1 of them.
struct VeroneseSpace {
    int n = 0;
    int m = 0;
    std::vector<Exps> monomials;

    std::size_t index_of(const Exps& e) const;
};

VeroneseSpace monomial_basis(int n);

/// Evaluates every basis monomial at x. Throws ZeroVector for x = 0.
template <class C>
std::vector<C> veronese_point(const VeroneseSpace& space, const std::vector<C>& x);

/// The linear map on degree-(n+1) forms induced by A, divided by det A.
template <class C>
Mat<C> iota(const VeroneseSpace& space, const Mat<C>& a);

struct VeronesePivot {
    int pivot;           // index p of the chart x_p != 0
    std::size_t source;  // index of the monomial M
};

struct VeroneseIdeal {
    VeroneseSpace space;
    std::vector<RatPoly> equations;
    std::vector<VeronesePivot> pivots;
};

/// For pivots p = n, n-1, ..., 0 and each non-tautological M:
/// w_M * w_{x_p^{n+1}}^n - prod_i w_{x_i x_p^n}^{M_i}, normalized and deduplicated.
VeroneseIdeal veronese_ideal(const VeroneseSpace& space);

}  // namespace bsforge
