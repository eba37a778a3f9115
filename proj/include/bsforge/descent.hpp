#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bsforge/kernels.hpp"
#include "bsforge/matrix.hpp"
#include "bsforge/mpoly.hpp"
#include "bsforge/numfield.hpp"
#include "bsforge/veronese.hpp"

namespace bsforge {

using LPoly = MPoly<FieldElem>;

struct CyclicAlgebraInput {
    CyclicField field;
    Rat alpha;

    int n() const { return field.degree() - 1; }
};

/// Validates alpha != 0.
CyclicAlgebraInput make_input(CyclicField field, const Rat& alpha);

/// entries[k] = xi_{sigma^k}.
struct Cocycle {
    std::vector<Mat<FieldElem>> entries;
};

enum class SplitMethod { ClosedN2, Average };

struct SplittingMatrix {
    Mat<FieldElem> phi;
    SplitMethod method = SplitMethod::Average;
    std::uint64_t seed = 0;
    int attempts = 0;
    /// Formal power of alpha carried by each row (used for content cleanup).
    std::vector<int> row_alpha_exp;
};

Mat<Rat> companion_matrix(int d, const Rat& alpha);

/// xi_sigma = iota(companion), xi_{sigma^k} from the cocycle relation; validated.
Cocycle lift_cocycle(const CyclicAlgebraInput& input);

/// The closed-form 10x10 matrix for d = 3 built from t, sigma(t), sigma^2(t), without checks.
SplittingMatrix closed_phi_n2(const CyclicAlgebraInput& input);

/// closed_phi_n2 plus det != 0 (SingularPhi) and the splitting identity (ValidationFailed).
SplittingMatrix hilbert90_closed_n2(const CyclicAlgebraInput& input);

/// phi = sum_k xi_{sigma^k} sigma^k(B) for seeded random B; retries while singular.
SplittingMatrix hilbert90_average(const Cocycle& cocycle, const CyclicField& field, std::uint64_t seed);

struct CheckReport {
    bool ok = true;
    std::optional<std::size_t> failing_index;
    std::string detail;
};

CheckReport check_cocycle(const Cocycle& c);

struct SplitReport {
    bool invertible = false;
    /// xi_{sigma^k} sigma^k(phi) == phi for every k (inverse-free form).
    bool identity = false;
    std::optional<std::size_t> failing_k;

    bool ok() const { return invertible && identity; }
};

SplitReport check_splitting(const Cocycle& c, const SplittingMatrix& s);

/// Substitutes w_k <- (row k of phi) . w and divides each result by the least
/// formal power of alpha among its terms.
std::vector<LPoly> pull_back(const VeroneseIdeal& ideal, const SplittingMatrix& s, const Rat& alpha);

/// Same, without the alpha cleanup (one output per input equation).
std::vector<LPoly> pull_back_raw(const std::vector<RatPoly>& eqs, const Mat<FieldElem>& phi);

/// Power-basis slices (t^{d-1} first), normalized, zero slices dropped, exact duplicates removed.
std::vector<RatPoly> rational_descent(const std::vector<LPoly>& eqs, const CyclicField& field);

/// Slices of one polynomial, t^{d-1} first, unnormalized and including zeros.
std::vector<RatPoly> slices(const LPoly& eq, int degree);

/// Keeps a maximal Q-linearly independent prefix-greedy subset.
std::vector<RatPoly> reduce_rational(const std::vector<RatPoly>& eqs);

/// True iff a = c*b for some nonzero c in L.
bool proportional(const LPoly& a, const LPoly& b);

/// sigma^k applied to every coefficient.
LPoly galois_apply(const LPoly& f, long k);

/// Seeded points phi^{-1} V(x) with x in P^n(L), coordinates in [-20, 20].
std::vector<std::vector<FieldElem>> sample_points(const VeroneseSpace& space, const CyclicField& field,
                                                  const Mat<FieldElem>& phi, std::size_t count, std::uint64_t seed);

enum class Solver { Closed, Average };

struct ValidationReport {
    std::size_t points = 0;
    std::uint64_t seed = 0;
    bool all_vanish = false;
};

struct BSPresentation {
    int n = 0;
    int m = 0;
    CyclicAlgebraInput input;
    VeroneseIdeal ideal;
    std::vector<LPoly> equations_over_l;
    std::vector<RatPoly> rational_equations;
    SplittingMatrix split;
    /// Why the closed form was not used, when it was requested.
    std::optional<std::string> fallback_reason;
    ValidationReport validation;
};

struct SmoothOptions {
    Solver solver = Solver::Closed;
    std::uint64_t seed = 42;
    std::size_t samples = 100;
    bool reduce = false;
};

/// Cocycle, splitting, pullback, descent, then exact sampling validation.
BSPresentation bs_smooth_model(const CyclicAlgebraInput& input, const SmoothOptions& opt);

/// Text for a polynomial over L; coefficients in parentheses when irrational.
std::string to_string(const LPoly& f, std::string_view prefix = "w");

}  // namespace bsforge
