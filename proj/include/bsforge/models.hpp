#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bsforge/kernels.hpp"
#include "bsforge/mpoly.hpp"
#include "bsforge/numfield.hpp"

namespace bsforge {

enum class ExponentMode { Raw, Reduced, Unit };

/// raw n(n+3)/2, reduced n(n+3)/2 mod (n+1), unit 1.
long model_exponent(int n, ExponentMode mode);

/// N(sum_i l_i x_i) in variables x_0..x_d (x_0 absent), expanded over L.
RatPoly norm_form(const CyclicField& field, const std::vector<FieldElem>& basis);

struct SingularModel {
    int n = 0;
    CyclicField field;
    Rat alpha;
    std::vector<FieldElem> basis;
    ExponentMode mode = ExponentMode::Reduced;
    long exponent = 0;
    /// norm_form - alpha^e x_0^{n+1}.
    RatPoly equation;
};

/// Uses the conjugate roots as basis unless one is supplied.
SingularModel singular_model(const CyclicField& field, const Rat& alpha, ExponentMode mode,
                             std::optional<std::vector<FieldElem>> basis = std::nullopt);

/// Same with an explicit exponent e.
SingularModel singular_model_with_exponent(const CyclicField& field, const Rat& alpha, long e,
                                           std::optional<std::vector<FieldElem>> basis = std::nullopt);

struct CubicNormCoeffs {
    Rat c_pure;
    Rat d1;
    Rat d2;
    Rat c_mixed;
};

struct CubicClosedForm {
    CubicNormCoeffs coeffs;
    RatPoly equation;
    /// The printed mixed coefficient 3AB - A^3 and whether the oracle differs from it.
    Rat printed_mixed;
    bool mixed_deviates = false;
    bool matches_norm_form = false;
};

CubicClosedForm cubic_closed_form(const CyclicField& field, const Rat& alpha, ExponentMode mode);

/// (x_0 : ... : x_n) -> (x_0 : ... : x_n : x_0^{n+1} / (x_1 ... x_n)), as a primitive integer vector.
std::vector<Rat> psi_map(int n, const std::vector<Rat>& x);

/// Points over L on the model: prescribed conjugate values with product alpha^e.
std::vector<std::vector<FieldElem>> l_points_of_model(const SingularModel& model, std::size_t count,
                                                      std::uint64_t seed);

/// For e divisible by d: x_0 = 1 and sum l_i x_i = alpha^{e/d}.
std::vector<Rat> rational_point_by_construction(const SingularModel& model);

/// Primitive integer points of height <= h on a system of rational equations.
std::vector<kernels::IntPoint> rational_points(const std::vector<RatPoly>& system, long height,
                                               std::size_t max_results);

}  // namespace bsforge
