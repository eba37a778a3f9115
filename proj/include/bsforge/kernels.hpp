#pragma once

// Hot loops with two interchangeable back ends: a plain serial reference and
// an OpenMP version. Both return identical results in identical order.

#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "bsforge/mpoly.hpp"
#include "bsforge/numfield.hpp"

namespace bsforge::kernels {

enum class Backend { Serial, OpenMP };

Backend default_backend();
void set_default_backend(Backend b);

using IntPoint = std::vector<long>;

/// First index i with b * N(cands[i] / den) == a, i.e. b*N(c) == a*den^d.
struct NormQuery {
    const CyclicField* field;
    const std::vector<IntPoint>* cands;
    mpz_class den;
    mpz_class a;
    mpz_class b;
};

/// One (equation, point) pair that failed to vanish.
struct Nonvanishing {
    std::size_t equation;
    std::size_t point;
};

/// Integer-coefficient form for the point search: terms (exponents, coefficient).
struct IntForm {
    std::size_t nvars = 0;
    std::vector<std::pair<Exps, mpz_class>> terms;
};

/// Scales a rational polynomial to an integer form with the same zero set.
IntForm to_int_form(const RatPoly& f);

namespace serial {
std::optional<std::size_t> first_norm_match(const NormQuery& q);
std::vector<MPoly<FieldElem>> pull_back(const std::vector<RatPoly>& eqs,
                                        const std::vector<MPoly<FieldElem>>& images);
std::optional<Nonvanishing> check_vanishing(const std::vector<MPoly<FieldElem>>& eqs,
                                            const std::vector<std::vector<FieldElem>>& points);
std::optional<Nonvanishing> check_vanishing(const std::vector<RatPoly>& eqs,
                                            const std::vector<std::vector<FieldElem>>& points);
std::vector<IntPoint> integer_zeros(const std::vector<IntForm>& system, long height, std::size_t max_results);
}  // namespace serial

namespace omp {
std::optional<std::size_t> first_norm_match(const NormQuery& q);
std::vector<MPoly<FieldElem>> pull_back(const std::vector<RatPoly>& eqs,
                                        const std::vector<MPoly<FieldElem>>& images);
std::optional<Nonvanishing> check_vanishing(const std::vector<MPoly<FieldElem>>& eqs,
                                            const std::vector<std::vector<FieldElem>>& points);
std::optional<Nonvanishing> check_vanishing(const std::vector<RatPoly>& eqs,
                                            const std::vector<std::vector<FieldElem>>& points);
std::vector<IntPoint> integer_zeros(const std::vector<IntForm>& system, long height, std::size_t max_results);
}  // namespace omp

std::optional<std::size_t> first_norm_match(const NormQuery& q, Backend b = default_backend());
std::vector<MPoly<FieldElem>> pull_back(const std::vector<RatPoly>& eqs,
                                        const std::vector<MPoly<FieldElem>>& images,
                                        Backend b = default_backend());
std::optional<Nonvanishing> check_vanishing(const std::vector<MPoly<FieldElem>>& eqs,
                                            const std::vector<std::vector<FieldElem>>& points,
                                            Backend b = default_backend());
std::optional<Nonvanishing> check_vanishing(const std::vector<RatPoly>& eqs,
                                            const std::vector<std::vector<FieldElem>>& points,
                                            Backend b = default_backend());
/// Primitive common integer zeros in [-height, height]^nvars, first nonzero
/// coordinate positive, ordered by max-norm then lexicographically; at most max_results.
std::vector<IntPoint> integer_zeros(const std::vector<IntForm>& system, long height, std::size_t max_results,
                                    Backend b = default_backend());

}  // namespace bsforge::kernels
