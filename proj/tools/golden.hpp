#pragma once

// Reference data for the golden run, parsed from a small sectioned text format:
// "[name]" headers, one record per line, "#" comments.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "bsforge/descent.hpp"
#include "bsforge/matrix.hpp"
#include "bsforge/mpoly.hpp"
#include "bsforge/numfield.hpp"

namespace bsforge::app {

/// One entry of the printed splitting matrix: root index (-1 for the constant 1) and alpha power.
struct PhiToken {
    int root = -1;
    int alpha_exp = 0;
    bool zero = true;
};

struct GoldenData {
    std::string field;
    Rat alpha;
    Rat disc;
    MobiusCoeffs mobius;
    Mat<Rat> iota;
    Mat<PhiToken> phi;
    /// Each "lhs = rhs" stored as lhs - rhs.
    std::vector<RatPoly> veronese1;
    std::vector<RatPoly> veronese2;
    /// families[i] = {t^2 part, t part, constant part}.
    std::vector<std::array<RatPoly, 3>> families;
};

/// The copy compiled into the binary.
std::string_view embedded_golden_text();

GoldenData parse_golden(std::string_view text);

/// Reads a file; InvalidInput "GoldenUnreadable" on failure.
std::string read_text_file(const std::string& path);

/// Expands the printed phi tokens over the field.
Mat<FieldElem> expand_phi(const Mat<PhiToken>& phi, const CyclicField& field, const Rat& alpha);

/// f_t2 * t^2 + f_t1 * t + f_t0 as a polynomial over L.
LPoly family_over_l(const std::array<RatPoly, 3>& family, const CyclicField& field);

}  // namespace bsforge::app
