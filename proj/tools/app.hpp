#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "bsforge/matrix.hpp"
#include "golden.hpp"

namespace bsforge::app {

/// Exit codes of the command-line tool.
enum ExitCode { kOk = 0, kInvalidInput = 1, kComputation = 2, kValidation = 3 };

struct SelftestItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// The golden pipeline compared item by item against g. The seed only moves the sample points.
std::vector<SelftestItem> selftest(const GoldenData& g, std::uint64_t seed, std::size_t samples);

/// "[[0,1,0],[0,0,1],[2,0,0]]"; entries are integers or fractions.
Mat<Rat> parse_matrix_literal(std::string_view src);

/// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bsforge::app
