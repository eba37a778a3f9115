#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bsforge/numfield.hpp"

namespace bsforge {

/// Seeded generator with a platform-independent integer draw
/// (std::uniform_int_distribution differs across standard libraries).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [lo, hi] by rejection sampling.
    long uniform(long lo, long hi) {
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return lo + static_cast<long>(x % span);
    }

    /// Field element with integer coordinates in [-h, h].
    FieldElem field_elem(const CyclicField& f, long h) {
        std::vector<Rat> c;
        for (int i = 0; i < f.degree(); ++i) c.emplace_back(uniform(-h, h));
        return f.elem(std::move(c));
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace bsforge
