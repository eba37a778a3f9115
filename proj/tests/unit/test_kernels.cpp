#include <doctest.h>

#include "bsforge/descent.hpp"
#include "bsforge/kernels.hpp"
#include "bsforge/models.hpp"
#include "bsforge/rng.hpp"

using namespace bsforge;
namespace K = bsforge::kernels;

TEST_CASE("norm search backends agree") {
    CyclicField f = make_cyclic_field(parse_upoly("t^3-3t+1"));
    std::vector<K::IntPoint> cands;
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b)
            for (long c = -3; c <= 3; ++c) cands.push_back({a, b, c});
    for (long target : {1L, -1L, 8L, 2L, 19L, -27L}) {
        K::NormQuery q{&f, &cands, 1, target, 1};
        auto s = K::serial::first_norm_match(q);
        CHECK(s == K::omp::first_norm_match(q));
        if (s) {
            const auto& p = cands[*s];
            CHECK(norm(f.elem({Rat(p[0]), Rat(p[1]), Rat(p[2])})) == Rat(target));
        }
    }
}

TEST_CASE("pullback and vanishing backends agree") {
    CyclicField f = make_cyclic_field(parse_upoly("t^3-3t+1"));
    auto input = make_input(f, Rat(2));
    Cocycle c = lift_cocycle(input);
    SplittingMatrix s = hilbert90_average(c, f, 42);
    auto ideal = veronese_ideal(monomial_basis(2));
    std::vector<LPoly> images;
    for (std::size_t k = 0; k < 10; ++k) {
        LPoly row(10);
        for (std::size_t j = 0; j < 10; ++j)
            if (!s.phi(k, j).is_zero()) row += LPoly::var(10, j, s.phi(k, j));
        images.push_back(row);
    }
    auto a = K::serial::pull_back(ideal.equations, images);
    auto b = K::omp::pull_back(ideal.equations, images);
    CHECK(a == b);

    auto pts = sample_points(monomial_basis(2), f, s.phi, 12, 9);
    CHECK_FALSE(K::serial::check_vanishing(a, pts));
    CHECK_FALSE(K::omp::check_vanishing(a, pts));
    auto rat = rational_descent(a, f);
    CHECK_FALSE(K::serial::check_vanishing(rat, pts));
    CHECK_FALSE(K::omp::check_vanishing(rat, pts));

    // A perturbed system must fail at the same place on both backends.
    auto broken = a;
    broken[5] += LPoly::var(10, 2, f.t()).pow(3);
    auto x = K::serial::check_vanishing(broken, pts);
    auto y = K::omp::check_vanishing(broken, pts);
    REQUIRE(x);
    REQUIRE(y);
    CHECK(x->equation == y->equation);
    CHECK(x->point == y->point);
    CHECK(x->point == 0);
    CHECK(x->equation == 5);

    // Direct evaluation as an oracle for the integer-scaled evaluator.
    for (std::size_t p = 0; p < pts.size(); ++p)
        for (std::size_t e = 0; e < a.size(); ++e) CHECK(a[e].eval(pts[p]).is_zero());
}

TEST_CASE("integer zero search backends agree") {
    CyclicField q = make_cyclic_field(parse_upoly("t^2+1"));
    std::vector<FieldElem> basis{q.scalar(1), q.t()};
    for (long alpha : {2L, 5L, 25L}) {
        auto m = singular_model(q, Rat(alpha), ExponentMode::Unit, basis);
        std::vector<K::IntForm> sys{K::to_int_form(m.equation)};
        auto s = K::serial::integer_zeros(sys, 8, 50);
        auto o = K::omp::integer_zeros(sys, 8, 50);
        CHECK(s == o);
        CHECK_FALSE(s.empty());
        for (const auto& p : s) {
            std::vector<Rat> r(p.begin(), p.end());
            CHECK(m.equation.eval(r).is_zero());
        }
        // Brute force oracle for the count.
        std::size_t count = 0;
        for (long x0 = 0; x0 <= 8; ++x0)
            for (long x1 = -8; x1 <= 8; ++x1)
                for (long x2 = -8; x2 <= 8; ++x2) {
                    if (x0 == 0 && (x1 < 0 || (x1 == 0 && x2 <= 0))) continue;
                    if (x1 * x1 + x2 * x2 != alpha * x0 * x0) continue;
                    if (std::gcd(std::gcd(x0, std::labs(x1)), std::labs(x2)) != 1) continue;
                    ++count;
                }
        CHECK(s.size() == count);
    }
    auto t = K::serial::integer_zeros({K::to_int_form(RatPoly::var(3, 0) * RatPoly::var(3, 1))}, 2, 3);
    auto u = K::omp::integer_zeros({K::to_int_form(RatPoly::var(3, 0) * RatPoly::var(3, 1))}, 2, 3);
    CHECK(t == u);
    CHECK(t.size() == 3);
}

TEST_CASE("default backend switch") {
    auto before = K::default_backend();
    K::set_default_backend(K::Backend::Serial);
    CHECK(K::default_backend() == K::Backend::Serial);
    K::set_default_backend(before);
}
