#include <doctest.h>

#include "bsforge/error.hpp"
#include "bsforge/numfield.hpp"
#include "bsforge/rng.hpp"

using namespace bsforge;

namespace {

template <class F>
std::string code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "none";
}

UPoly as_upoly(const FieldElem& a) { return UPoly(a.coords()); }

// Evaluates P at a field element by Horner's rule.
FieldElem eval_at(const UPoly& p, const FieldElem& x, const CyclicField& f) {
    FieldElem acc = f.scalar(Rat(0));
    for (int k = p.degree(); k >= 0; --k) acc = acc * x + f.scalar(p.coeff(k));
    return acc;
}

const char* kFields[] = {"t^3-3t+1", "t^3+t^2-2t-1", "t^3+3t^2-1", "t^2+1", "t^4-4t^2+2", "t^5+t^4-4t^3-3t^2+3t+1"};

}  // namespace

TEST_CASE("golden field arithmetic") {
    CyclicField f = make_cyclic_field(parse_upoly("t^3-3t+1"));
    FieldElem t = f.t();
    CHECK(t.inverse() == f.elem({3, 0, -1}));
    CHECK(norm(t) == Rat(-1));
    CHECK(trace(t) == Rat(0));
    CHECK(galois_apply(t, 1) == f.elem({-2, 0, 1}));
    CHECK(galois_apply(t, 0) == t);
    REQUIRE(f.mobius());
    CHECK(*f.mobius() == MobiusCoeffs{-1, 1, -1, 0});
    CHECK_FALSE(roots_form_basis(f));
    CHECK(code_of([&] { f.scalar(Rat(0)).inverse(); }) == "DivisionByZero");
}

TEST_CASE("mixed fields are rejected") {
    CyclicField a = make_cyclic_field(parse_upoly("t^3-3t+1"));
    CyclicField b = make_cyclic_field(parse_upoly("t^3+t^2-2t-1"));
    CHECK(code_of([&] { (void)(a.t() + b.t()); }) == "MixedFields");
    CHECK(a.t() + FieldElem(Rat(1)) == a.elem({1, 1, 0}));
}

TEST_CASE("field construction for other degrees") {
    CyclicField q = make_cyclic_field(parse_upoly("t^2+1"));
    CHECK(q.sigma_of_t() == -q.t());
    REQUIRE(q.mobius());
    CHECK(*q.mobius() == MobiusCoeffs{-1, 0, 0, 1});
    CHECK_FALSE(roots_form_basis(q));

    CyclicField c = make_cyclic_field(parse_upoly("t^3+t^2-2t-1"));
    CHECK(c.sigma_of_t() == c.elem({-2, 0, 1}));
    REQUIRE(c.mobius());
    const auto& m = *c.mobius();
    CHECK(m == MobiusCoeffs{0, 1, -1, -1});
    CHECK(roots_form_basis(make_cyclic_field(parse_upoly("t^3+3t^2-1"))));

    CHECK(code_of([] { make_cyclic_field(parse_upoly("t^3-2")); }) == "NotGalois");
    CHECK(code_of([] { make_cyclic_field(parse_upoly("t^3-1")); }) == "NotIrreducible");
    CHECK(code_of([] { make_cyclic_field(parse_upoly("2t^2+1")); }) == "NotMonic");
    CHECK(code_of([] { make_cyclic_field(parse_upoly("t^2+1/2")); }) == "NotIntegral");
}

TEST_CASE("galois action is a field automorphism of order d") {
    for (const char* src : kFields) {
        CAPTURE(src);
        CyclicField f = make_cyclic_field(parse_upoly(src));
        int d = f.degree();
        for (int k = 0; k < d; ++k) CHECK(eval_at(f.poly(), galois_apply(f.t(), k), f).is_zero());
        Rng rng(10);
        for (int i = 0; i < 100; ++i) {
            FieldElem a = rng.field_elem(f, 9), b = rng.field_elem(f, 9);
            CHECK(galois_apply(a, d) == a);
            CHECK(galois_apply(a + b, 1) == galois_apply(a, 1) + galois_apply(b, 1));
            CHECK(galois_apply(a * b, 1) == galois_apply(a, 1) * galois_apply(b, 1));
        }
    }
}

TEST_CASE("norm agrees with the resultant and is multiplicative") {
    for (const char* src : kFields) {
        CAPTURE(src);
        CyclicField f = make_cyclic_field(parse_upoly(src));
        Rng rng(11);
        for (int i = 0; i < 100; ++i) {
            FieldElem a = rng.field_elem(f, 6), b = rng.field_elem(f, 6);
            if (a.is_zero()) continue;
            // For monic P, N(a) = Res(P, a(t)).
            CHECK(norm(a) == resultant(f.poly(), as_upoly(a)));
            CHECK(norm(a * b) == norm(a) * norm(b));
            CHECK(a * a.inverse() == f.scalar(Rat(1)));
        }
    }
}

TEST_CASE("trace is the sum of conjugates and matches -A") {
    CyclicField f = make_cyclic_field(parse_upoly("t^3+3t^2-1"));
    CHECK(trace(f.t()) == Rat(-3));
    CHECK(trace(f.scalar(Rat(2))) == Rat(6));
}

TEST_CASE("mobius identities for cubics") {
    Rng rng(12);
    for (int i = 0; i < 20; ++i) {
        long k = rng.uniform(-5, 5);
        UPoly base = parse_upoly("t^3+t^2-2t-1");
        UPoly shift(std::vector<Rat>{Rat(k), Rat(1)});
        // P(t + k) by Horner.
        UPoly p;
        for (int j = base.degree(); j >= 0; --j) p = p * shift + UPoly(std::vector<Rat>{base.coeff(j)});
        CyclicField f = make_cyclic_field(p);
        REQUIRE(f.mobius());
        auto [mp, mq, mr, ms] = *f.mobius();
        CHECK(ms == -(mp + Rat(1)));
        CHECK(mq * mr == -(mp * mp + mp + Rat(1)));
        FieldElem t = f.t();
        CHECK(f.sigma_of_t() * (f.scalar(mr) * t + f.scalar(ms)) == f.scalar(mp) * t + f.scalar(mq));
    }
    // A = 0: B = 3q/r and C = -q(2p+1)/r^2.
    CyclicField g = make_cyclic_field(parse_upoly("t^3-3t+1"));
    auto [p, q, r, s] = *g.mobius();
    CHECK(Rat(-3) == Rat(3) * q / r);
    CHECK(Rat(1) == -(q * (Rat(2) * p + Rat(1)) / (r * r)));
}

TEST_CASE("the other generator is sigma inverse") {
    CyclicField a = make_cyclic_field(parse_upoly("t^3-3t+1"));
    CyclicField b = make_cyclic_field(parse_upoly("t^3-3t+1"), Generator::Other);
    CHECK(b.sigma_of_t().coords() == galois_apply(a.t(), 2).coords());
}

TEST_CASE("norm certificates") {
    CyclicField f = make_cyclic_field(parse_upoly("t^3-3t+1"));
    auto c = certify_non_norm(f, Rat(2), 100);
    REQUIRE(c);
    CHECK(c->prime == 2);
    CHECK(c->valuation == 1);
    CHECK_FALSE(certify_non_norm(f, Rat(8), 100));
    auto c5 = certify_non_norm(f, Rat(5), 100);
    REQUIRE(c5);
    CHECK(c5->prime == 5);
    CHECK(code_of([&] { certify_non_norm(f, Rat(0), 100); }) == "ZeroAlpha");

    auto p8 = find_norm_preimage(f, Rat(8), 5);
    REQUIRE(p8);
    CHECK(*p8 == f.scalar(Rat(2)));
    CHECK(*find_norm_preimage(f, Rat(1), 5) == f.scalar(Rat(1)));
    CHECK(*find_norm_preimage(f, Rat(-1), 5) == f.t());
    auto half = find_norm_preimage(f, Rat(mpz_class(1), mpz_class(8)), 3);
    REQUIRE(half);
    CHECK(norm(*half) == Rat(mpz_class(1), mpz_class(8)));
}

TEST_CASE("certificate and preimage never both succeed") {
    CyclicField f = make_cyclic_field(parse_upoly("t^3+t^2-2t-1"));
    Rng rng(13);
    for (int i = 0; i < 40; ++i) {
        Rat a(mpz_class(rng.uniform(-30, 30)), mpz_class(rng.uniform(1, 4)));
        if (a.is_zero()) continue;
        auto c = certify_non_norm(f, a, 200);
        auto p = find_norm_preimage(f, a, 3);
        CHECK_FALSE((c && p));
        if (p) CHECK(norm(*p) == a);
    }
}
