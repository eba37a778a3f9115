#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bsforge/error.hpp"
#include "bsforge/rational.hpp"

namespace bsforge {

using Exps = std::vector<int>;

/// Descending lexicographic order on exponent vectors.
struct DescLex {
    bool operator()(const Exps& a, const Exps& b) const { return b < a; }
};

/// Sparse multivariate polynomial; zero coefficients are never stored.
template <class C>
class MPoly {
public:
    using Terms = std::map<Exps, C, DescLex>;

    explicit MPoly(std::size_t nvars = 0) : nvars_(nvars) {}

    static MPoly constant(std::size_t nvars, const C& c) {
        MPoly f(nvars);
        f.add_term(Exps(nvars, 0), c);
        return f;
    }
    static MPoly var(std::size_t nvars, std::size_t i, const C& c = C(1)) {
        Exps e(nvars, 0);
        e.at(i) = 1;
        MPoly f(nvars);
        f.add_term(std::move(e), c);
        return f;
    }

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const Exps& e, const C& c) {
        if (e.size() != nvars_) fail_input("DimensionMismatch", "exponent vector length differs from nvars");
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    C coeff(const Exps& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? C(0) : it->second;
    }

    /// Coefficient of the leading (descending-lex first) term.
    const C& leading_coeff() const { return terms_.begin()->second; }

    int total_degree() const {
        int deg = -1;
        for (const auto& [e, c] : terms_) deg = std::max(deg, degree_of(e));
        return deg;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        int deg = degree_of(terms_.begin()->first);
        return std::all_of(terms_.begin(), terms_.end(), [&](const auto& kv) { return degree_of(kv.first) == deg; });
    }

    MPoly operator-() const {
        MPoly out(nvars_);
        for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
        return out;
    }
    MPoly& operator+=(const MPoly& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        a.check(b);
        MPoly out(a.nvars_);
        Exps e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }
    friend MPoly operator*(const C& s, const MPoly& a) {
        MPoly out(a.nvars_);
        if (s.is_zero()) return out;
        for (const auto& [e, c] : a.terms_) out.add_term(e, s * c);
        return out;
    }
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

    MPoly pow(unsigned k) const {
        MPoly out = constant(nvars_, C(1));
        for (unsigned i = 0; i < k; ++i) out = out * *this;
        return out;
    }

    template <class F>
    auto map_coeffs(F&& f) const {
        using D = decltype(f(std::declval<const C&>()));
        MPoly<D> out(nvars_);
        for (const auto& [e, c] : terms_) out.add_term(e, f(c));
        return out;
    }

    /// Evaluates at a point whose coordinates live in a ring D containing C.
    template <class D>
    D eval(const std::vector<D>& x) const {
        if (x.size() != nvars_) fail_input("DimensionMismatch", "evaluation point has the wrong length");
        int deg = std::max(total_degree(), 0);
        std::vector<std::vector<D>> powers(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) {
            powers[i].push_back(D(1));
            for (int k = 1; k <= deg; ++k) powers[i].push_back(powers[i].back() * x[i]);
        }
        D acc(0);
        for (const auto& [e, c] : terms_) {
            D term(c);
            for (std::size_t i = 0; i < nvars_; ++i)
                if (e[i]) term *= powers[i][static_cast<std::size_t>(e[i])];
            acc += term;
        }
        return acc;
    }

    /// Substitutes variable i by images[i] (all in the same ring and arity).
    MPoly substitute(const std::vector<MPoly>& images) const {
        if (images.size() != nvars_) fail_input("DimensionMismatch", "substitution needs one image per variable");
        std::size_t out_vars = images.empty() ? 0 : images.front().nvars();
        std::vector<std::vector<MPoly>> powers(nvars_);
        MPoly out(out_vars);
        for (const auto& [e, c] : terms_) {
            MPoly term = constant(out_vars, c);
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (!e[i]) continue;
                auto& pw = powers[i];
                if (pw.empty()) pw.push_back(constant(out_vars, C(1)));
                while (pw.size() <= static_cast<std::size_t>(e[i])) pw.push_back(pw.back() * images[i]);
                term = term * pw[static_cast<std::size_t>(e[i])];
            }
            out += term;
        }
        return out;
    }

private:
    static int degree_of(const Exps& e) {
        int s = 0;
        for (int x : e) s += x;
        return s;
    }
    void check(const MPoly& o) const {
        if (o.nvars_ != nvars_) fail_input("DimensionMismatch", "polynomials over different variable sets");
    }

    std::size_t nvars_;
    Terms terms_;
};

using RatPoly = MPoly<Rat>;

/// Positive rescaling to coprime integer coefficients with a positive leading term.
RatPoly mpoly_normalize(const RatPoly& f);

/// Canonical text such as "w0*w2 - w1^2" (descending lex, prefix selects the variable letter).
std::string to_string(const RatPoly& f, std::string_view prefix = "w");

/// Parses the canonical text form back; accepts either sign on the first term.
RatPoly parse_mpoly(std::string_view src, std::size_t nvars, std::string_view prefix = "w");

}  // namespace bsforge
