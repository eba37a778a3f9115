#include "bsforge/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>

#include <omp.h>

namespace bsforge::kernels {

namespace {

std::atomic<Backend> g_backend{Backend::OpenMP};

MPoly<FieldElem> lift(const RatPoly& f) {
    return f.map_coeffs([](const Rat& c) { return FieldElem(c); });
}

// Exact vanishing test on integer-scaled data. Points are projective and the
// equations homogeneous, so both are scaled to integral power-basis
// coordinates; evaluation then needs no gcd work. All monomial values at a
// point are shared across the equations.
class VanishingPlan {
public:
    using IntL = std::vector<mpz_class>;

    template <class Eq>
    explicit VanishingPlan(const std::vector<Eq>& eqs, const std::vector<std::vector<FieldElem>>& points) {
        for (const auto& eq : eqs) {
            if (!eq.is_homogeneous()) fail_input("NotHomogeneous", "vanishing checks need homogeneous equations");
            for (const auto& [e, c] : eq.terms()) adopt(FieldElem(c));
        }
        for (const auto& pt : points)
            for (const auto& x : pt) adopt(x);
        for (const auto& eq : eqs) {
            Compiled ce;
            mpz_class den = 1;
            for (const auto& [e, c] : eq.terms()) {
                FieldElem fc(c);
                for (const Rat& r : fc.coords()) den = lcm_den(den, r);
            }
            for (const auto& [e, c] : eq.terms()) {
                ce.terms.emplace_back(monomial_slot(e), to_int(FieldElem(c), den));
            }
            compiled_.push_back(std::move(ce));
        }
    }

    /// Index of the first equation not vanishing at the point.
    std::optional<std::size_t> first_failure(const std::vector<FieldElem>& point) const {
        mpz_class den = 1;
        for (const auto& x : point)
            for (const Rat& r : x.coords()) den = lcm_den(den, r);
        std::vector<IntL> xs;
        for (const auto& x : point) xs.push_back(to_int(x, den));
        std::vector<IntL> values(monomials_.size());
        std::vector<bool> ready(monomials_.size(), false);
        for (std::size_t e = 0; e < compiled_.size(); ++e) {
            IntL acc(static_cast<std::size_t>(d_));
            for (const auto& [slot, coeff] : compiled_[e].terms) {
                const IntL& v = value(slot, xs, values, ready);
                add_product(acc, coeff, v);
            }
            for (const auto& c : acc)
                if (c != 0) return e;
        }
        return std::nullopt;
    }

private:
    struct Compiled {
        std::vector<std::pair<std::size_t, IntL>> terms;
    };

    void adopt(const FieldElem& x) {
        if (!x.field() || field_) return;
        field_ = x.field();
        d_ = field_->degree;
        for (const auto& row : field_->reduction) {
            IntL r;
            for (const Rat& c : row) {
                if (!c.is_integer()) fail_compute("NotIntegral", "reduction table is not integral");
                r.push_back(c.num());
            }
            red_.push_back(std::move(r));
        }
    }

    IntL to_int(const FieldElem& x, const mpz_class& den) const {
        IntL out(static_cast<std::size_t>(d_));
        for (int k = 0; k < d_; ++k) out[static_cast<std::size_t>(k)] = (x.coord(k) * Rat(den)).num();
        return out;
    }

    std::size_t monomial_slot(const Exps& e) {
        auto [it, fresh] = slot_of_.emplace(e, monomials_.size());
        if (!fresh) return it->second;
        monomials_.push_back(e);
        // Parent: drop one power of the first variable present.
        std::size_t parent = SIZE_MAX, var = SIZE_MAX;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) {
                Exps p = e;
                --p[i];
                var = i;
                bool constant = std::all_of(p.begin(), p.end(), [](int v) { return v == 0; });
                if (!constant) parent = monomial_slot(p);
                break;
            }
        parents_.resize(monomials_.size());
        parents_[it->second] = {parent, var};
        return it->second;
    }

    const IntL& value(std::size_t slot, const std::vector<IntL>& xs, std::vector<IntL>& values,
                      std::vector<bool>& ready) const {
        if (ready[slot]) return values[slot];
        auto [parent, var] = parents_[slot];
        if (var == SIZE_MAX) {
            values[slot] = IntL(static_cast<std::size_t>(d_));
            values[slot][0] = 1;
        } else if (parent == SIZE_MAX) {
            values[slot] = xs[var];
        } else {
            values[slot] = mul(value(parent, xs, values, ready), xs[var]);
        }
        ready[slot] = true;
        return values[slot];
    }

    IntL mul(const IntL& a, const IntL& b) const {
        auto d = static_cast<std::size_t>(d_);
        if (d == 1) return {a[0] * b[0]};
        std::vector<mpz_class> prod(2 * d - 1);
        for (std::size_t i = 0; i < d; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < d; ++j)
                if (b[j] != 0) prod[i + j] += a[i] * b[j];
        }
        IntL out(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(d));
        for (std::size_t k = d; k < prod.size(); ++k) {
            if (prod[k] == 0) continue;
            for (std::size_t i = 0; i < d; ++i)
                if (red_[k][i] != 0) out[i] += prod[k] * red_[k][i];
        }
        return out;
    }

    void add_product(IntL& acc, const IntL& c, const IntL& v) const {
        bool scalar = std::all_of(c.begin() + 1, c.end(), [](const mpz_class& x) { return x == 0; });
        if (scalar) {
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += c[0] * v[i];
            return;
        }
        IntL p = mul(c, v);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += p[i];
    }

    std::shared_ptr<const FieldData> field_;
    int d_ = 1;
    std::vector<IntL> red_;
    std::map<Exps, std::size_t> slot_of_;
    std::vector<Exps> monomials_;
    std::vector<std::pair<std::size_t, std::size_t>> parents_;
    std::vector<Compiled> compiled_;
};

// Evaluation of an integer form with a 128-bit fast path.
class Evaluator {
public:
    Evaluator(const IntForm& f, long height) : f_(&f) {
        int deg = 0;
        mpz_class total = 0;
        for (const auto& [e, c] : f.terms) {
            deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
            total += abs(c);
        }
        mpz_class bound;
        mpz_pow_ui(bound.get_mpz_t(), mpz_class(std::max(height, 1L)).get_mpz_t(), static_cast<unsigned long>(deg));
        bound *= total;
        fast_ = mpz_sizeinbase(bound.get_mpz_t(), 2) < 120;
        if (fast_)
            for (const auto& [e, c] : f.terms) small_.push_back(static_cast<__int128>(c.get_si()));
    }

    bool is_zero_at(const IntPoint& x) const {
        if (fast_) {
            __int128 acc = 0;
            for (std::size_t t = 0; t < f_->terms.size(); ++t) {
                __int128 term = small_[t];
                const Exps& e = f_->terms[t].first;
                for (std::size_t i = 0; i < e.size() && term != 0; ++i)
                    for (int k = 0; k < e[i]; ++k) term *= x[i];
                acc += term;
            }
            return acc == 0;
        }
        mpz_class acc = 0;
        for (const auto& [e, c] : f_->terms) {
            mpz_class term = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) term *= x[i];
            acc += term;
        }
        return acc == 0;
    }

private:
    const IntForm* f_;
    bool fast_ = false;
    std::vector<__int128> small_;
};

// b * N(x) - a * den^d as an integer form in the power-basis coordinates.
IntForm norm_equation(const NormQuery& q) {
    const CyclicField& f = *q.field;
    auto d = static_cast<std::size_t>(f.degree());
    MPoly<FieldElem> prod = MPoly<FieldElem>::constant(d, f.scalar(Rat(1)));
    for (int k = 0; k < f.degree(); ++k) {
        MPoly<FieldElem> lin(d);
        FieldElem pw = f.scalar(Rat(1));
        FieldElem s = galois_apply(f.t(), k);
        for (std::size_t i = 0; i < d; ++i, pw *= s) lin += MPoly<FieldElem>::var(d, i, pw);
        prod = prod * lin;
    }
    RatPoly n = prod.map_coeffs([](const FieldElem& c) { return c.rational_value(); });
    mpz_class l = 1;
    for (const auto& [e, c] : n.terms()) l = lcm_den(l, c);
    IntForm out{d, {}};
    for (const auto& [e, c] : n.terms()) out.terms.emplace_back(e, (c * Rat(mpz_class(l * q.b))).num());
    mpz_class rhs;
    mpz_pow_ui(rhs.get_mpz_t(), q.den.get_mpz_t(), static_cast<unsigned long>(d));
    out.terms.emplace_back(Exps(d, 0), -(rhs * q.a * l));
    return out;
}

long cand_height(const std::vector<IntPoint>& cands) {
    long h = 1;
    for (const auto& c : cands)
        for (long v : c) h = std::max(h, std::labs(v));
    return h;
}

class SystemEvaluator {
public:
    SystemEvaluator(const std::vector<IntForm>& system, long height) {
        if (system.empty()) fail_input("DimensionMismatch", "empty equation system");
        nvars_ = system.front().nvars;
        for (const auto& f : system) {
            if (f.nvars != nvars_) fail_input("DimensionMismatch", "equations over different variable sets");
            parts_.emplace_back(f, height);
        }
    }
    std::size_t nvars() const { return nvars_; }
    bool is_zero_at(const IntPoint& x) const {
        for (const auto& e : parts_)
            if (!e.is_zero_at(x)) return false;
        return true;
    }

private:
    std::size_t nvars_ = 0;
    std::vector<Evaluator> parts_;
};

long max_norm(const IntPoint& x) {
    long h = 0;
    for (long v : x) h = std::max(h, std::labs(v));
    return h;
}

bool canonical_primitive(const IntPoint& x) {
    long g = 0;
    for (long v : x) g = std::gcd(g, std::labs(v));
    if (g != 1) return false;
    for (long v : x)
        if (v != 0) return v > 0;
    return false;
}

// Decodes a mixed-radix index into a point of [-h, h]^n, lexicographic order.
IntPoint decode(unsigned long long idx, std::size_t n, long h) {
    IntPoint x(n);
    unsigned long long side = static_cast<unsigned long long>(2 * h + 1);
    for (std::size_t i = n; i-- > 0;) {
        x[i] = static_cast<long>(idx % side) - h;
        idx /= side;
    }
    return x;
}

unsigned long long box_size(std::size_t n, long h) {
    unsigned long long s = 1;
    for (std::size_t i = 0; i < n; ++i) s *= static_cast<unsigned long long>(2 * h + 1);
    return s;
}

bool shell_less(const IntPoint& a, const IntPoint& b) {
    long ha = max_norm(a), hb = max_norm(b);
    if (ha != hb) return ha < hb;
    return a < b;
}

}  // namespace

Backend default_backend() { return g_backend.load(); }
void set_default_backend(Backend b) { g_backend.store(b); }

IntForm to_int_form(const RatPoly& f) {
    IntForm out;
    out.nvars = f.nvars();
    mpz_class den = 1;
    for (const auto& [e, c] : f.terms()) den = lcm_den(den, c);
    for (const auto& [e, c] : f.terms()) out.terms.emplace_back(e, (c * Rat(den)).num());
    return out;
}

namespace serial {

std::optional<std::size_t> first_norm_match(const NormQuery& q) {
    long h = cand_height(*q.cands);
    IntForm form = norm_equation(q);
    Evaluator ev(form, h);
    for (std::size_t i = 0; i < q.cands->size(); ++i)
        if (ev.is_zero_at((*q.cands)[i])) return i;
    return std::nullopt;
}

std::vector<MPoly<FieldElem>> pull_back(const std::vector<RatPoly>& eqs,
                                        const std::vector<MPoly<FieldElem>>& images) {
    std::vector<MPoly<FieldElem>> out;
    out.reserve(eqs.size());
    for (const auto& eq : eqs) out.push_back(lift(eq).substitute(images));
    return out;
}

std::optional<Nonvanishing> check_vanishing(const std::vector<MPoly<FieldElem>>& eqs,
                                            const std::vector<std::vector<FieldElem>>& points) {
    VanishingPlan plan(eqs, points);
    for (std::size_t p = 0; p < points.size(); ++p)
        if (auto e = plan.first_failure(points[p])) return Nonvanishing{*e, p};
    return std::nullopt;
}

std::optional<Nonvanishing> check_vanishing(const std::vector<RatPoly>& eqs,
                                            const std::vector<std::vector<FieldElem>>& points) {
    VanishingPlan plan(eqs, points);
    for (std::size_t p = 0; p < points.size(); ++p)
        if (auto e = plan.first_failure(points[p])) return Nonvanishing{*e, p};
    return std::nullopt;
}

std::vector<IntPoint> integer_zeros(const std::vector<IntForm>& system, long height, std::size_t max_results) {
    SystemEvaluator ev(system, height);
    const std::size_t nvars = ev.nvars();
    std::vector<IntPoint> out;
    for (long h = 1; h <= height; ++h) {
        unsigned long long total = box_size(nvars, h);
        for (unsigned long long idx = 0; idx < total; ++idx) {
            IntPoint x = decode(idx, nvars, h);
            if (max_norm(x) != h || !canonical_primitive(x)) continue;
            if (!ev.is_zero_at(x)) continue;
            out.push_back(std::move(x));
            if (out.size() >= max_results) return out;
        }
    }
    return out;
}

}  // namespace serial

namespace omp {

std::optional<std::size_t> first_norm_match(const NormQuery& q) {
    const long n = static_cast<long>(q.cands->size());
    long h = cand_height(*q.cands);
    IntForm form = norm_equation(q);
    Evaluator ev(form, h);
    long best = n;
#pragma omp parallel for schedule(dynamic, 64) reduction(min : best)
    for (long i = 0; i < n; ++i)
        if (i < best && ev.is_zero_at((*q.cands)[static_cast<std::size_t>(i)])) best = std::min(best, i);
    if (best == n) return std::nullopt;
    return static_cast<std::size_t>(best);
}

std::vector<MPoly<FieldElem>> pull_back(const std::vector<RatPoly>& eqs,
                                        const std::vector<MPoly<FieldElem>>& images) {
    std::vector<MPoly<FieldElem>> out(eqs.size());
    const long n = static_cast<long>(eqs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
        auto k = static_cast<std::size_t>(i);
        out[k] = lift(eqs[k]).substitute(images);
    }
    return out;
}

namespace {

template <class Eq>
std::optional<Nonvanishing> vanish_all(const std::vector<Eq>& eqs, const std::vector<std::vector<FieldElem>>& points) {
    VanishingPlan plan(eqs, points);
    const long n = static_cast<long>(points.size());
    const long m = static_cast<long>(eqs.size());
    long best = n * m;
#pragma omp parallel for schedule(dynamic, 1) reduction(min : best)
    for (long p = 0; p < n; ++p) {
        if (p * m >= best) continue;
        if (auto e = plan.first_failure(points[static_cast<std::size_t>(p)]))
            best = std::min(best, p * m + static_cast<long>(*e));
    }
    if (best == n * m) return std::nullopt;
    return Nonvanishing{static_cast<std::size_t>(best % m), static_cast<std::size_t>(best / m)};
}

}  // namespace

std::optional<Nonvanishing> check_vanishing(const std::vector<MPoly<FieldElem>>& eqs,
                                            const std::vector<std::vector<FieldElem>>& points) {
    return vanish_all(eqs, points);
}

std::optional<Nonvanishing> check_vanishing(const std::vector<RatPoly>& eqs,
                                            const std::vector<std::vector<FieldElem>>& points) {
    return vanish_all(eqs, points);
}

std::vector<IntPoint> integer_zeros(const std::vector<IntForm>& system, long height, std::size_t max_results) {
    if (height < 1) return {};
    SystemEvaluator ev(system, height);
    const std::size_t nvars = ev.nvars();
    const auto total = static_cast<long long>(box_size(nvars, height));
    std::vector<std::vector<IntPoint>> found(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel for schedule(static, 4096)
    for (long long idx = 0; idx < total; ++idx) {
        IntPoint x = decode(static_cast<unsigned long long>(idx), nvars, height);
        if (!canonical_primitive(x) || !ev.is_zero_at(x)) continue;
        found[static_cast<std::size_t>(omp_get_thread_num())].push_back(std::move(x));
    }
    std::vector<IntPoint> out;
    for (auto& part : found)
        for (auto& x : part) out.push_back(std::move(x));
    std::sort(out.begin(), out.end(), shell_less);
    if (out.size() > max_results) out.resize(max_results);
    return out;
}

}  // namespace omp

std::optional<std::size_t> first_norm_match(const NormQuery& q, Backend b) {
    return b == Backend::Serial ? serial::first_norm_match(q) : omp::first_norm_match(q);
}

std::vector<MPoly<FieldElem>> pull_back(const std::vector<RatPoly>& eqs,
                                        const std::vector<MPoly<FieldElem>>& images, Backend b) {
    return b == Backend::Serial ? serial::pull_back(eqs, images) : omp::pull_back(eqs, images);
}

std::optional<Nonvanishing> check_vanishing(const std::vector<MPoly<FieldElem>>& eqs,
                                            const std::vector<std::vector<FieldElem>>& points, Backend b) {
    return b == Backend::Serial ? serial::check_vanishing(eqs, points) : omp::check_vanishing(eqs, points);
}

std::optional<Nonvanishing> check_vanishing(const std::vector<RatPoly>& eqs,
                                            const std::vector<std::vector<FieldElem>>& points, Backend b) {
    return b == Backend::Serial ? serial::check_vanishing(eqs, points) : omp::check_vanishing(eqs, points);
}

std::vector<IntPoint> integer_zeros(const std::vector<IntForm>& system, long height, std::size_t max_results,
                                    Backend b) {
    return b == Backend::Serial ? serial::integer_zeros(system, height, max_results)
                                : omp::integer_zeros(system, height, max_results);
}

}  // namespace bsforge::kernels
