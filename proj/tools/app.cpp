#include "app.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bsforge/descent.hpp"
#include "bsforge/error.hpp"
#include "bsforge/models.hpp"
#include "bsforge/numfield.hpp"
#include "bsforge/veronese.hpp"

namespace bsforge::app {

using json = nlohmann::ordered_json;

namespace {

struct Config {
    std::string command;
    std::optional<int> n;
    std::string poly;
    std::string alpha;
    std::string matrix;
    std::string solver = "closed";
    std::uint64_t seed = 42;
    std::size_t samples = 100;
    bool reduce = false;
    std::string exponent_mode = "reduced";
    std::string format = "json";
    unsigned long prime_bound = 1000;
    unsigned height_bound = 20;
    std::string generator = "default";
    std::string golden;
};

// ---------------------------------------------------------------- serialization

json rat_json(const Rat& r) { return r.to_wire(); }

json exps_json(const Exps& e) { return json(e); }

json poly_json(const RatPoly& f) {
    json terms = json::array();
    for (const auto& [e, c] : f.terms()) terms.push_back({{"exps", exps_json(e)}, {"coeff", rat_json(c)}});
    return {{"terms", terms}};
}

json elem_json(const FieldElem& a) {
    json out = json::array();
    for (const Rat& c : a.coords()) out.push_back(rat_json(c));
    return out;
}

json frame() {
    json j;
    for (const char* k : {"n", "m", "field", "alpha", "monomials", "smooth_equations", "singular_model", "certificates",
                          "validation"})
        j[k] = nullptr;
    return j;
}

json field_json(const CyclicField& f) {
    json coeffs = json::array();
    for (const Rat& c : f.poly().coeffs()) coeffs.push_back(rat_json(c));
    return {{"poly", coeffs}};
}

json monomials_json(const VeroneseSpace& s) {
    json out = json::array();
    for (const auto& e : s.monomials) out.push_back(exps_json(e));
    return out;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

// ---------------------------------------------------------------- inputs

void require(bool present, const std::string& flag, const std::string& command) {
    if (!present) fail_input("MissingOption", command + " needs " + flag);
}

CyclicField field_from(const Config& c) {
    Generator g = c.generator == "other" ? Generator::Other : Generator::Default;
    return make_cyclic_field(parse_upoly(c.poly), g);
}

Rat alpha_from(const Config& c) {
    Rat a = Rat::parse(c.alpha);
    if (a.is_zero()) fail_input("ZeroAlpha", "alpha must be nonzero");
    return a;
}

ExponentMode mode_from(const std::string& s) {
    if (s == "raw") return ExponentMode::Raw;
    if (s == "unit") return ExponentMode::Unit;
    return ExponentMode::Reduced;
}

std::string matrix_literal(const Mat<Rat>& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? "," : "") + m(i, j).to_string();
        s += "]";
    }
    return s + "]";
}

// ---------------------------------------------------------------- subcommands

int cmd_veronese(const Config& c, std::ostream& out) {
    require(c.n.has_value(), "--n", "veronese");
    if (*c.n < 1) fail_input("BadDegree", "n must be at least 1");
    VeroneseSpace space = monomial_basis(*c.n);
    VeroneseIdeal ideal = veronese_ideal(space);
    if (c.format == "text") {
        for (const auto& f : ideal.equations) out << to_string(f) << "\n";
        return kOk;
    }
    json j = frame();
    j["n"] = space.n;
    j["m"] = space.m;
    j["monomials"] = monomials_json(space);
    json eqs = json::array();
    for (const auto& f : ideal.equations) eqs.push_back(poly_json(f));
    j["smooth_equations"] = eqs;
    emit(out, j);
    return kOk;
}

int cmd_iota(const Config& c, std::ostream& out) {
    require(c.n.has_value(), "--n", "iota");
    require(!c.matrix.empty(), "--matrix", "iota");
    if (*c.n < 1) fail_input("BadDegree", "n must be at least 1");
    Mat<Rat> a = parse_matrix_literal(c.matrix);
    auto size = static_cast<std::size_t>(*c.n + 1);
    if (a.rows() != size || a.cols() != size)
        fail_input("DimensionMismatch", "matrix must be " + std::to_string(size) + "x" + std::to_string(size));
    if (determinant(a).is_zero()) fail_input("SingularMatrix", "iota needs an invertible matrix");
    VeroneseSpace space = monomial_basis(*c.n);
    Mat<Rat> im = iota(space, a);
    if (c.format == "text") {
        out << matrix_literal(im) << "\n";
        return kOk;
    }
    json j = frame();
    j["n"] = space.n;
    j["m"] = space.m;
    j["monomials"] = monomials_json(space);
    json rows = json::array();
    for (std::size_t i = 0; i < im.rows(); ++i) {
        json row = json::array();
        for (const Rat& r : im.row(i)) row.push_back(rat_json(r));
        rows.push_back(row);
    }
    j["matrix"] = rows;
    emit(out, j);
    return kOk;
}

const char* method_name(SplitMethod m) { return m == SplitMethod::ClosedN2 ? "closed" : "average"; }

int cmd_equations(const Config& c, std::ostream& out) {
    require(c.n.has_value(), "--n", "equations");
    require(!c.poly.empty(), "--poly", "equations");
    require(!c.alpha.empty(), "--alpha", "equations");
    CyclicField field = field_from(c);
    if (field.degree() != *c.n + 1)
        fail_input("DegreeMismatch", "--n must be the field degree minus one (" + std::to_string(field.degree() - 1) + ")");
    SmoothOptions opt;
    opt.solver = c.solver == "average" ? Solver::Average : Solver::Closed;
    opt.seed = c.seed;
    opt.samples = c.samples;
    opt.reduce = c.reduce;
    BSPresentation p = bs_smooth_model(make_input(field, alpha_from(c)), opt);

    if (c.format == "text") {
        out << "# n " << p.n << " m " << p.m << " field " << field.poly().to_string() << " alpha "
            << p.input.alpha.to_string() << "\n";
        out << "# method " << method_name(p.split.method) << " attempts " << p.split.attempts << "\n";
        if (p.fallback_reason) out << "# fallback " << *p.fallback_reason << "\n";
        out << "# validation points " << p.validation.points << " seed " << p.validation.seed << " all_vanish "
            << (p.validation.all_vanish ? "true" : "false") << "\n";
        for (const auto& f : p.rational_equations) out << to_string(f) << "\n";
        return kOk;
    }
    VeroneseSpace space = monomial_basis(p.n);
    json j = frame();
    j["n"] = p.n;
    j["m"] = p.m;
    j["field"] = field_json(field);
    j["alpha"] = rat_json(p.input.alpha);
    j["monomials"] = monomials_json(space);
    json eqs = json::array();
    for (const auto& f : p.rational_equations) eqs.push_back(poly_json(f));
    j["smooth_equations"] = eqs;
    j["validation"] = {{"points", p.validation.points},
                       {"seed", p.validation.seed},
                       {"all_vanish", p.validation.all_vanish},
                       {"method", method_name(p.split.method)},
                       {"attempts", p.split.attempts},
                       {"fallback_reason", p.fallback_reason ? json(*p.fallback_reason) : json(nullptr)}};
    emit(out, j);
    return kOk;
}

int cmd_singular(const Config& c, std::ostream& out) {
    require(!c.poly.empty(), "--poly", "singular");
    require(!c.alpha.empty(), "--alpha", "singular");
    CyclicField field = field_from(c);
    Rat alpha = alpha_from(c);
    ExponentMode mode = mode_from(c.exponent_mode);
    SingularModel model = singular_model(field, alpha, mode);
    std::optional<CubicClosedForm> closed;
    if (field.degree() == 3) closed = cubic_closed_form(field, alpha, mode);

    if (c.format == "text") {
        out << "# n " << model.n << " exponent_mode " << c.exponent_mode << " exponent " << model.exponent << "\n";
        if (closed) {
            out << "# c_pure " << closed->coeffs.c_pure << " d1 " << closed->coeffs.d1 << " d2 " << closed->coeffs.d2
                << " c_mixed " << closed->coeffs.c_mixed << "\n";
            if (closed->mixed_deviates)
                out << "# mixed coefficient " << closed->coeffs.c_mixed << " differs from 3AB - A^3 = "
                    << closed->printed_mixed << "\n";
        }
        out << to_string(model.equation, "x") << "\n";
        return kOk;
    }
    json basis = json::array();
    for (const auto& b : model.basis) basis.push_back(elem_json(b));
    json sm = {{"exponent_mode", c.exponent_mode},
               {"exponent", model.exponent},
               {"basis", basis},
               {"equation", poly_json(model.equation)},
               {"closed_form", nullptr}};
    if (closed) {
        sm["closed_form"] = {{"c_pure", rat_json(closed->coeffs.c_pure)},
                             {"d1", rat_json(closed->coeffs.d1)},
                             {"d2", rat_json(closed->coeffs.d2)},
                             {"c_mixed", rat_json(closed->coeffs.c_mixed)},
                             {"printed_mixed", rat_json(closed->printed_mixed)},
                             {"mixed_deviates", closed->mixed_deviates},
                             {"matches_norm_form", closed->matches_norm_form}};
    }
    json j = frame();
    j["n"] = model.n;
    j["field"] = field_json(field);
    j["alpha"] = rat_json(alpha);
    j["singular_model"] = sm;
    emit(out, j);
    return kOk;
}

int cmd_certify(const Config& c, std::ostream& out) {
    require(!c.poly.empty(), "--poly", "certify");
    require(!c.alpha.empty(), "--alpha", "certify");
    CyclicField field = field_from(c);
    Rat alpha = alpha_from(c);
    auto cert = certify_non_norm(field, alpha, c.prime_bound);
    auto pre = find_norm_preimage(field, alpha, c.height_bound);
    if (cert && pre)
        fail_validation("ValidationFailed", "a non-norm certificate and a norm preimage were both found");
    json nontrivial = cert ? json(true) : (pre ? json(false) : json(nullptr));
    json certificate = cert ? json{{"p", cert->prime}, {"v", cert->valuation}} : json(nullptr);
    json preimage = pre ? elem_json(*pre) : json(nullptr);

    if (c.format == "text") {
        out << "nontrivial " << (cert ? "true" : (pre ? "false" : "unknown")) << "\n";
        if (cert) out << "certificate p " << cert->prime << " v " << cert->valuation << "\n";
        if (pre) out << "preimage " << pre->to_string() << "\n";
        return kOk;
    }
    json j = frame();
    j["n"] = field.degree() - 1;
    j["field"] = field_json(field);
    j["alpha"] = rat_json(alpha);
    j["certificates"] = {{"nontrivial", nontrivial},
                         {"certificate", certificate},
                         {"preimage", preimage},
                         {"prime_bound", c.prime_bound},
                         {"height_bound", c.height_bound}};
    j["nontrivial"] = nontrivial;
    j["certificate"] = certificate;
    emit(out, j);
    return kOk;
}

int cmd_selftest(const Config& c, std::ostream& out) {
    std::string text = c.golden.empty() ? std::string(embedded_golden_text()) : read_text_file(c.golden);
    GoldenData g = parse_golden(text);
    auto items = selftest(g, c.seed, c.samples);
    bool all = std::all_of(items.begin(), items.end(), [](const SelftestItem& i) { return i.pass; });
    if (c.format == "text") {
        for (const auto& i : items) out << (i.pass ? "PASS " : "FAIL ") << i.name << ": " << i.detail << "\n";
        out << "selftest " << (all ? "passed" : "failed") << "\n";
    } else {
        json arr = json::array();
        for (const auto& i : items) arr.push_back({{"name", i.name}, {"pass", i.pass}, {"detail", i.detail}});
        emit(out, {{"seed", c.seed}, {"items", arr}, {"passed", all}});
    }
    return all ? kOk : kValidation;
}

// ---------------------------------------------------------------- selftest helpers

std::string set_diff(const std::vector<RatPoly>& got, const std::vector<RatPoly>& want) {
    auto key = [](const RatPoly& f) { return to_string(mpoly_normalize(f)); };
    std::set<std::string> a, b;
    for (const auto& f : got) a.insert(key(f));
    for (const auto& f : want) b.insert(key(f));
    std::string out;
    for (const auto& s : b)
        if (!a.count(s)) out += " missing {" + s + "}";
    for (const auto& s : a)
        if (!b.count(s)) out += " extra {" + s + "}";
    if (got.size() != want.size())
        out += " count " + std::to_string(got.size()) + " vs " + std::to_string(want.size());
    return out;
}

template <class C, class Show>
std::string first_mismatch(const Mat<C>& got, const Mat<C>& want, Show show) {
    if (got.rows() != want.rows() || got.cols() != want.cols()) return "shape differs";
    for (std::size_t i = 0; i < got.rows(); ++i)
        for (std::size_t j = 0; j < got.cols(); ++j)
            if (!(got(i, j) == want(i, j)))
                return "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is " + show(got(i, j)) +
                       ", expected " + show(want(i, j));
    return {};
}

}  // namespace

// ---------------------------------------------------------------- public

std::vector<SelftestItem> selftest(const GoldenData& g, std::uint64_t seed, std::size_t samples) {
    std::vector<SelftestItem> items;
    auto guarded = [&](const std::string& name, auto&& body) {
        SelftestItem it{name, false, {}};
        try {
            body(it);
        } catch (const Error& e) {
            it.pass = false;
            it.detail = e.code() + ": " + e.what();
        }
        items.push_back(std::move(it));
    };

    CyclicField field;
    guarded("field", [&](SelftestItem& it) {
        field = make_cyclic_field(parse_upoly(g.field));
        it.pass = true;
        it.detail = field.poly().to_string() + ", sigma(t) = " + field.sigma_of_t().to_string();
    });
    if (!field.data()) return items;

    guarded("mobius", [&](SelftestItem& it) {
        const auto& m = field.mobius();
        it.pass = m && *m == g.mobius;
        it.detail = m ? "(" + m->p.to_string() + ", " + m->q.to_string() + ", " + m->r.to_string() + ", " +
                            m->s.to_string() + ")"
                      : "no Mobius form";
    });
    guarded("disc", [&](SelftestItem& it) {
        Rat d = discriminant(field.poly());
        it.pass = d == g.disc;
        it.detail = d.to_string() + (it.pass ? "" : ", expected " + g.disc.to_string());
    });
    guarded("iota", [&](SelftestItem& it) {
        Mat<Rat> im = iota(monomial_basis(2), companion_matrix(3, g.alpha));
        it.detail = first_mismatch(im, g.iota, [](const Rat& r) { return r.to_string(); });
        it.pass = it.detail.empty();
        if (it.pass) it.detail = "10x10 entrywise equal";
    });
    CyclicAlgebraInput input = make_input(field, g.alpha);
    guarded("phi", [&](SelftestItem& it) {
        Mat<FieldElem> got = closed_phi_n2(input).phi;
        Mat<FieldElem> want = expand_phi(g.phi, field, g.alpha);
        it.detail = first_mismatch(got, want, [](const FieldElem& e) { return e.to_string(); });
        it.pass = it.detail.empty();
        if (it.pass) it.detail = "10x10 entrywise equal";
    });
    guarded("veronese1", [&](SelftestItem& it) {
        it.detail = set_diff(veronese_ideal(monomial_basis(1)).equations, g.veronese1);
        it.pass = it.detail.empty();
        if (it.pass) it.detail = "1 equation";
    });
    guarded("veronese2", [&](SelftestItem& it) {
        it.detail = set_diff(veronese_ideal(monomial_basis(2)).equations, g.veronese2);
        it.pass = it.detail.empty();
        if (it.pass) it.detail = std::to_string(g.veronese2.size()) + " equations";
    });

    std::optional<BSPresentation> pres;
    guarded("pipeline", [&](SelftestItem& it) {
        SmoothOptions opt;
        opt.seed = seed;
        opt.samples = samples;
        pres = bs_smooth_model(input, opt);
        it.pass = pres->validation.all_vanish;
        it.detail = std::to_string(pres->rational_equations.size()) + " rational equations vanish on " +
                    std::to_string(pres->validation.points) + " samples";
        if (pres->fallback_reason) it.detail += "; closed form unusable (" + *pres->fallback_reason + ")";
    });
    guarded("families", [&](SelftestItem& it) {
        if (!pres) fail_compute("NoPresentation", "pipeline did not produce a splitting matrix");
        std::vector<LPoly> fams;
        for (const auto& f : g.families) fams.push_back(family_over_l(f, field));
        auto points = sample_points(monomial_basis(2), field, pres->split.phi, samples, seed);
        auto bad = kernels::check_vanishing(fams, points);
        it.pass = !bad;
        it.detail = bad ? "family " + std::to_string(bad->equation + 1) + " is nonzero at sample " +
                              std::to_string(bad->point)
                        : std::to_string(fams.size()) + " families vanish on " + std::to_string(points.size()) +
                              " samples";
    });
    return items;
}

Mat<Rat> parse_matrix_literal(std::string_view src) {
    std::string s;
    for (char ch : src)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    std::size_t pos = 0;
    auto expect = [&](char ch) {
        if (pos >= s.size() || s[pos] != ch) throw SyntaxError(pos, std::string("expected '") + ch + "'");
        ++pos;
    };
    std::vector<std::vector<Rat>> rows;
    expect('[');
    while (true) {
        expect('[');
        std::vector<Rat> row;
        while (true) {
            std::size_t end = s.find_first_of(",]", pos);
            if (end == std::string::npos) throw SyntaxError(pos, "unterminated row");
            row.push_back(Rat::parse(s.substr(pos, end - pos)));
            pos = end;
            if (s[pos] == ']') break;
            ++pos;
        }
        expect(']');
        rows.push_back(std::move(row));
        if (pos < s.size() && s[pos] == ',') {
            ++pos;
            continue;
        }
        break;
    }
    expect(']');
    if (pos != s.size()) throw SyntaxError(pos, "trailing characters");
    for (const auto& r : rows)
        if (r.size() != rows.front().size()) fail_input("DimensionMismatch", "ragged matrix literal");
    Mat<Rat> m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Brauer-Severi variety equations for cyclic algebras over Q"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML/INI file with the same keys as the flags (flags win)");

    int n = 0;
    app.add_option("--n", n, "dimension n of P^n")->check(CLI::PositiveNumber);
    app.add_option("--poly", c.poly, "defining polynomial of the cyclic field, e.g. t^3-3t+1");
    app.add_option("--alpha", c.alpha, "nonzero rational alpha");
    app.add_option("--matrix", c.matrix, "matrix literal for iota");
    app.add_option("--solver", c.solver, "splitting solver")->check(CLI::IsMember({"closed", "average"}));
    app.add_option("--seed", c.seed, "seed for averaging and sampling")->envname("BSFORGE_SEED");
    app.add_option("--samples", c.samples, "validation sample count")->check(CLI::PositiveNumber);
    app.add_flag("--reduce", c.reduce, "drop Q-linearly dependent rational equations");
    app.add_option("--exponent-mode", c.exponent_mode, "singular model exponent")
        ->check(CLI::IsMember({"raw", "reduced", "unit"}));
    app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--prime-bound", c.prime_bound, "largest prime tried by certify")->check(CLI::PositiveNumber);
    app.add_option("--height-bound", c.height_bound, "norm preimage search height")->check(CLI::PositiveNumber);
    app.add_option("--generator", c.generator, "Galois generator sigma or sigma^-1")
        ->check(CLI::IsMember({"default", "other"}));
    app.add_option("--golden", c.golden, "golden data file for selftest (default: embedded copy)");

    for (const char* name : {"veronese", "iota", "equations", "singular", "certify", "selftest"})
        app.add_subcommand(name)->fallthrough();

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidInput;
    }
    if (app.count("--n")) c.n = n;
    c.command = app.get_subcommands().front()->get_name();

    try {
        if (c.command == "veronese") return cmd_veronese(c, out);
        if (c.command == "iota") return cmd_iota(c, out);
        if (c.command == "equations") return cmd_equations(c, out);
        if (c.command == "singular") return cmd_singular(c, out);
        if (c.command == "certify") return cmd_certify(c, out);
        return cmd_selftest(c, out);
    } catch (const Error& e) {
        if (c.format == "json")
            err << json{{"error", {{"code", e.code()}, {"message", e.what()}}}}.dump() << "\n";
        else
            err << "error " << e.code() << ": " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::InvalidInput: return kInvalidInput;
            case ErrorKind::Computation: return kComputation;
            case ErrorKind::Validation: return kValidation;
        }
    }
    return kComputation;
}

}  // namespace bsforge::app
