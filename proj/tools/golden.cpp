#include "golden.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "bsforge/error.hpp"

namespace bsforge::app {

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

std::map<std::string, std::vector<std::string>> sections(std::string_view text) {
    std::map<std::string, std::vector<std::string>> out;
    std::string current;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            current = line.substr(1, line.size() - 2);
            out[current];
            continue;
        }
        if (current.empty()) fail_input("GoldenSyntax", "record before the first section: " + line);
        out[current].push_back(line);
    }
    return out;
}

const std::vector<std::string>& need(const std::map<std::string, std::vector<std::string>>& s, const std::string& key,
                                     std::size_t count = 0) {
    auto it = s.find(key);
    if (it == s.end()) fail_input("GoldenSyntax", "missing section [" + key + "]");
    if (count && it->second.size() != count)
        fail_input("GoldenSyntax", "section [" + key + "] needs " + std::to_string(count) + " records");
    return it->second;
}

std::vector<RatPoly> equations(const std::vector<std::string>& lines, std::size_t nvars) {
    std::vector<RatPoly> out;
    for (const auto& line : lines) {
        auto eq = line.find('=');
        if (eq == std::string::npos) fail_input("GoldenSyntax", "expected lhs = rhs: " + line);
        out.push_back(parse_mpoly(line.substr(0, eq), nvars) - parse_mpoly(line.substr(eq + 1), nvars));
    }
    return out;
}

PhiToken phi_token(const std::string& w) {
    PhiToken t;
    if (w == "0") return t;
    t.zero = false;
    if (w == "1") return t;
    if (w.size() < 2 || w[0] != 'l' || w[1] < '1' || w[1] > '3') fail_input("GoldenSyntax", "bad phi token " + w);
    t.root = w[1] - '1';
    std::string rest = w.substr(2);
    if (rest.empty()) return t;
    if (rest == "a") t.alpha_exp = 1;
    else if (rest == "a2") t.alpha_exp = 2;
    else fail_input("GoldenSyntax", "bad phi token " + w);
    return t;
}

}  // namespace

GoldenData parse_golden(std::string_view text) {
    auto s = sections(text);
    GoldenData g;
    g.field = need(s, "field", 1)[0];
    g.alpha = Rat::parse(need(s, "alpha", 1)[0]);
    g.disc = Rat::parse(need(s, "disc", 1)[0]);

    auto mob = words(need(s, "mobius", 1)[0]);
    if (mob.size() != 4) fail_input("GoldenSyntax", "[mobius] needs four numbers");
    g.mobius = {Rat::parse(mob[0]), Rat::parse(mob[1]), Rat::parse(mob[2]), Rat::parse(mob[3])};

    const auto& io = need(s, "iota", 10);
    g.iota = Mat<Rat>(10, 10);
    for (std::size_t i = 0; i < 10; ++i) {
        auto row = words(io[i]);
        if (row.size() != 10) fail_input("GoldenSyntax", "[iota] rows need ten entries");
        for (std::size_t j = 0; j < 10; ++j) g.iota(i, j) = Rat::parse(row[j]);
    }

    const auto& ph = need(s, "phi", 10);
    g.phi = Mat<PhiToken>(10, 10, PhiToken{});
    for (std::size_t i = 0; i < 10; ++i) {
        auto row = words(ph[i]);
        if (row.size() != 10) fail_input("GoldenSyntax", "[phi] rows need ten entries");
        for (std::size_t j = 0; j < 10; ++j) g.phi(i, j) = phi_token(row[j]);
    }

    g.veronese1 = equations(need(s, "veronese1"), 3);
    g.veronese2 = equations(need(s, "veronese2"), 10);

    for (int f = 1;; ++f) {
        auto it = s.find("family" + std::to_string(f));
        if (it == s.end()) break;
        if (it->second.size() != 3) fail_input("GoldenSyntax", "each family needs t2, t1 and t0 lines");
        std::array<RatPoly, 3> fam;
        static const char* tags[] = {"t2:", "t1:", "t0:"};
        for (std::size_t k = 0; k < 3; ++k) {
            const std::string& line = it->second[k];
            if (line.rfind(tags[k], 0) != 0) fail_input("GoldenSyntax", std::string("expected ") + tags[k]);
            fam[k] = parse_mpoly(line.substr(3), 10);
        }
        g.families.push_back(std::move(fam));
    }
    return g;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail_input("GoldenUnreadable", "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Mat<FieldElem> expand_phi(const Mat<PhiToken>& phi, const CyclicField& field, const Rat& alpha) {
    auto roots = field.roots();
    return phi.map([&](const PhiToken& t) {
        if (t.zero) return field.scalar(Rat(0));
        FieldElem v = t.root < 0 ? field.scalar(Rat(1)) : roots[static_cast<std::size_t>(t.root)];
        return v * field.scalar(alpha.pow(t.alpha_exp));
    });
}

LPoly family_over_l(const std::array<RatPoly, 3>& family, const CyclicField& field) {
    LPoly out(family[0].nvars());
    FieldElem t = field.t();
    FieldElem power[] = {t * t, t, field.scalar(Rat(1))};
    for (std::size_t k = 0; k < 3; ++k)
        for (const auto& [e, c] : family[k].terms()) out.add_term(e, power[k] * field.scalar(c));
    return out;
}

}  // namespace bsforge::app
