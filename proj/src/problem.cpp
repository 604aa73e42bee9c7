#include "mfhrr/problem.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "mfhrr/errors.hpp"

namespace mfhrr {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

// Splits on top-level commas, respecting (), [] and {} nesting.
std::vector<std::string> split_args(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    return out;
}

// Parses [[p, p], [p, p]] into a matrix of polynomials.
PolyMatrix parse_matrix_literal(const std::string& text, const RingPtr& ring) {
    std::string s = trim(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw input_error("expected a matrix literal [[...],[...]]: " + s);
    std::vector<std::string> rows = split_args(s.substr(1, s.size() - 2));
    PolyMatrix m;
    std::size_t cols = 0;
    for (const auto& row : rows) {
        std::string r = trim(row);
        if (r.size() < 2 || r.front() != '[' || r.back() != ']')
            throw input_error("expected a matrix row [...]: " + r);
        std::vector<std::string> cells = split_args(r.substr(1, r.size() - 2));
        std::vector<MultiPoly> prow;
        for (const auto& cell : cells) prow.push_back(parse_poly(cell, ring));
        if (m.empty())
            cols = prow.size();
        else if (prow.size() != cols)
            throw input_error("ragged matrix literal");
        m.push_back(std::move(prow));
    }
    if (m.empty()) throw input_error("empty matrix literal");
    return m;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::string s = trim(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw input_error("expected a list [...]: " + s);
    std::vector<Rational> out;
    for (const auto& cell : split_args(s.substr(1, s.size() - 2))) {
        std::string c = trim(cell);
        bool neg = false;
        if (!c.empty() && (c[0] == '-' || c[0] == '+')) {
            neg = c[0] == '-';
            c = trim(c.substr(1));
        }
        Rational r = Rational::parse(c);
        out.push_back(neg ? -r : r);
    }
    return out;
}

}  // namespace

MatrixFactorization parse_mf_expression(
    const std::string& text, const RingPtr& ring,
    const std::vector<std::pair<std::string, MatrixFactorization>>& named) {
    std::string s = trim(text);
    if (s.empty()) throw input_error("empty factorization expression");

    auto call_args = [&](const std::string& head) -> std::optional<std::vector<std::string>> {
        if (s.rfind(head + "(", 0) != 0 || s.back() != ')') return std::nullopt;
        return split_args(s.substr(head.size() + 1, s.size() - head.size() - 2));
    };

    if (auto args = call_args("koszul")) {
        if (args->size() != 2) throw input_error("koszul expects two polynomials: " + s);
        return koszul_mf(parse_poly((*args)[0], ring), parse_poly((*args)[1], ring));
    }
    if (auto args = call_args("tensor")) {
        if (args->size() != 2) throw input_error("tensor expects two factorizations: " + s);
        return tensor_mf(parse_mf_expression((*args)[0], ring, named),
                         parse_mf_expression((*args)[1], ring, named));
    }
    if (auto args = call_args("sum")) {
        if (args->size() != 2) throw input_error("sum expects two factorizations: " + s);
        return sum_mf(parse_mf_expression((*args)[0], ring, named),
                      parse_mf_expression((*args)[1], ring, named));
    }
    if (auto args = call_args("dual")) {
        if (args->size() != 1) throw input_error("dual expects one factorization: " + s);
        return dual_mf(parse_mf_expression((*args)[0], ring, named));
    }
    if (auto args = call_args("shift")) {
        if (args->size() != 1) throw input_error("shift expects one factorization: " + s);
        return shift_mf(parse_mf_expression((*args)[0], ring, named));
    }
    if (s.rfind("explicit{", 0) == 0 && s.back() == '}') {
        MatrixFactorization m;
        m.ring = ring;
        bool have_d1 = false, have_d0 = false;
        for (const auto& field : split_args(s.substr(9, s.size() - 10))) {
            auto eq = field.find('=');
            if (eq == std::string::npos) throw input_error("explicit{} field needs '=': " + field);
            std::string key = trim(field.substr(0, eq));
            std::string val = trim(field.substr(eq + 1));
            if (key == "d1") {
                m.d1 = parse_matrix_literal(val, ring);
                have_d1 = true;
            } else if (key == "d0") {
                m.d0 = parse_matrix_literal(val, ring);
                have_d0 = true;
            } else if (key == "degrees") {
                m.degrees = parse_rational_list(val);
            } else {
                throw input_error("unknown explicit{} field '" + key + "'");
            }
        }
        if (!have_d1 || !have_d0) throw input_error("explicit{} needs both d1 and d0");
        m.r0 = static_cast<int>(m.d1.size());
        m.r1 = static_cast<int>(m.d0.size());
        if (m.r0 == 0 || m.r1 == 0 || static_cast<int>(m.d1[0].size()) != m.r1 ||
            static_cast<int>(m.d0[0].size()) != m.r0)
            throw input_error("explicit{}: d1 must be r0 x r1 and d0 must be r1 x r0");
        if (m.degrees && static_cast<int>(m.degrees->size()) != m.dim())
            throw input_error("explicit{}: degrees list must have r0 + r1 entries");
        PolyMatrix prod = poly_matrix_mul(m.d1, m.d0);
        m.w = prod.empty() ? MultiPoly::zero(ring) : prod[0][0];
        m.descr = s;
        return m;
    }
    // A bare name referring to an earlier factorization.
    for (const auto& [n, mf] : named)
        if (n == s) return mf;
    throw input_error("unknown factorization expression '" + s + "'");
}

const MatrixFactorization& ProblemFile::mf(const std::string& n) const {
    for (const auto& [name_, m] : mfs)
        if (name_ == n) return m;
    throw input_error("no factorization named '" + n + "'");
}

const NamedEndo& ProblemFile::endo(const std::string& n) const {
    for (const auto& e : endos)
        if (e.name == n) return e;
    throw input_error("no endomorphism named '" + n + "'");
}

std::pair<const MatrixFactorization*, const MatrixFactorization*> ProblemFile::hrr_pair() const {
    if (mfs.empty()) throw input_error("problem declares no factorizations");
    if (pair_names) return {&mf(pair_names->first), &mf(pair_names->second)};
    if (mfs.size() >= 2) return {&mfs[0].second, &mfs[1].second};
    return {&mfs[0].second, &mfs[0].second};
}

std::pair<const NamedEndo*, const NamedEndo*> ProblemFile::cardy_pair() const {
    if (endos.empty()) throw input_error("problem declares no endomorphisms");
    if (cardy_names) return {&endo(cardy_names->first), &endo(cardy_names->second)};
    if (endos.size() >= 2) return {&endos[0], &endos[1]};
    return {&endos[0], &endos[0]};
}

ProblemFile parse_problem(const std::string& text) {
    ProblemFile pf;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) -> void {
        throw input_error("line " + std::to_string(lineno) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        std::istringstream ls(line);
        std::string key;
        ls >> key;
        std::string rest = trim(line.substr(key.size()));

        try {
        if (key == "ring") {
            if (pf.ring) fail("duplicate ring declaration");
            std::vector<std::string> vars;
            for (auto& v : split_args(rest)) {
                if (v.empty()) fail("empty variable name");
                vars.push_back(v);
            }
            if (vars.empty()) fail("ring needs at least one variable");
            pf.ring = make_ring(vars);
        } else if (key == "name") {
            pf.name = rest;
        } else if (key == "w") {
            if (!pf.ring) fail("w before ring declaration");
            if (rest.empty() || rest[0] != '=') fail("expected 'w = <poly>'");
            pf.w = parse_poly(trim(rest.substr(1)), pf.ring);
        } else if (key == "mf") {
            if (!pf.ring) fail("mf before ring declaration");
            if (pf.w.is_zero()) fail("mf before w declaration");
            auto eq = rest.find('=');
            if (eq == std::string::npos) fail("expected 'mf <name> = <expression>'");
            std::string name = trim(rest.substr(0, eq));
            if (name.empty()) fail("factorization needs a name");
            MatrixFactorization m = parse_mf_expression(trim(rest.substr(eq + 1)), pf.ring, pf.mfs);
            if (m.descr.empty() || m.descr.front() == '[') m.descr = trim(rest.substr(eq + 1));
            // Validate against w, or -w so dual expressions stay usable.
            MfCheck chk = validate_mf(m);
            if (!chk.ok) fail("'" + name + "' is not a matrix factorization: " + chk.message);
            if (!(m.w == pf.w.lifted(m.ring)) && !(m.w == -pf.w.lifted(m.ring)))
                fail("'" + name + "' factors " + m.w.str() + ", not w or -w");
            pf.mfs.emplace_back(name, std::move(m));
        } else if (key == "endo") {
            if (!pf.ring) fail("endo before ring declaration");
            // endo <name> on <mf> = [[...]]
            auto on = rest.find(" on ");
            auto eq = rest.find('=');
            if (on == std::string::npos || eq == std::string::npos || on > eq)
                fail("expected 'endo <name> on <mf> = [[...]]'");
            NamedEndo e;
            e.name = trim(rest.substr(0, on));
            e.mf_name = trim(rest.substr(on + 4, eq - on - 4));
            const MatrixFactorization& target = pf.mf(e.mf_name);
            e.matrix = parse_matrix_literal(trim(rest.substr(eq + 1)), pf.ring);
            if (static_cast<int>(e.matrix.size()) != target.dim() ||
                static_cast<int>(e.matrix[0].size()) != target.dim())
                fail("endomorphism '" + e.name + "' must be " + std::to_string(target.dim()) + "x" +
                     std::to_string(target.dim()));
            pf.endos.push_back(std::move(e));
        } else if (key == "pair") {
            std::istringstream ps(rest);
            std::string a, b;
            ps >> a >> b;
            if (a.empty() || b.empty()) fail("expected 'pair <mf> <mf>'");
            pf.mf(a);
            pf.mf(b);
            pf.pair_names = {a, b};
        } else if (key == "cardy") {
            std::istringstream ps(rest);
            std::string a, b;
            ps >> a >> b;
            if (a.empty() || b.empty()) fail("expected 'cardy <endo> <endo>'");
            pf.endo(a);
            pf.endo(b);
            pf.cardy_names = {a, b};
        } else {
            fail("unknown directive '" + key + "'");
        }
        } catch (const input_error& e) {
            std::string what = e.what();
            if (what.rfind("line ", 0) == 0) throw;
            fail(what);
        }
    }
    if (!pf.ring) throw input_error("problem file declares no ring");
    if (pf.w.is_zero()) throw input_error("problem file declares no w");
    return pf;
}

}  // namespace mfhrr
