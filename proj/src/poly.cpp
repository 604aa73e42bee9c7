#include "mfhrr/poly.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <ostream>
#include <sstream>

#include "mfhrr/errors.hpp"
#include "mfhrr/linalg.hpp"

namespace mfhrr {

MultiPoly::MultiPoly(RingPtr ring, const Rational& c) : ring_(std::move(ring)) {
    if (!c.is_zero()) terms_.emplace(Monomial(nvars()), c);
}

MultiPoly MultiPoly::variable(const RingPtr& ring, int i, int power) {
    if (i < 0 || i >= ring->nvars()) throw error("variable index out of range");
    Monomial m(ring->nvars());
    m.e[static_cast<std::size_t>(i)] = power;
    return term(ring, m, Rational(1));
}

MultiPoly MultiPoly::term(RingPtr ring, Monomial m, const Rational& c) {
    MultiPoly p(std::move(ring));
    if (!c.is_zero()) p.terms_.emplace(std::move(m), c);
    return p;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

long MultiPoly::total_degree() const {
    long d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
}

Rational MultiPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(ring_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (!ring_) ring_ = o.ring_;
    assert(same_ring(ring_, o.ring_));
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    if (!ring_) ring_ = o.ring_;
    assert(same_ring(ring_, o.ring_));
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    assert(same_ring(a.ring_, b.ring_));
    MultiPoly r(a.ring_ ? a.ring_ : b.ring_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
    MultiPoly r(ring_);
    if (c.is_zero()) return r;
    for (const auto& [m, coeff] : terms_) r.terms_.emplace(m, coeff * c);
    return r;
}

MultiPoly MultiPoly::times_term(const Monomial& m, const Rational& c) const {
    MultiPoly r(ring_);
    if (c.is_zero()) return r;
    for (const auto& [mm, coeff] : terms_) r.terms_.emplace(mm * m, coeff * c);
    return r;
}

MultiPoly MultiPoly::pow(int e) const {
    if (e < 0) throw error("negative polynomial power");
    MultiPoly acc = constant(ring_, Rational(1));
    MultiPoly base = *this;
    while (e > 0) {
        if (e & 1) acc *= base;
        if (e >>= 1) base *= base;
    }
    return acc;
}

std::pair<Monomial, Rational> MultiPoly::leading_term(const MonomialOrder& ord) const {
    assert(!is_zero());
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
        if (ord.compare(it->first, best->first) > 0) best = it;
    return {best->first, best->second};
}

Rational MultiPoly::content() const {
    if (is_zero()) return Rational(0);
    // gcd of numerators over lcm of denominators, signed by the last (lex
    // largest) term so that dividing by the content makes that term positive.
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& [m, c] : terms_) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), num_gcd.get_mpz_t(), mpz_class(c.numerator()).get_mpz_t());
        num_gcd = g;
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), den_lcm.get_mpz_t(), mpz_class(c.denominator()).get_mpz_t());
        den_lcm = l;
    }
    Rational c(num_gcd, den_lcm);
    if (terms_.rbegin()->second.sign() < 0) c = -c;
    return c;
}

MultiPoly MultiPoly::lifted(const RingPtr& bigger) const {
    if (same_ring(ring_, bigger)) return *this;
    std::vector<int> pos;
    pos.reserve(ring_->vars.size());
    for (const auto& v : ring_->vars) {
        auto idx = bigger->index_of(v);
        if (!idx) throw error("ring lift: variable '" + v + "' missing from target ring");
        pos.push_back(*idx);
    }
    MultiPoly r(bigger);
    for (const auto& [m, c] : terms_) {
        Monomial mm(bigger->nvars());
        for (std::size_t i = 0; i < pos.size(); ++i) mm.e[static_cast<std::size_t>(pos[i])] = m.e[i];
        r.terms_.emplace(std::move(mm), c);
    }
    return r;
}

std::optional<Rational> MultiPoly::homogeneous_weighted_degree(const std::vector<Rational>& weights) const {
    if (is_zero()) return std::nullopt;
    Rational d = terms_.begin()->first.weighted_degree(weights);
    for (const auto& [m, c] : terms_)
        if (m.weighted_degree(weights) != d) return std::nullopt;
    return d;
}

// --- calculus ---------------------------------------------------------------

MultiPoly partial_derivative(const MultiPoly& p, int i) {
    if (i < 0 || i >= p.nvars()) throw error("partial_derivative: variable index out of range");
    MultiPoly r(p.ring());
    for (const auto& [m, c] : p.terms()) {
        int k = m.e[static_cast<std::size_t>(i)];
        if (k == 0) continue;
        Monomial mm = m;
        mm.e[static_cast<std::size_t>(i)] = k - 1;
        r.add_term(mm, c * Rational(k));
    }
    return r;
}

MultiPoly hessian_det(const MultiPoly& w) {
    int n = w.nvars();
    std::vector<std::vector<MultiPoly>> h(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        MultiPoly di = partial_derivative(w, i);
        for (int j = 0; j < n; ++j) h[static_cast<std::size_t>(i)].push_back(partial_derivative(di, j));
    }
    // Cofactor expansion; n stays tiny at desk scale.
    std::vector<int> cols(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) cols[static_cast<std::size_t>(j)] = j;
    auto det = [&](auto&& self, int row, std::vector<int>& cs) -> MultiPoly {
        if (cs.empty()) return MultiPoly::constant(w.ring(), Rational(1));
        MultiPoly acc(w.ring());
        for (std::size_t k = 0; k < cs.size(); ++k) {
            int c = cs[k];
            if (h[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)].is_zero()) continue;
            std::vector<int> rest;
            for (std::size_t t = 0; t < cs.size(); ++t)
                if (t != k) rest.push_back(cs[t]);
            MultiPoly sub = self(self, row + 1, rest);
            MultiPoly prod = h[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)] * sub;
            if (k % 2 == 1) prod = -prod;
            acc += prod;
        }
        return acc;
    };
    return det(det, 0, cols);
}

std::optional<std::vector<Rational>> quasi_homogeneous_weights(const MultiPoly& w) {
    int n = w.nvars();
    if (w.is_zero() || n == 0) return std::nullopt;
    if (!w.constant_term().is_zero()) return std::nullopt;

    QMatrix a;
    QVec b;
    for (const auto& [m, c] : w.terms()) {
        QVec row(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) row[static_cast<std::size_t>(i)] = Rational(m.e[static_cast<std::size_t>(i)]);
        a.push_back(std::move(row));
        b.push_back(Rational(1));
    }
    auto sol = q_solve(a, b);
    if (!sol) return std::nullopt;

    QVec u = sol->particular;
    if (!sol->nullspace.empty()) {
        // Canonical point of the affine solution set: minimize
        // sum_{i<j} (u_i - u_j)^2, i.e. make the weights as equal as the
        // constraints allow. The quadratic is positive definite on the
        // nullspace because the all-ones direction is never a solution
        // direction (every monomial row has positive degree).
        std::size_t k = sol->nullspace.size();
        auto q_form = [&](const QVec& x, const QVec& y) {
            // <x, Qy> with Q = n*I - ones.
            Rational sx, sy, dot;
            for (std::size_t i = 0; i < x.size(); ++i) {
                sx += x[i];
                sy += y[i];
                dot += x[i] * y[i];
            }
            return Rational(n) * dot - sx * sy;
        };
        QMatrix h(k, QVec(k));
        QVec rhs(k);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) h[i][j] = q_form(sol->nullspace[i], sol->nullspace[j]);
            rhs[i] = -q_form(sol->nullspace[i], sol->particular);
        }
        auto t = q_solve(h, rhs);
        if (t && t->nullspace.empty()) {
            for (std::size_t i = 0; i < k; ++i)
                for (int j = 0; j < n; ++j)
                    u[static_cast<std::size_t>(j)] += t->particular[i] * sol->nullspace[i][static_cast<std::size_t>(j)];
        }
    }
    for (const auto& ui : u)
        if (ui.sign() <= 0) return std::nullopt;
    return u;
}

// --- text I/O ---------------------------------------------------------------

namespace {

struct PolyLexer {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::string read_integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw input_error("expected a number", start);
        return s.substr(start, pos - start);
    }
    std::string read_name() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() &&
            (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
            ++pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
        }
        if (pos == start) throw input_error("expected a variable name", start);
        return s.substr(start, pos - start);
    }
};

}  // namespace

MultiPoly parse_poly(const std::string& text, const RingPtr& ring) {
    PolyLexer lx{text};
    MultiPoly result(ring);

    bool first = true;
    while (true) {
        char c = lx.peek();
        if (c == '\0') {
            if (first) throw input_error("empty polynomial", lx.pos);
            break;
        }
        int sign = 1;
        if (c == '+' || c == '-') {
            sign = (c == '-') ? -1 : 1;
            ++lx.pos;
        } else if (!first) {
            throw input_error("expected '+' or '-' between terms", lx.pos);
        }
        first = false;

        // One term: factors joined by '*', each a rational or var^k.
        Rational coeff(sign);
        Monomial mono(ring->nvars());
        bool any_factor = false;
        while (true) {
            char f = lx.peek();
            if (std::isdigit(static_cast<unsigned char>(f))) {
                std::string num = lx.read_integer();
                std::string den;
                if (lx.eat('/')) den = lx.read_integer();
                coeff *= Rational::parse(den.empty() ? num : num + "/" + den);
                any_factor = true;
            } else if (std::isalpha(static_cast<unsigned char>(f)) || f == '_') {
                std::size_t name_pos = lx.pos;
                std::string name = lx.read_name();
                auto idx = ring->index_of(name);
                if (!idx) throw input_error("unknown variable '" + name + "'", name_pos);
                int power = 1;
                if (lx.eat('^')) {
                    std::size_t ppos = lx.pos;
                    power = std::stoi(lx.read_integer());
                    if (power < 0) throw input_error("negative exponent", ppos);
                }
                mono.e[static_cast<std::size_t>(*idx)] += power;
                any_factor = true;
            } else {
                throw input_error("expected a coefficient or variable", lx.pos);
            }
            if (!lx.eat('*')) break;
        }
        if (!any_factor) throw input_error("empty term", lx.pos);
        result.add_term(mono, coeff);
    }
    return result;
}

std::string MultiPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // Descending storage order so leading-looking terms print first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = c;
        if (first) {
            if (a.sign() < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a.sign() < 0 ? " - " : " + ");
            a = a.abs();
        }
        first = false;
        if (m.is_one()) {
            os << a.str();
        } else {
            if (!a.is_one()) os << a.str() << "*";
            os << m.str(*ring_);
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) {
    return os << p.str();
}

}  // namespace mfhrr
