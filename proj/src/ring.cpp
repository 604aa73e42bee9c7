#include "mfhrr/ring.hpp"

#include <algorithm>
#include <cassert>

#include "mfhrr/errors.hpp"

namespace mfhrr {

std::optional<int> Ring::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return static_cast<int>(i);
    return std::nullopt;
}

RingPtr make_ring(std::vector<std::string> vars) {
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j]) throw input_error("duplicate variable '" + vars[i] + "'");
    return std::make_shared<const Ring>(Ring{std::move(vars)});
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
    return a == b || (a && b && a->vars == b->vars);
}

RingPtr merge_rings(const RingPtr& a, const RingPtr& b) {
    if (same_ring(a, b)) return a;
    std::vector<std::string> vars = a->vars;
    for (const auto& v : b->vars)
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    return make_ring(std::move(vars));
}

bool Monomial::is_one() const {
    return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

long Monomial::total_degree() const {
    long d = 0;
    for (int k : e) d += k;
    return d;
}

Rational Monomial::weighted_degree(const std::vector<Rational>& weights) const {
    assert(weights.size() == e.size());
    Rational d;
    for (std::size_t i = 0; i < e.size(); ++i) d += weights[i] * Rational(e[i]);
    return d;
}

bool Monomial::divides(const Monomial& m) const {
    assert(e.size() == m.e.size());
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > m.e[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& m) const {
    assert(e.size() == m.e.size());
    Monomial r = *this;
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += m.e[i];
    return r;
}

Monomial Monomial::operator/(const Monomial& m) const {
    assert(m.divides(*this));
    Monomial r = *this;
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] -= m.e[i];
    return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
    assert(a.e.size() == b.e.size());
    Monomial r = a;
    for (std::size_t i = 0; i < b.e.size(); ++i) r.e[i] = std::max(r.e[i], b.e[i]);
    return r;
}

Monomial gcd(const Monomial& a, const Monomial& b) {
    assert(a.e.size() == b.e.size());
    Monomial r = a;
    for (std::size_t i = 0; i < b.e.size(); ++i) r.e[i] = std::min(r.e[i], b.e[i]);
    return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] > 0 && b.e[i] > 0) return false;
    return true;
}

std::string Monomial::str(const Ring& ring) const {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += ring.vars[i];
        if (e[i] != 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    assert(a.e.size() == b.e.size());
    auto revlex_tie = [&]() {
        // Last differing exponent decides; the smaller exponent wins.
        for (std::size_t i = a.e.size(); i-- > 0;) {
            if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
        }
        return 0;
    };
    switch (kind) {
        case Kind::lex:
            for (std::size_t i = 0; i < a.e.size(); ++i)
                if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
            return 0;
        case Kind::degrevlex: {
            long da = a.total_degree(), db = b.total_degree();
            if (da != db) return da > db ? 1 : -1;
            return revlex_tie();
        }
        case Kind::wdegrevlex: {
            Rational da = a.weighted_degree(weights), db = b.weighted_degree(weights);
            if (da != db) return da > db ? 1 : -1;
            long ta = a.total_degree(), tb = b.total_degree();
            if (ta != tb) return ta > tb ? 1 : -1;
            return revlex_tie();
        }
    }
    return 0;
}

}  // namespace mfhrr
