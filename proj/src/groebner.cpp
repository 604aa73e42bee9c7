#include "mfhrr/groebner.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "mfhrr/errors.hpp"

namespace mfhrr {

ModuleElem module_zero(const RingPtr& ring, int rank) {
    return ModuleElem(static_cast<std::size_t>(rank), MultiPoly::zero(ring));
}

bool module_is_zero(const ModuleElem& v) {
    return std::all_of(v.begin(), v.end(), [](const MultiPoly& p) { return p.is_zero(); });
}

ModuleElem module_add(const ModuleElem& a, const ModuleElem& b) {
    assert(a.size() == b.size());
    ModuleElem r = a;
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

ModuleElem module_sub(const ModuleElem& a, const ModuleElem& b) {
    assert(a.size() == b.size());
    ModuleElem r = a;
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return r;
}

ModuleElem module_scaled(const ModuleElem& a, const Rational& c) {
    ModuleElem r;
    r.reserve(a.size());
    for (const auto& p : a) r.push_back(p.scaled(c));
    return r;
}

ModuleElem module_times_term(const ModuleElem& a, const Monomial& m, const Rational& c) {
    ModuleElem r;
    r.reserve(a.size());
    for (const auto& p : a) r.push_back(p.times_term(m, c));
    return r;
}

LeadTerm module_lead_term(const ModuleElem& v, const MonomialOrder& ord) {
    for (std::size_t p = 0; p < v.size(); ++p) {
        if (v[p].is_zero()) continue;
        auto [m, c] = v[p].leading_term(ord);
        return {static_cast<int>(p), m, c};
    }
    throw error("lead term of the zero element");
}

int compare_pot(const LeadTerm& a, const LeadTerm& b, const MonomialOrder& ord) {
    if (a.pos != b.pos) return a.pos < b.pos ? 1 : -1;
    return ord.compare(a.mon, b.mon);
}

namespace {

// Basis element under construction: the value, its lead term, and its
// expression in terms of the original input generators.
struct WorkElem {
    ModuleElem v;
    LeadTerm lead;
    std::vector<MultiPoly> rep;
};

Rational module_content(const ModuleElem& v, const LeadTerm& lead) {
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& p : v) {
        for (const auto& [m, c] : p.terms()) {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), num_gcd.get_mpz_t(), mpz_class(c.numerator()).get_mpz_t());
            num_gcd = g;
            mpz_class l;
            mpz_lcm(l.get_mpz_t(), den_lcm.get_mpz_t(), mpz_class(c.denominator()).get_mpz_t());
            den_lcm = l;
        }
    }
    Rational c{num_gcd, den_lcm};
    if (lead.coeff.sign() < 0) c = -c;
    return c;
}

// Scale to a primitive integer vector with positive lead coefficient.
void make_primitive(WorkElem& w) {
    Rational c = module_content(w.v, w.lead);
    if (c.is_zero() || c.is_one()) return;
    Rational inv = c.inverse();
    w.v = module_scaled(w.v, inv);
    for (auto& p : w.rep) p = p.scaled(inv);
    w.lead.coeff *= inv;
}

// Full reduction of (v, rep) against basis; returns the normal form with rep
// maintained so that result = sum rep*input still holds. When cofactors is
// non-null it receives the multipliers against `basis` itself.
WorkElem full_reduce(ModuleElem v, std::vector<MultiPoly> rep,
                     const std::vector<WorkElem>& basis, const MonomialOrder& ord,
                     std::vector<MultiPoly>* cofactors, const RingPtr& ring,
                     std::size_t skip_index = static_cast<std::size_t>(-1)) {
    ModuleElem done = module_zero(ring, static_cast<int>(v.size()));
    while (!module_is_zero(v)) {
        LeadTerm lt = module_lead_term(v, ord);
        bool reduced_step = false;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            if (k == skip_index) continue;
            const WorkElem& g = basis[k];
            if (g.lead.pos != lt.pos || !g.lead.mon.divides(lt.mon)) continue;
            Monomial qm = lt.mon / g.lead.mon;
            Rational qc = lt.coeff / g.lead.coeff;
            v = module_sub(v, module_times_term(g.v, qm, qc));
            for (std::size_t j = 0; j < rep.size(); ++j)
                rep[j] -= g.rep[j].times_term(qm, qc);
            if (cofactors) (*cofactors)[k] += MultiPoly::term(ring, qm, qc);
            reduced_step = true;
            break;
        }
        if (!reduced_step) {
            auto& comp = v[static_cast<std::size_t>(lt.pos)];
            done[static_cast<std::size_t>(lt.pos)].add_term(lt.mon, lt.coeff);
            comp.add_term(lt.mon, -lt.coeff);
        }
    }
    WorkElem out{std::move(done), {}, std::move(rep)};
    if (!module_is_zero(out.v)) out.lead = module_lead_term(out.v, ord);
    return out;
}

struct PendingPair {
    Monomial lcm_mon;
    int pos;
    std::size_t i, j;
};

struct PairCmp {
    const MonomialOrder* ord;
    bool operator()(const PendingPair& a, const PendingPair& b) const {
        int c = ord->compare(a.lcm_mon, b.lcm_mon);
        if (c != 0) return c < 0;
        if (a.pos != b.pos) return a.pos < b.pos;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
};

}  // namespace

GroebnerBasis buchberger(const std::vector<ModuleElem>& gens, const MonomialOrder& order) {
    if (gens.empty()) throw error("buchberger: no generators");
    std::size_t rank = gens[0].size();
    if (rank == 0) throw error("buchberger: rank-zero module");
    RingPtr ring;
    for (const auto& g : gens) {
        if (g.size() != rank) throw error("buchberger: inconsistent ranks");
        for (const auto& p : g)
            if (p.ring()) ring = p.ring();
    }
    if (!ring) throw error("buchberger: generators carry no ring");

    std::vector<WorkElem> basis;
    for (std::size_t idx = 0; idx < gens.size(); ++idx) {
        if (module_is_zero(gens[idx])) continue;
        WorkElem w;
        w.v = gens[idx];
        for (auto& p : w.v) p = p.lifted(ring);
        w.lead = module_lead_term(w.v, order);
        w.rep.assign(gens.size(), MultiPoly::zero(ring));
        w.rep[idx] = MultiPoly::constant(ring, Rational(1));
        make_primitive(w);
        basis.push_back(std::move(w));
    }
    if (basis.empty()) throw error("buchberger: all generators are zero");

    std::set<PendingPair, PairCmp> pending{PairCmp{&order}};
    auto push_pairs_for = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (basis[i].lead.pos != basis[j].lead.pos) continue;
            pending.insert({lcm(basis[i].lead.mon, basis[j].lead.mon), basis[i].lead.pos, i, j});
        }
    };
    for (std::size_t j = 0; j < basis.size(); ++j) push_pairs_for(j);

    auto pair_pending = [&](std::size_t a, std::size_t b) {
        if (a == b) return false;
        std::size_t i = std::min(a, b), j = std::max(a, b);
        if (basis[i].lead.pos != basis[j].lead.pos) return false;
        PendingPair key{lcm(basis[i].lead.mon, basis[j].lead.mon), basis[i].lead.pos, i, j};
        return pending.find(key) != pending.end();
    };

    while (!pending.empty()) {
        PendingPair pr = *pending.begin();
        pending.erase(pending.begin());
        const WorkElem& gi = basis[pr.i];
        const WorkElem& gj = basis[pr.j];

        // Coprime-lead criterion; valid for the ideal case only.
        if (rank == 1 && coprime(gi.lead.mon, gj.lead.mon)) continue;
        // Chain criterion: some third lead divides the lcm and both side
        // pairs were already handled.
        bool chained = false;
        for (std::size_t k = 0; k < basis.size() && !chained; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (basis[k].lead.pos != pr.pos || !basis[k].lead.mon.divides(pr.lcm_mon)) continue;
            if (!pair_pending(pr.i, k) && !pair_pending(pr.j, k)) chained = true;
        }
        if (chained) continue;

        Monomial mi = pr.lcm_mon / gi.lead.mon;
        Monomial mj = pr.lcm_mon / gj.lead.mon;
        ModuleElem s = module_sub(module_times_term(gi.v, mi, gi.lead.coeff.inverse()),
                                  module_times_term(gj.v, mj, gj.lead.coeff.inverse()));
        std::vector<MultiPoly> srep(gens.size(), MultiPoly::zero(ring));
        for (std::size_t t = 0; t < gens.size(); ++t)
            srep[t] = gi.rep[t].times_term(mi, gi.lead.coeff.inverse()) -
                      gj.rep[t].times_term(mj, gj.lead.coeff.inverse());

        WorkElem red = full_reduce(std::move(s), std::move(srep), basis, order, nullptr, ring);
        if (module_is_zero(red.v)) continue;
        make_primitive(red);
        basis.push_back(std::move(red));
        push_pairs_for(basis.size() - 1);
    }

    // Minimalize: drop generators whose lead is divisible by another's.
    std::vector<bool> keep(basis.size(), true);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < basis.size() && keep[i]; ++j) {
            if (i == j || !keep[j]) continue;
            if (basis[j].lead.pos != basis[i].lead.pos) continue;
            if (basis[j].lead.mon.divides(basis[i].lead.mon) &&
                !(basis[i].lead.mon == basis[j].lead.mon && j > i))
                keep[i] = false;
        }
    }
    std::vector<WorkElem> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (keep[i]) minimal.push_back(std::move(basis[i]));

    // Inter-reduce tails and scale monic: the unique reduced basis.
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        WorkElem red = full_reduce(minimal[i].v, minimal[i].rep, minimal, order, nullptr, ring, i);
        red.lead = module_lead_term(red.v, order);
        Rational inv = red.lead.coeff.inverse();
        red.v = module_scaled(red.v, inv);
        for (auto& p : red.rep) p = p.scaled(inv);
        red.lead.coeff = Rational(1);
        minimal[i] = std::move(red);
    }

    std::sort(minimal.begin(), minimal.end(), [&](const WorkElem& a, const WorkElem& b) {
        return compare_pot(a.lead, b.lead, order) > 0;
    });

    GroebnerBasis gb;
    gb.ring = ring;
    gb.rank = static_cast<int>(rank);
    gb.order = order;
    gb.reduced = true;
    gb.n_input = gens.size();
    for (auto& w : minimal) {
        gb.generators.push_back(std::move(w.v));
        gb.leads.push_back(std::move(w.lead));
        gb.transform.push_back(std::move(w.rep));
    }
    return gb;
}

DivisionRecord normal_form_with_cofactors(const ModuleElem& f, const GroebnerBasis& gb) {
    if (static_cast<int>(f.size()) != gb.rank) throw error("normal form: rank mismatch");

    std::vector<WorkElem> basis(gb.generators.size());
    for (std::size_t i = 0; i < gb.generators.size(); ++i) {
        basis[i].v = gb.generators[i];
        basis[i].lead = gb.leads[i];
    }
    ModuleElem ff = f;
    for (auto& p : ff) p = p.lifted(gb.ring);
    std::vector<MultiPoly> cof(gb.generators.size(), MultiPoly::zero(gb.ring));
    WorkElem red = full_reduce(std::move(ff), {}, basis, gb.order, &cof, gb.ring);

    // Re-verify the division identity by direct arithmetic.
    ModuleElem check = red.v;
    for (std::size_t i = 0; i < gb.generators.size(); ++i)
        for (std::size_t p = 0; p < check.size(); ++p)
            check[p] += cof[i] * gb.generators[i][p];
    for (std::size_t p = 0; p < check.size(); ++p)
        if (check[p] != f[p].lifted(gb.ring)) throw error("division identity violated");

    return {std::move(red.v), std::move(cof)};
}

std::vector<MultiPoly> cofactors_on_input(const DivisionRecord& rec, const GroebnerBasis& gb) {
    std::vector<MultiPoly> out(gb.n_input, MultiPoly::zero(gb.ring));
    for (std::size_t i = 0; i < rec.cofactors.size(); ++i) {
        if (rec.cofactors[i].is_zero()) continue;
        for (std::size_t j = 0; j < gb.n_input; ++j) out[j] += rec.cofactors[i] * gb.transform[i][j];
    }
    return out;
}

std::vector<ModuleElem> syzygy_basis(const std::vector<std::vector<MultiPoly>>& m,
                                     const RingPtr& ring, const MonomialOrder& order) {
    std::size_t rows = m.size();
    std::size_t cols = rows == 0 ? 0 : m[0].size();
    for (const auto& row : m) {
        assert(row.size() == cols);
        (void)row;
    }
    if (cols == 0) return {};

    std::vector<ModuleElem> result;
    if (rows == 0) {
        for (std::size_t j = 0; j < cols; ++j) {
            ModuleElem v = module_zero(ring, static_cast<int>(cols));
            v[j] = MultiPoly::constant(ring, Rational(1));
            result.push_back(std::move(v));
        }
        return result;
    }

    // Graph construction: generators (m_j, e_j) in R^{rows+cols}; with the
    // position-over-term order the first block is eliminated, so basis
    // elements supported in the second block generate the kernel.
    std::vector<ModuleElem> gens;
    for (std::size_t j = 0; j < cols; ++j) {
        ModuleElem v = module_zero(ring, static_cast<int>(rows + cols));
        for (std::size_t i = 0; i < rows; ++i) v[i] = m[i][j];
        v[rows + j] = MultiPoly::constant(ring, Rational(1));
        gens.push_back(std::move(v));
    }
    GroebnerBasis gb = buchberger(gens, order);
    for (const auto& g : gb.generators) {
        bool first_block_zero = true;
        for (std::size_t i = 0; i < rows && first_block_zero; ++i)
            if (!g[i].is_zero()) first_block_zero = false;
        if (!first_block_zero) continue;
        ModuleElem v(g.begin() + static_cast<long>(rows), g.end());
        result.push_back(std::move(v));
    }

    // Exact kernel membership check.
    for (const auto& v : result) {
        for (std::size_t i = 0; i < rows; ++i) {
            MultiPoly acc(ring);
            for (std::size_t j = 0; j < cols; ++j) acc += m[i][j].lifted(ring) * v[j];
            if (!acc.is_zero()) throw error("syzygy element fails kernel membership");
        }
    }
    return result;
}

std::optional<std::vector<std::pair<int, Monomial>>> standard_monomials(const GroebnerBasis& gb) {
    int n = gb.ring->nvars();
    std::vector<std::pair<int, Monomial>> out;
    for (int pos = 0; pos < gb.rank; ++pos) {
        std::vector<const Monomial*> leads;
        for (std::size_t i = 0; i < gb.leads.size(); ++i)
            if (gb.leads[i].pos == pos) leads.push_back(&gb.leads[i].mon);

        bool unit = false;
        for (const auto* m : leads)
            if (m->is_one()) unit = true;
        if (unit) continue;

        if (n == 0) {
            out.emplace_back(pos, Monomial(0));
            continue;
        }
        // Finiteness: every variable must appear as a pure power among the
        // leads of this position.
        std::vector<int> bound(static_cast<std::size_t>(n), -1);
        for (const auto* m : leads) {
            int which = -1;
            bool pure = true;
            for (int i = 0; i < n && pure; ++i) {
                if (m->e[static_cast<std::size_t>(i)] == 0) continue;
                if (which >= 0)
                    pure = false;
                else
                    which = i;
            }
            if (pure && which >= 0) {
                int& b = bound[static_cast<std::size_t>(which)];
                int e = m->e[static_cast<std::size_t>(which)];
                if (b < 0 || e < b) b = e;
            }
        }
        for (int i = 0; i < n; ++i)
            if (bound[static_cast<std::size_t>(i)] < 0) return std::nullopt;

        // Enumerate the finite box under the staircase.
        Monomial cur(n);
        auto rec = [&](auto&& self, int var) -> void {
            if (var == n) {
                for (const auto* m : leads)
                    if (m->divides(cur)) return;
                out.emplace_back(pos, cur);
                return;
            }
            for (int e = 0; e < bound[static_cast<std::size_t>(var)]; ++e) {
                cur.e[static_cast<std::size_t>(var)] = e;
                self(self, var + 1);
            }
            cur.e[static_cast<std::size_t>(var)] = 0;
        };
        rec(rec, 0);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        if (a.second.total_degree() != b.second.total_degree())
            return a.second.total_degree() < b.second.total_degree();
        return a.second < b.second;
    });
    return out;
}

std::optional<long> quotient_dim(const GroebnerBasis& gb) {
    auto mons = standard_monomials(gb);
    if (!mons) return std::nullopt;
    return static_cast<long>(mons->size());
}

}  // namespace mfhrr
