#include "mfhrr/milnor.hpp"

#include <cassert>

#include "mfhrr/errors.hpp"

namespace mfhrr {

namespace {

MultiPoly poly_matrix_det(const std::vector<std::vector<MultiPoly>>& m, const RingPtr& ring) {
    std::size_t n = m.size();
    if (n == 0) return MultiPoly::constant(ring, Rational(1));
    std::vector<int> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = static_cast<int>(j);
    auto rec = [&](auto&& self, std::size_t row, std::vector<int>& cs) -> MultiPoly {
        if (cs.empty()) return MultiPoly::constant(ring, Rational(1));
        MultiPoly acc(ring);
        for (std::size_t k = 0; k < cs.size(); ++k) {
            const MultiPoly& entry = m[row][static_cast<std::size_t>(cs[k])];
            if (entry.is_zero()) continue;
            std::vector<int> rest;
            for (std::size_t t = 0; t < cs.size(); ++t)
                if (t != k) rest.push_back(cs[t]);
            MultiPoly prod = entry * self(self, row + 1, rest);
            if (k % 2 == 1) prod = -prod;
            acc += prod;
        }
        return acc;
    };
    return rec(rec, 0, cols);
}

}  // namespace

MilnorRing milnor_ring(const MultiPoly& w) {
    if (w.is_constant()) throw error("milnor_ring: w is constant");
    MilnorRing mr;
    mr.ring = w.ring();
    mr.w = w;
    int n = mr.ring->nvars();
    std::vector<ModuleElem> gens;
    for (int i = 0; i < n; ++i) {
        mr.jacobian.push_back(partial_derivative(w, i));
        gens.push_back({mr.jacobian.back()});
    }
    bool all_zero = true;
    for (const auto& p : mr.jacobian)
        if (!p.is_zero()) all_zero = false;
    if (all_zero) throw non_isolated_error("milnor_ring: all partials vanish");

    mr.jacobian_gb = buchberger(gens, MonomialOrder::degrevlex());
    auto mons = standard_monomials(mr.jacobian_gb);
    if (!mons)
        throw non_isolated_error("milnor_ring: Jacobian quotient is infinite-dimensional (critical point not isolated)");
    mr.basis.reserve(mons->size());
    for (auto& [pos, m] : *mons) mr.basis.push_back(m);
    mr.mu = static_cast<long>(mr.basis.size());
    mr.weights = quasi_homogeneous_weights(w);
    try {
        mr.residue_data = variable_power_membership(mr);
    } catch (const error&) {
        // Critical locus not concentrated at the origin; Milnor data is still
        // usable, the residue functional is not.
        mr.residue_data = std::nullopt;
    }
    return mr;
}

ResidueData variable_power_membership(const MilnorRing& mr) {
    int n = mr.ring->nvars();
    std::vector<int> powers;
    for (int i = 0; i < n; ++i) {
        bool found = false;
        // mu is finite, so some power of each variable lies in the ideal;
        // search upward from 1. The basis bounds the search: x_i^{mu+1} must
        // already reduce to zero.
        for (int p = 1; p <= static_cast<int>(mr.mu) + 1 && !found; ++p) {
            ModuleElem f{MultiPoly::variable(mr.ring, i, p)};
            DivisionRecord rec = normal_form_with_cofactors(f, mr.jacobian_gb);
            if (module_is_zero(rec.remainder)) {
                powers.push_back(p);
                found = true;
            }
        }
        if (!found)
            throw error(
                "variable power membership search failed; no pure power of x_" +
                std::to_string(i + 1) +
                " lies in the Jacobian ideal (critical locus not concentrated at the origin?)");
    }
    return membership_with_powers(mr, powers);
}

ResidueData membership_with_powers(const MilnorRing& mr, const std::vector<int>& powers) {
    int n = mr.ring->nvars();
    assert(static_cast<int>(powers.size()) == n);
    ResidueData rd;
    rd.powers = powers;
    for (int i = 0; i < n; ++i) {
        ModuleElem f{MultiPoly::variable(mr.ring, i, powers[static_cast<std::size_t>(i)])};
        DivisionRecord rec = normal_form_with_cofactors(f, mr.jacobian_gb);
        if (!module_is_zero(rec.remainder))
            throw error("membership_with_powers: power not in the Jacobian ideal");
        std::vector<MultiPoly> row = cofactors_on_input(rec, mr.jacobian_gb);
        // Re-verify the membership identity exactly.
        MultiPoly check(mr.ring);
        for (int j = 0; j < n; ++j) check += row[static_cast<std::size_t>(j)] * mr.jacobian[static_cast<std::size_t>(j)];
        if (check != f[0]) throw error("membership identity violated");
        rd.cofactor_matrix.push_back(std::move(row));
    }
    rd.det_t = poly_matrix_det(rd.cofactor_matrix, mr.ring);
    return rd;
}

Rational residue_with(const MultiPoly& g, const MilnorRing& mr, const ResidueData& data) {
    // Transformation law: Res[g/(dw)] = Res[g det T/(x^N)], and the monomial
    // residue reads off one coefficient.
    MultiPoly h = g.lifted(mr.ring) * data.det_t;
    Monomial target(mr.ring->nvars());
    for (std::size_t i = 0; i < data.powers.size(); ++i) target.e[i] = data.powers[i] - 1;
    return h.coefficient(target);
}

Rational residue(const MultiPoly& g, const MilnorRing& mr) {
    if (!mr.residue_data)
        throw error("residue: no variable-power membership data (w is outside the local scope)");
    return residue_with(g, mr, *mr.residue_data);
}

MultiPoly milnor_normal_form(const MultiPoly& g, const MilnorRing& mr) {
    DivisionRecord rec = normal_form_with_cofactors({g.lifted(mr.ring)}, mr.jacobian_gb);
    return rec.remainder[0];
}

QMatrix residue_pairing_matrix(const MilnorRing& mr) {
    std::size_t mu = mr.basis.size();
    QMatrix m(mu, QVec(mu));
    for (std::size_t a = 0; a < mu; ++a) {
        MultiPoly pa = MultiPoly::term(mr.ring, mr.basis[a], Rational(1));
        for (std::size_t b = a; b < mu; ++b) {
            MultiPoly pb = MultiPoly::term(mr.ring, mr.basis[b], Rational(1));
            m[a][b] = m[b][a] = residue(pa * pb, mr);
        }
    }
    return m;
}

}  // namespace mfhrr
