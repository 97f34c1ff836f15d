#include "bclab/hecke.hpp"

#include <deque>
#include <set>
#include <stdexcept>

namespace bclab {

namespace {

void check_same_field(const QuadField& a, const QuadField& b) {
    if (a != b) throw std::invalid_argument("field mismatch");
}

/* Generators of the subgroup O x| O^*_+: integral translations and, for a
   quadratic field, the generator of its totally positive units (the full
   torsion group when imaginary, the fundamental totally positive unit when
   real; trivial over the rationals). */
std::vector<AffineElement> subgroup_generators(const QuadField& F) {
    FieldElement one = element_one(F), zero = element_zero(F);
    std::vector<AffineElement> gens = {{one, one}, {-one, one}};
    if (!F.is_rational()) {
        FieldElement w = element_w(F);
        gens.push_back({w, one});
        gens.push_back({-w, one});
        const UnitInfo& ui = unit_info(F);
        FieldElement u = F.is_imaginary() ? ui.torsion_gen : ui.eps_plus;
        gens.push_back({zero, u});
        gens.push_back({zero, u.inverse()});
    }
    return gens;
}

/* Totally positive units act on residues modulo an ideal they preserve; the
   orbit is finite. Returns its lexicographically least member. */
FieldElement least_unit_orbit_residue(const FieldElement& r0, const Ideal& I) {
    const QuadField& F = r0.field();
    if (F.is_rational()) return r0;
    const UnitInfo& ui = unit_info(F);
    FieldElement best = r0, r = r0;
    if (F.is_imaginary()) {
        for (long k = 1; k < ui.torsion; ++k) {
            r = residue_mod(ui.torsion_gen * r, I);
            if (r.cmp(best) < 0) best = r;
        }
        return best;
    }
    for (long guard = 0;; ++guard) {
        r = residue_mod(ui.eps_plus * r, I);
        if (r == r0) return best;
        if (r.cmp(best) < 0) best = r;
        if (guard > 4000000) throw internal_check_error("unit orbit on residues did not close");
    }
}

std::vector<AffineElement> coset_bfs(const AffineElement& g,
                                     AffineElement (*key)(const AffineElement&), bool right_side) {
    const QuadField& F = g.x.field();
    std::vector<AffineElement> gens = subgroup_generators(F);
    std::set<AffineElement, AffineLess> seen;
    std::deque<AffineElement> frontier;
    auto push = [&](const AffineElement& h) {
        AffineElement k = key(h);
        if (seen.insert(k).second) frontier.push_back(k);
    };
    push(g);
    while (!frontier.empty()) {
        AffineElement h = frontier.front();
        frontier.pop_front();
        for (const AffineElement& s : gens) push(right_side ? mul(h, s) : mul(s, h));
        if (seen.size() > 2000000) throw internal_check_error("coset enumeration exploded");
    }
    return {seen.begin(), seen.end()};
}

}  // namespace

AffineElement affine(const FieldElement& y, const FieldElement& x) {
    check_same_field(y.field(), x.field());
    if (!is_totally_positive(x)) throw std::invalid_argument("scale part must be totally positive");
    return {y, x};
}

AffineElement affine_identity(const QuadField& F) {
    return {element_zero(F), element_one(F)};
}

AffineElement mul(const AffineElement& g, const AffineElement& h) {
    check_same_field(g.x.field(), h.x.field());
    return {g.y + g.x * h.y, g.x * h.x};
}

AffineElement inverse(const AffineElement& g) {
    FieldElement xi = g.x.inverse();
    return {-(xi * g.y), xi};
}

AffineElement left_coset_key(const AffineElement& g) {
    FieldElement w = canonical_tp_associate(g.x);
    FieldElement z = residue_mod(g.y, principal_ideal(g.x));
    return {z, w};
}

AffineElement right_coset_key(const AffineElement& g) {
    FieldElement u;
    FieldElement w = canonical_tp_associate(g.x, &u);
    FieldElement z = residue_mod(u * g.y, ideal_one(g.x.field()));
    return {z, w};
}

AffineElement double_coset_key(const AffineElement& g) {
    const QuadField& F = g.x.field();
    FieldElement w = canonical_tp_associate(g.x);
    Ideal I = add(ideal_one(F), principal_ideal(g.x));  // translation reach O + xO
    FieldElement z = least_unit_orbit_residue(residue_mod(g.y, I), I);
    return {z, w};
}

std::vector<AffineElement> left_reps(const AffineElement& g) {
    return coset_bfs(g, left_coset_key, false);
}

std::vector<AffineElement> right_reps(const AffineElement& g) {
    return coset_bfs(g, right_coset_key, true);
}

Rat hecke_delta(const AffineElement& g) {
    return make_rat(Int(right_reps(g).size()), Int(left_reps(g).size()));
}

HeckeFunction hecke_zero(const QuadField& F) { return {F, {}}; }

HeckeFunction hecke_basis(const AffineElement& g) {
    HeckeFunction f{g.x.field(), {}};
    f.terms.emplace(double_coset_key(g), ExactComplex(Rat(1)));
    return f;
}

void hecke_add(HeckeFunction& f, const AffineElement& g, const ExactComplex& c) {
    check_same_field(f.F, g.x.field());
    AffineElement k = double_coset_key(g);
    auto it = f.terms.find(k);
    if (it == f.terms.end()) {
        if (!c.is_zero()) f.terms.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) f.terms.erase(it);
}

ExactComplex hecke_value(const HeckeFunction& f, const AffineElement& g) {
    auto it = f.terms.find(double_coset_key(g));
    return it == f.terms.end() ? ExactComplex() : it->second;
}

HeckeFunction convolve(const HeckeFunction& f1, const HeckeFunction& f2) {
    check_same_field(f1.F, f2.F);
    HeckeFunction out{f1.F, {}};

    std::vector<std::pair<AffineElement, ExactComplex>> rights;
    for (const auto& [b, c2] : f2.terms)
        for (const AffineElement& h : right_reps(b)) rights.emplace_back(h, c2);

    // The support of the product lies among the double cosets of a * b_j with
    // b_j running over one-sided representatives of each factor of f2.
    std::set<AffineElement, AffineLess> candidates;
    for (const auto& [a, ca] : f1.terms) {
        (void)ca;
        for (const auto& [b, cb] : f2.terms) {
            (void)cb;
            for (const AffineElement& bj : left_reps(b)) candidates.insert(double_coset_key(mul(a, bj)));
        }
    }

    for (const AffineElement& c : candidates) {
        ExactComplex v;
        for (const auto& [h, c2] : rights) v += hecke_value(f1, mul(c, inverse(h))) * c2;
        if (!v.is_zero()) out.terms.emplace(c, v);
    }
    return out;
}

HeckeFunction star(const HeckeFunction& f) {
    HeckeFunction out{f.F, {}};
    for (const auto& [k, c] : f.terms) hecke_add(out, inverse(k), c.conj());
    return out;
}

}  // namespace bclab
