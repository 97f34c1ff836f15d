#pragma once

#include <utility>
#include <vector>

#include "bclab/numeric.hpp"

namespace bclab {

/* Finite group given by its multiplication table; element 0 is the identity.
   Validated on construction (Latin square, identity, associativity). */
struct FiniteGroup {
    int n = 1;
    std::vector<std::vector<int>> mul;  // mul[g][h]
    std::vector<int> inv;

    bool is_abelian() const;
};

FiniteGroup group_from_table(std::vector<std::vector<int>> table);
FiniteGroup cyclic_group(int n);
FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B);
FiniteGroup abelian_group(const std::vector<int>& factors);  // product of cyclics

/* Multiplicative group of residues mod m, identity (residue 1) first, the
   rest ascending; *residues receives the residue labels when non-null. */
FiniteGroup unit_group_mod(long m, std::vector<long>* residues = nullptr);

int element_order(const FiniteGroup& G, int g);

/* Invariant-factor lists d1 | d2 | ... | dk with product = order (the
   isomorphism types of abelian groups of that order; {} is the trivial
   group). */
std::vector<std::vector<int>> abelian_types(int order);

/* Subgroups as sorted element lists containing 0. */
std::vector<int> subgroup_closure(const FiniteGroup& G, std::vector<int> gens);
std::vector<std::vector<int>> all_subgroups(const FiniteGroup& G);
bool is_subgroup(const FiniteGroup& G, const std::vector<int>& H);

/* The subgroup H as a group in its own right; position k multiplies as the
   element H[k] does in G. H must be sorted and closed. */
FiniteGroup subgroup_group(const FiniteGroup& G, const std::vector<int>& H);

/* Left action of G on {0..m-1}: act[g][x] = g.x; validated on construction
   (identity row, act[g][act[h][x]] == act[gh][x]). */
struct GroupAction {
    FiniteGroup G;
    int m = 0;
    std::vector<std::vector<int>> act;
};

GroupAction make_action(FiniteGroup G, std::vector<std::vector<int>> act);

/* Every action of H on {0..m-1} (one per homomorphism into the symmetric
   group), enumerated through generator images; m <= 6. */
std::vector<GroupAction> all_actions(const FiniteGroup& H, int m);

/* Orbit id per point, ids dense from 0 in order of first appearance. */
std::vector<int> orbit_partition(const GroupAction& A);

/* System induced from a subgroup: points are classes of (g, x) under
   (g, x) ~ (g h^{-1}, h.x), G translating the first coordinate. The copy
   {[e, x]} of the original space is kept clopen-style as `clopen`, and every
   point records its canonical representative pair. */
struct InducedSystem {
    GroupAction induced;
    std::vector<int> clopen;                  // clopen[x] = point of [e, x]
    std::vector<std::pair<int, int>> label;   // canonical (g, x) per point
    std::vector<int> point_index;             // (g * m_orig + x) -> point
    int m_orig = 0;

    int point_of(int g, int x) const;
};

/* AX must be an action of subgroup_group(G, H). */
InducedSystem induce(const FiniteGroup& G, const std::vector<int>& H, const GroupAction& AX);

/* Translating the embedded copy returns to it exactly on H, and the return
   action is the original one — i.e. the transformation-groupoid corner over
   the copy is the original system. */
bool clopen_return_matches(const InducedSystem& S, const FiniteGroup& G,
                           const std::vector<int>& H, const GroupAction& AX);

/* Orbits of the induced action correspond one-to-one with the orbits of the
   original action through the embedded copy. */
bool orbits_correspond(const InducedSystem& S, const GroupAction& AX);

/* Every induced orbit meets the embedded copy. */
bool clopen_is_full(const InducedSystem& S);

/* The inversion (g, y) -> (g^{-1}, g.y) of the transformation groupoid is an
   involution, swaps source with target, and is anti-multiplicative. */
bool inversion_identities_hold(const GroupAction& A);

/* Folds a descending chain G = chain[0] >= chain[1] >= ... (subgroup element
   lists in G's coordinates, at most 16 stages, repeats allowed) over an
   action of the last stage, inducing one stage at a time. The result is
   checked exactly against the direct one-step induction through the
   canonical relabeling [g, [h, x]] -> [gh, x]. */
GroupAction induce_chain(const FiniteGroup& G, const std::vector<std::vector<int>>& chain,
                         const GroupAction& AX);

}  // namespace bclab
