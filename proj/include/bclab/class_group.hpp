#ifndef BCLAB_CLASS_GROUP_HPP
#define BCLAB_CLASS_GROUP_HPP

#include <vector>

#include "bclab/ideal.hpp"

namespace bclab {

/* Ideal class group, either in the narrow sense (classes modulo principal
   ideals with a totally positive generator) or the wide sense (any
   generator). Representatives are the first members of each class in the
   (norm, basis) ordering of integral ideals, so reps[0] is the full order and
   indexes the identity class. */
struct ClassGroup {
    QuadField F;
    bool narrow = true;
    std::vector<Ideal> reps;
    std::vector<std::vector<int>> table;  // table[i][j] = index of class i * class j
    std::vector<long> invariants;         // cyclic factors, each dividing the next; {} = trivial

    long order() const { return static_cast<long>(reps.size()); }
    int mul_class(int i, int j) const { return table[i][j]; }
    int pow_class(int i, long e) const;
    int inverse_class(int i) const;

    bool equivalent(const Ideal& I, const Ideal& J) const;
    int class_of(const Ideal& I) const;  // throws internal_check_error if unmatched
};

const ClassGroup& narrow_class_group(const QuadField& F);
const ClassGroup& wide_class_group(const QuadField& F);

/* Cyclic invariant factors (each dividing the next) of a finite abelian group
   given by its multiplication table with identity at index 0. */
std::vector<long> abelian_invariants(const std::vector<std::vector<int>>& table);

}  // namespace bclab

#endif
