#pragma once

#include <vector>

#include "bclab/class_group.hpp"
#include "bclab/ideal.hpp"
#include "bclab/quad_field.hpp"

namespace bclab {

/* Finite level-m model of the equilibrium state space: residues mod m up to
   multiplication by totally positive units, each orbit stored as its least
   lift with coordinates in [0, m). */
struct LevelModel {
    QuadField F;
    long modulus = 2;
    std::vector<FieldElement> points;  // sorted canonical orbit lifts
};

LevelModel make_level_model(const QuadField& F, long modulus);

/* Index of the orbit of an integral element in M.points. */
int model_point_index(const LevelModel& M, const FieldElement& r);

/* Exact truncated Gibbs weights at level M.modulus, twisted by an integral
   ideal g: integral ideals a with norm <= cutoff in the narrow class of
   g^{-1} make g*a principal with a totally positive generator h, and each
   contributes the once-rounded dyadic N(a)^-beta at the orbit of h mod m.
   weights[] divides through by the same truncated partition sum, so the
   weights always total exactly 1. */
struct KmsWeights {
    std::vector<Rat> weights;
    Rat partition = 0;     // truncated partition sum (exact dyadic total)
    long ideal_count = 0;  // contributing ideals
};

KmsWeights kms_weights(const LevelModel& M, const Ideal& g, const Rat& beta, long cutoff,
                       long precision);

/* Quasi-invariance check for the untwisted weights: the mass carried by the
   h-scaled copy of a set of model points (ideals whose generator is h times
   something landing in the set) against N(h)^-beta times the set's own mass,
   both truncated at `cutoff`; returns the relative deviation, which tends to
   0 as the cutoff grows. h must be integral and totally positive. */
Rat measure_scaling_deviation(const LevelModel& M, const FieldElement& h,
                              const std::vector<int>& point_set, const Rat& beta, long cutoff,
                              long precision);

/* Exact truncated mass sum_{N(a) <= cutoff} N(a)^-beta over all integral
   ideals, defined for any beta >= 0 (the truncation is a finite sum; only
   the full series needs beta > 1). */
Rat partition_mass(const QuadField& F, const Rat& beta, long cutoff, long precision);

}  // namespace bclab
