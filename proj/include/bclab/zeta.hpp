#ifndef BCLAB_ZETA_HPP
#define BCLAB_ZETA_HPP

#include <string>
#include <vector>

#include "bclab/bigfloat.hpp"
#include "bclab/class_group.hpp"

namespace bclab {

/* Truncated ideal-norm Dirichlet series with exact bookkeeping: each distinct
   norm power n^(-beta) is rounded once to `precision` bits, and `value` is
   the exact rational sum of those dyadic terms. Any regrouping of the same
   truncation therefore agrees bit for bit. `tail_bound` is a rigorous upper
   bound (all roundings upward) on the neglected remainder of the full
   series. */
struct ZetaSum {
    Rat value = 0;
    Rat tail_bound = 0;
    long ideal_count = 0;
};

ZetaSum dedekind_zeta(const QuadField& F, const Rat& beta, long cutoff, long precision);

/* The same truncation restricted to ideals in one narrow class (an index
   into narrow_class_group(F).reps). Summing over all classes reproduces
   dedekind_zeta exactly. */
ZetaSum partial_zeta(const QuadField& F, int cls, const Rat& beta, long cutoff, long precision);

/* Truncated series of the field at beta divided by the rational one at
   2*beta: the scale factor that appears when the rational subsystem is
   induced up to the field. */
struct InducedRatio {
    ZetaSum field_sum;
    ZetaSum rational_sum;
    Rat ratio = 0;
};
InducedRatio induced_ratio(const QuadField& F, const Rat& beta, long cutoff, long precision);

/* Exact Euler factors of zeta_K(beta) / zeta_Q(2*beta) at integer beta >= 1:
   split (1+p^-b)/(1-p^-b), inert 1, ramified 1+p^-b; over the rationals
   every prime contributes 1+p^-b. At beta = 1 the running product grows
   without bound exactly because split factors keep occurring. */
struct DivergenceFactor {
    long p = 0;
    std::string kind;  // "split", "inert", "ramified", or "rational"
    Rat factor = 1;
};
std::vector<DivergenceFactor> divergence_factors(const QuadField& F, long bound, long beta = 1);
Rat divergence_product(const QuadField& F, long bound, long beta = 1);

/* F(beta) = (1 - prod_i x_i^(-s_i beta)) / prod_i (1 - x_i^(-beta)) for
   x_i >= 2, s_i >= 1; positive, tends to 1, and non-increasing on beta > 0. */
double monotone_factor_value(const std::vector<long>& xs, const std::vector<long>& ss,
                             const Rat& beta, long precision);

/* Largest increase of F between adjacent points of a uniform `points`-grid
   on [lo, hi]; at most rounding noise above zero. */
double monotone_factor_max_increase(const std::vector<long>& xs, const std::vector<long>& ss,
                                    const Rat& lo, const Rat& hi, int points, long precision);

/* terms[n] = n^-beta rounded once to `precision` bits (exact dyadic) for
   every n with counts[n] != 0; the term unit shared by all truncated sums. */
std::vector<Rat> power_terms(const std::vector<long>& counts, const Rat& beta, long precision);

/* Worker threads from the BCLAB_THREADS environment variable, clamped to
   [1, 16]. Results never depend on it. */
int worker_threads();

}  // namespace bclab

#endif
