#ifndef BCLAB_IDEAL_HPP
#define BCLAB_IDEAL_HPP

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "bclab/quad_field.hpp"

namespace bclab {

/* Fractional ideal of the maximal order, stored as (1/denom) times the
   Z-module with Hermite basis { a, b + c*w }:
     a > 0, c > 0, c | a, c | b, 0 <= b < a, ac | N(b + c*w), denom > 0,
     gcd(c, denom) = 1.
   For the rational field the module is a*Z, normalized to b = 0, c = a,
   gcd(a, denom) = 1. The representation is unique per ideal. */
struct Ideal {
    QuadField F;
    Int a = 1, b = 0, c = 1;
    Int denom = 1;

    bool is_integral() const { return denom == 1; }
    Int norm_integral() const;  // requires denom == 1
    Rat norm() const;
    Ideal conj() const;
    bool contains(const FieldElement& x) const;

    friend bool operator==(const Ideal& x, const Ideal& y) {
        return x.F.d == y.F.d && x.a == y.a && x.b == y.b && x.c == y.c && x.denom == y.denom;
    }
    friend bool operator!=(const Ideal& x, const Ideal& y) { return !(x == y); }

    /* Order by (norm, a, b, c, denom); total within one field. */
    int cmp(const Ideal& o) const;
    bool operator<(const Ideal& o) const { return cmp(o) < 0; }
};

/* Validating constructor; throws std::invalid_argument if (a, b, c, denom)
   violates the representation invariants above. */
Ideal make_ideal(const QuadField& F, const Int& a, const Int& b, const Int& c,
                 const Int& denom = 1);

Ideal ideal_one(const QuadField& F);

/* Smallest O-module containing the given nonzero generators. */
Ideal ideal_from_generators(const QuadField& F, const std::vector<FieldElement>& gens);
Ideal principal_ideal(const FieldElement& x);

Ideal mul(const Ideal& I, const Ideal& J);
Ideal mul(const FieldElement& x, const Ideal& I);
Ideal inverse(const Ideal& I);
Ideal add(const Ideal& I, const Ideal& J);        // smallest ideal containing both
Ideal intersect(const Ideal& I, const Ideal& J);  // I*J / (I + J)

/* Canonical representative of y + I inside the fundamental box of I's
   lattice; exact, and zero iff y lies in I. */
FieldElement residue_mod(const FieldElement& y, const Ideal& I);

enum class PrimeType { split, inert, ramified };

struct PrimeSplit {
    PrimeType type;
    Ideal first;   // norm p (split/ramified) or p^2 (inert)
    Ideal second;  // conjugate prime, split case only; otherwise == first
};

/* Decomposition of the rational prime p in a quadratic field (d != 1). */
PrimeSplit split_prime(const QuadField& F, long p);

struct PrimeIdealInfo {
    Ideal P;
    long p = 0;  // rational prime below
    int f = 1;   // residue degree; norm(P) = p^f
};

/* Prime ideals of norm <= bound, sorted by (norm, basis). Rational field:
   the ideals (p). */
std::vector<PrimeIdealInfo> prime_ideals_up_to(const QuadField& F, long bound);

/* All integral ideals of norm <= bound. The streaming form visits each ideal
   once in a deterministic order with its exponent vector over `primes`
   (aligned with prime_ideals_up_to) and its norm. */
void enumerate_ideals_stream(
    const QuadField& F, long bound,
    const std::function<void(const Ideal&, const Int& norm, const std::vector<int>& exps)>& visit);
std::vector<Ideal> enumerate_ideals(const QuadField& F, long bound);  // sorted

/* Generator search. wide: any single generator; tp: totally positive
   generator. Returns a canonical choice (unit-orbit normalized) or nullopt
   when no such generator exists. Exact. */
std::optional<FieldElement> wide_principal_generator(const Ideal& I);
std::optional<FieldElement> tp_principal_generator(const Ideal& I);

/* Unit-orbit canonical forms used by the generator search and by coset
   labeling: orbit of x under the totally positive units (tp) or all units
   (wide); returns the canonical orbit member and the unit u with
   canonical = u * x. */
FieldElement canonical_tp_associate(const FieldElement& x, FieldElement* unit_out = nullptr);

}  // namespace bclab

#endif
