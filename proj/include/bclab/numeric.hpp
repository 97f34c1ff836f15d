#ifndef BCLAB_NUMERIC_HPP
#define BCLAB_NUMERIC_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bclab {

using Int = mpz_class;
using Rat = mpq_class;

/* Thrown when an internal cross-check fails (a "must abort loudly" condition).
   The CLI maps it to exit code 3. */
struct internal_check_error : std::logic_error {
    using std::logic_error::logic_error;
};

/* Floor of sqrt(n); n must be >= 0. */
Int isqrt(const Int& n);

/* True iff n is a perfect square; if so and root != nullptr, *root = sqrt(n). */
bool is_square(const Int& n, Int* root = nullptr);

/* Floor of the real cube root of n (n may be negative). */
Int icbrt(const Int& n);

/* Kronecker symbol (a|n), defined for all integers. */
int kronecker(const Int& a, const Int& n);

/* d = gcd(a, b) = s*a + t*b. */
void xgcd(const Int& a, const Int& b, Int& d, Int& s, Int& t);

/* Primes <= n in increasing order. */
std::vector<long> primes_up_to(long n);

/* True iff n is squarefree. Complete for |n| <= 10^12 (trial division to 1e6
   plus a perfect-square cofactor test); larger inputs are rejected upstream. */
bool is_squarefree(const Int& n);

/* x with x*x = a (mod p), p an odd prime and (a|p) = 1. Tonelli-Shanks. */
Int sqrt_mod_prime(const Int& a, const Int& p);

/* Floor division helpers: quotient and remainder with 0 <= r < |b|. */
Int fdiv_q(const Int& a, const Int& b);
Int fdiv_r(const Int& a, const Int& b);

/* Floor of a rational. */
Int rat_floor(const Rat& q);

/* Canonicalized num/den; mpq_class's two-argument constructor does not
   canonicalize on its own. */
Rat make_rat(const Int& num, const Int& den);

/* Parse "p/q", "p", or a plain decimal like "0.25" / "-1.5" into an exact
   rational. Throws std::invalid_argument on malformed input. */
Rat parse_rational(const std::string& s);

/* Canonical "p/q" (or "p" when q = 1). */
std::string rat_to_string(const Rat& q);

/* Deterministic comparison key order for rationals. */
int rat_cmp(const Rat& a, const Rat& b);

}  // namespace bclab

#endif
