#ifndef BCLAB_BIGFLOAT_HPP
#define BCLAB_BIGFLOAT_HPP

#include <mpfr.h>

#include <string>

#include "bclab/numeric.hpp"

namespace bclab {

/* Thin RAII wrapper over mpfr_t. Precision is fixed per value; operations
   round to the precision of the destination with the given mode. */
class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t prec = 192);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    void set(const Rat& q, mpfr_rnd_t rnd = MPFR_RNDN);
    void set(const Int& z, mpfr_rnd_t rnd = MPFR_RNDN);
    void set_ui(unsigned long u);

    static BigFloat from_rat(const Rat& q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);

    /* this = n^(-beta), correctly rounded once. n >= 1, beta arbitrary real. */
    void set_pow_neg(unsigned long n, const BigFloat& beta, mpfr_rnd_t rnd = MPFR_RNDN);

    BigFloat add(const BigFloat& o, mpfr_rnd_t rnd = MPFR_RNDN) const;
    BigFloat sub(const BigFloat& o, mpfr_rnd_t rnd = MPFR_RNDN) const;
    BigFloat mul(const BigFloat& o, mpfr_rnd_t rnd = MPFR_RNDN) const;
    BigFloat div(const BigFloat& o, mpfr_rnd_t rnd = MPFR_RNDN) const;

    int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /* Exact conversion: every finite mpfr value is a dyadic rational. */
    Rat to_rat_exact() const;

    /* Deterministic decimal rendering with the given significant digits. */
    std::string to_decimal(int digits) const;

  private:
    mpfr_t v_;
};

/* Decimal rendering of an exact rational, rounded once to `digits` significant
   digits (round-half-to-even via MPFR with sufficient working precision). */
std::string rat_to_decimal(const Rat& q, int digits);

/* Working precision (bits) used for term rounding at `digits` significant
   decimal digits. */
mpfr_prec_t working_bits(int digits);

}  // namespace bclab

#endif
