#include "bclab/bigfloat.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace bclab {

BigFloat::BigFloat(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

void BigFloat::set(const Rat& q, mpfr_rnd_t rnd) { mpfr_set_q(v_, q.get_mpq_t(), rnd); }
void BigFloat::set(const Int& z, mpfr_rnd_t rnd) { mpfr_set_z(v_, z.get_mpz_t(), rnd); }
void BigFloat::set_ui(unsigned long u) { mpfr_set_ui(v_, u, MPFR_RNDN); }

BigFloat BigFloat::from_rat(const Rat& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    r.set(q, rnd);
    return r;
}

void BigFloat::set_pow_neg(unsigned long n, const BigFloat& beta, mpfr_rnd_t rnd) {
    BigFloat nb(mpfr_get_prec(beta.v_) + 64);
    mpfr_neg(nb.v_, beta.v_, MPFR_RNDN);
    mpfr_ui_pow(v_, n, nb.v_, rnd);
}

BigFloat BigFloat::add(const BigFloat& o, mpfr_rnd_t rnd) const {
    BigFloat r(std::max(precision(), o.precision()));
    mpfr_add(r.v_, v_, o.v_, rnd);
    return r;
}

BigFloat BigFloat::sub(const BigFloat& o, mpfr_rnd_t rnd) const {
    BigFloat r(std::max(precision(), o.precision()));
    mpfr_sub(r.v_, v_, o.v_, rnd);
    return r;
}

BigFloat BigFloat::mul(const BigFloat& o, mpfr_rnd_t rnd) const {
    BigFloat r(std::max(precision(), o.precision()));
    mpfr_mul(r.v_, v_, o.v_, rnd);
    return r;
}

BigFloat BigFloat::div(const BigFloat& o, mpfr_rnd_t rnd) const {
    BigFloat r(std::max(precision(), o.precision()));
    mpfr_div(r.v_, v_, o.v_, rnd);
    return r;
}

Rat BigFloat::to_rat_exact() const {
    if (mpfr_zero_p(v_)) return Rat(0);
    if (!mpfr_number_p(v_)) throw internal_check_error("non-finite value in exact conversion");
    Int m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    Rat r(m);
    if (e >= 0) {
        Int p2 = Int(1) << static_cast<unsigned long>(e);
        r *= Rat(p2);
    } else {
        Int p2 = Int(1) << static_cast<unsigned long>(-e);
        r /= Rat(p2);
    }
    r.canonicalize();
    return r;
}

std::string BigFloat::to_decimal(int digits) const {
    if (digits < 1) digits = 1;
    std::vector<char> buf(static_cast<size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*R*g", digits, MPFR_RNDN, v_);
    return std::string(buf.data());
}

mpfr_prec_t working_bits(int digits) {
    /* > digits * log2(10) with generous slack for accumulated rounding. */
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873626)) + 64;
}

std::string rat_to_decimal(const Rat& q, int digits) {
    /* One rounding only: convert at enough precision that the binary->decimal
       step is the sole source of error, then print. */
    mpfr_prec_t prec = working_bits(digits + 4);
    BigFloat f = BigFloat::from_rat(q, prec, MPFR_RNDN);
    return f.to_decimal(digits);
}

}  // namespace bclab
