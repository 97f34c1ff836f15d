#include "bclab/zeta.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace bclab {

int worker_threads() {
    const char* s = std::getenv("BCLAB_THREADS");
    if (s == nullptr) return 1;
    long v = std::strtol(s, nullptr, 10);
    return static_cast<int>(std::clamp(v, 1L, 16L));
}

namespace {

void validate_series_args(const Rat& beta, long cutoff, long precision) {
    if (beta <= 1) throw std::invalid_argument("series requires beta > 1");
    if (cutoff < 1) throw std::invalid_argument("cutoff must be positive");
    if (precision < 24 || precision > 8192) throw std::invalid_argument("precision out of range");
}

std::vector<long> ideal_counts(const QuadField& F, long cutoff) {
    std::vector<long> counts(cutoff + 1, 0);
    enumerate_ideals_stream(F, cutoff, [&](const Ideal&, const Int& nrm, const std::vector<int>&) {
        ++counts[nrm.get_si()];
    });
    return counts;
}

}  // namespace

/* terms[n] = once-rounded dyadic n^-beta wherever counts[n] != 0. The split
   across workers only parallelizes independent single roundings, so the
   result is identical for any thread count. */
std::vector<Rat> power_terms(const std::vector<long>& counts, const Rat& beta, long precision) {
    long cutoff = static_cast<long>(counts.size()) - 1;
    std::vector<Rat> terms(counts.size());
    auto work = [&](long lo, long hi) {  // [lo, hi)
        BigFloat b = BigFloat::from_rat(beta, precision + 64);
        BigFloat t(precision);
        for (long n = lo; n < hi; ++n) {
            if (counts[n] == 0) continue;
            t.set_pow_neg(static_cast<unsigned long>(n), b, MPFR_RNDN);
            terms[n] = t.to_rat_exact();
        }
    };
    int nthreads = worker_threads();
    if (nthreads <= 1 || cutoff < 512) {
        work(1, cutoff + 1);
        return terms;
    }
    std::vector<std::thread> pool;
    long chunk = cutoff / nthreads + 1;
    for (int k = 0; k < nthreads; ++k) {
        long lo = 1 + k * chunk;
        long hi = std::min(cutoff + 1, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
    return terms;
}

namespace {

/* Rigorous upper bound on sum_{n>N} a_n n^-beta where a_n = 1 over the
   rationals and a_n <= (number of divisors of n) in a quadratic field:
     rationals:  N^(1-beta) / (beta-1)
     quadratic:  N^(1-beta)/(beta-1) * (2^(beta-1)(1+ln N) + 1 + 1/(beta-1))
   All operations round upward (or downward for divisors), so the dyadic
   result really dominates the tail. */
Rat series_tail_bound(const QuadField& F, const Rat& beta, long N) {
    const mpfr_prec_t P = 128;
    BigFloat Nf(P);
    Nf.set_ui(static_cast<unsigned long>(N));
    BigFloat e_up = BigFloat::from_rat(1 - beta, P, MPFR_RNDU);
    BigFloat pw(P);
    mpfr_pow(pw.raw(), Nf.raw(), e_up.raw(), MPFR_RNDU);  // >= N^(1-beta) since N >= 1
    BigFloat bm1_down = BigFloat::from_rat(beta - 1, P, MPFR_RNDD);
    if (bm1_down.sign() <= 0) throw internal_check_error("tail bound lost beta - 1 > 0");
    BigFloat inv(P);
    mpfr_ui_div(inv.raw(), 1, bm1_down.raw(), MPFR_RNDU);  // >= 1/(beta-1)
    BigFloat base = pw.mul(inv, MPFR_RNDU);
    if (F.is_rational()) return base.to_rat_exact();

    BigFloat lnN(P);
    mpfr_log(lnN.raw(), Nf.raw(), MPFR_RNDU);
    BigFloat one(P);
    one.set_ui(1);
    BigFloat lnN1 = one.add(lnN, MPFR_RNDU);
    BigFloat bu = BigFloat::from_rat(beta - 1, P, MPFR_RNDU);
    BigFloat two(P);
    two.set_ui(2);
    BigFloat pow2(P);
    mpfr_pow(pow2.raw(), two.raw(), bu.raw(), MPFR_RNDU);
    BigFloat zb = one.add(inv, MPFR_RNDU);                      // >= zeta(beta)
    BigFloat factor = pow2.mul(lnN1, MPFR_RNDU).add(zb, MPFR_RNDU);
    return base.mul(factor, MPFR_RNDU).to_rat_exact();
}

ZetaSum sum_counts(const QuadField& F, const std::vector<long>& counts, const Rat& beta,
                   long cutoff, long precision) {
    std::vector<Rat> terms = power_terms(counts, beta, precision);
    ZetaSum out;
    for (long n = 1; n <= cutoff; ++n) {
        if (counts[n] == 0) continue;
        out.value += Rat(counts[n]) * terms[n];
        out.ideal_count += counts[n];
    }
    out.tail_bound = series_tail_bound(F, beta, cutoff);
    return out;
}

}  // namespace

ZetaSum dedekind_zeta(const QuadField& F, const Rat& beta, long cutoff, long precision) {
    validate_series_args(beta, cutoff, precision);
    return sum_counts(F, ideal_counts(F, cutoff), beta, cutoff, precision);
}

ZetaSum partial_zeta(const QuadField& F, int cls, const Rat& beta, long cutoff, long precision) {
    validate_series_args(beta, cutoff, precision);
    const ClassGroup& G = narrow_class_group(F);
    if (cls < 0 || cls >= G.order()) throw std::invalid_argument("class index out of range");

    std::vector<PrimeIdealInfo> primes = prime_ideals_up_to(F, cutoff);
    std::vector<int> pcls(primes.size());
    for (size_t i = 0; i < primes.size(); ++i) pcls[i] = G.class_of(primes[i].P);

    std::vector<long> counts(cutoff + 1, 0);
    enumerate_ideals_stream(
        F, cutoff, [&](const Ideal&, const Int& nrm, const std::vector<int>& exps) {
            int c = 0;
            for (size_t i = 0; i < exps.size(); ++i)
                if (exps[i] != 0) c = G.mul_class(c, G.pow_class(pcls[i], exps[i]));
            if (c == cls) ++counts[nrm.get_si()];
        });
    return sum_counts(F, counts, beta, cutoff, precision);
}

InducedRatio induced_ratio(const QuadField& F, const Rat& beta, long cutoff, long precision) {
    InducedRatio out;
    out.field_sum = dedekind_zeta(F, beta, cutoff, precision);
    out.rational_sum = dedekind_zeta(make_field(1), 2 * beta, cutoff, precision);
    out.ratio = out.field_sum.value / out.rational_sum.value;
    return out;
}

std::vector<DivergenceFactor> divergence_factors(const QuadField& F, long bound, long beta) {
    if (beta < 1) throw std::invalid_argument("integer beta >= 1 required");
    std::vector<DivergenceFactor> out;
    if (bound < 2) return out;
    for (long p : primes_up_to(bound)) {
        DivergenceFactor f;
        f.p = p;
        Int pb;
        mpz_ui_pow_ui(pb.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(beta));
        Rat x = make_rat(Int(1), pb);
        if (F.is_rational()) {
            f.kind = "rational";
            f.factor = 1 + x;
        } else {
            switch (split_prime(F, p).type) {
                case PrimeType::split:
                    f.kind = "split";
                    f.factor = (1 + x) / (1 - x);
                    break;
                case PrimeType::inert:
                    f.kind = "inert";
                    f.factor = 1;
                    break;
                case PrimeType::ramified:
                    f.kind = "ramified";
                    f.factor = 1 + x;
                    break;
            }
        }
        out.push_back(std::move(f));
    }
    return out;
}

Rat divergence_product(const QuadField& F, long bound, long beta) {
    Int num = 1, den = 1;
    for (const DivergenceFactor& f : divergence_factors(F, bound, beta)) {
        num *= f.factor.get_num();
        den *= f.factor.get_den();
    }
    return make_rat(num, den);
}

namespace {

unsigned long checked_power_base(long x, long s) {
    if (x < 2 || s < 1) throw std::invalid_argument("factors need x >= 2, s >= 1");
    unsigned long acc = 1;
    for (long k = 0; k < s; ++k) {
        if (acc > (1UL << 62) / static_cast<unsigned long>(x))
            throw std::invalid_argument("x^s too large");
        acc *= static_cast<unsigned long>(x);
    }
    return acc;
}

}  // namespace

double monotone_factor_value(const std::vector<long>& xs, const std::vector<long>& ss,
                             const Rat& beta, long precision) {
    if (xs.empty() || xs.size() != ss.size()) throw std::invalid_argument("mismatched factors");
    if (beta <= 0) throw std::invalid_argument("beta must be positive");
    if (precision < 24 || precision > 8192) throw std::invalid_argument("precision out of range");
    BigFloat b = BigFloat::from_rat(beta, precision + 64);
    BigFloat one(precision);
    one.set_ui(1);
    BigFloat joint(precision), den(precision), t(precision);
    joint.set_ui(1);
    den.set_ui(1);
    for (size_t i = 0; i < xs.size(); ++i) {
        t.set_pow_neg(checked_power_base(xs[i], ss[i]), b);
        joint = joint.mul(t);
        t.set_pow_neg(checked_power_base(xs[i], 1), b);
        den = den.mul(one.sub(t));
    }
    return one.sub(joint).div(den).to_double();
}

double monotone_factor_max_increase(const std::vector<long>& xs, const std::vector<long>& ss,
                                    const Rat& lo, const Rat& hi, int points, long precision) {
    if (points < 2 || lo <= 0 || hi <= lo) throw std::invalid_argument("bad grid");
    double prev = monotone_factor_value(xs, ss, lo, precision);
    double worst = 0;
    for (int k = 1; k < points; ++k) {
        Rat beta = lo + (hi - lo) * Rat(k) / Rat(points - 1);
        double v = monotone_factor_value(xs, ss, beta, precision);
        worst = std::max(worst, v - prev);
        prev = v;
    }
    return worst;
}

}  // namespace bclab
