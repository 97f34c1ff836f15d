#ifndef BCLAB_TESTS_SUPPORT_ORACLES_HPP
#define BCLAB_TESTS_SUPPORT_ORACLES_HPP

#include <map>

#include "bclab/hecke.hpp"

namespace testsupport {

/* Deterministic 64-bit LCG so test data never depends on platform RNGs. */
struct Lcg {
    unsigned long long state;
    explicit Lcg(unsigned long long seed) : state(seed) {}
    unsigned long long next() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return state >> 11;
    }
    long range(long lo, long hi) {  // inclusive bounds
        return lo + static_cast<long>(next() % static_cast<unsigned long long>(hi - lo + 1));
    }
    bclab::Rat rat(long span, long maxden) {
        return bclab::make_rat(bclab::Int(range(-span, span)), bclab::Int(range(1, maxden)));
    }
};

/* Product of two double-coset indicators computed by brute-force pair
   counting over one-sided representatives, with the constancy of the count
   across each double coset checked on the way. Keys are canonical
   double-coset members. */
std::map<bclab::AffineElement, long, bclab::AffineLess> convolve_pair_counting(
    const bclab::AffineElement& a, const bclab::AffineElement& b);

}  // namespace testsupport

#endif
