#include "bclab/kms.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "bclab/bigfloat.hpp"
#include "bclab/zeta.hpp"

namespace bclab {

namespace {

void validate_sum_args(const Rat& beta, long cutoff, long precision) {
    if (cutoff < 1) throw std::invalid_argument("cutoff must be positive");
    if (precision < 24 || precision > 8192) throw std::invalid_argument("precision out of range");
    if (beta <= 1) throw std::invalid_argument("weights require beta > 1");
}

/* Coordinates of an integral element reduced into [0, m)^2. */
FieldElement reduce_mod(const FieldElement& x, long m) {
    if (!x.is_integral()) throw std::invalid_argument("model points come from integral elements");
    Int ra = fdiv_r(x.a().get_num(), Int(m));
    Int rb = fdiv_r(x.b().get_num(), Int(m));
    return FieldElement(x.field(), Rat(ra), Rat(rb));
}

/* Least lift in the orbit of a reduced residue under the totally positive
   units acting mod m. The acting group is cyclic (torsion for imaginary,
   powers of eps_plus for real, trivial for Q), so iterating one generator
   until the cycle closes covers the whole orbit. */
FieldElement orbit_least(const FieldElement& r0, long m) {
    const QuadField& F = r0.field();
    if (F.is_rational()) return r0;
    const UnitInfo& ui = unit_info(F);
    const FieldElement& u = F.is_imaginary() ? ui.torsion_gen : ui.eps_plus;
    FieldElement best = r0;
    FieldElement r = r0;
    long guard = 4 * m * m + 16;
    while (guard-- > 0) {
        r = reduce_mod(u * r, m);
        if (r.cmp(r0) == 0) return best;
        if (r.cmp(best) < 0) best = r;
    }
    throw internal_check_error("unit orbit mod m failed to close");
}

bool point_less(const FieldElement& x, const FieldElement& y) { return x.cmp(y) < 0; }

/* Once-rounded dyadic n^-beta, the same rounding pipeline as power_terms. */
Rat single_power_term(unsigned long n, const Rat& beta, long precision) {
    BigFloat b = BigFloat::from_rat(beta, precision + 64);
    BigFloat t(precision);
    t.set_pow_neg(n, b, MPFR_RNDN);
    return t.to_rat_exact();
}

/* Streams every integral ideal of norm <= cutoff that has a totally positive
   generator, along with one such generator (exact element). Fields with a
   trivial narrow class group take a fast path through products of prime
   generators. */
void stream_tp_generated(const QuadField& F, long cutoff,
                         const std::function<void(const FieldElement&, long)>& visit) {
    std::vector<PrimeIdealInfo> primes = prime_ideals_up_to(F, cutoff);
    const ClassGroup& G = narrow_class_group(F);
    if (G.order() == 1) {
        std::vector<FieldElement> gens;
        gens.reserve(primes.size());
        for (const PrimeIdealInfo& pi : primes) {
            auto gp = tp_principal_generator(pi.P);
            if (!gp) throw internal_check_error("trivial narrow class but no prime generator");
            gens.push_back(*gp);
        }
        enumerate_ideals_stream(
            F, cutoff, [&](const Ideal&, const Int& nrm, const std::vector<int>& exps) {
                FieldElement gen = element_one(F);
                for (size_t i = 0; i < exps.size(); ++i)
                    for (int e = 0; e < exps[i]; ++e) gen = gen * gens[i];
                visit(gen, nrm.get_si());
            });
        return;
    }
    std::vector<int> pcls(primes.size());
    for (size_t i = 0; i < primes.size(); ++i) pcls[i] = G.class_of(primes[i].P);
    enumerate_ideals_stream(F, cutoff,
                            [&](const Ideal& I, const Int& nrm, const std::vector<int>& exps) {
                                int c = 0;
                                for (size_t i = 0; i < exps.size(); ++i)
                                    if (exps[i]) c = G.mul_class(c, G.pow_class(pcls[i], exps[i]));
                                if (c != 0) return;
                                auto gen = tp_principal_generator(I);
                                if (!gen)
                                    throw internal_check_error(
                                        "trivial narrow class without a generator");
                                visit(*gen, nrm.get_si());
                            });
}

}  // namespace

LevelModel make_level_model(const QuadField& F, long modulus) {
    long cap = F.is_rational() ? 100000 : 64;
    if (modulus < 2 || modulus > cap) throw std::invalid_argument("modulus out of range");
    LevelModel M;
    M.F = F;
    M.modulus = modulus;
    long bspan = F.is_rational() ? 1 : modulus;
    for (long a = 0; a < modulus; ++a)
        for (long b = 0; b < bspan; ++b)
            M.points.push_back(orbit_least(FieldElement(F, Rat(a), Rat(b)), modulus));
    std::sort(M.points.begin(), M.points.end(), point_less);
    M.points.erase(std::unique(M.points.begin(), M.points.end(),
                               [](const FieldElement& x, const FieldElement& y) {
                                   return x.cmp(y) == 0;
                               }),
                   M.points.end());
    return M;
}

int model_point_index(const LevelModel& M, const FieldElement& r) {
    if (r.field() != M.F) throw std::invalid_argument("element from a different field");
    FieldElement c = orbit_least(reduce_mod(r, M.modulus), M.modulus);
    auto it = std::lower_bound(M.points.begin(), M.points.end(), c, point_less);
    if (it == M.points.end() || it->cmp(c) != 0)
        throw internal_check_error("orbit lift missing from the level model");
    return static_cast<int>(it - M.points.begin());
}

KmsWeights kms_weights(const LevelModel& M, const Ideal& g, const Rat& beta, long cutoff,
                       long precision) {
    const QuadField& F = M.F;
    if (g.F != F) throw std::invalid_argument("ideal from a different field");
    if (!g.is_integral()) throw std::invalid_argument("twist ideal must be integral");
    validate_sum_args(beta, cutoff, precision);

    const ClassGroup& G = narrow_class_group(F);
    int target = G.inverse_class(G.class_of(g));
    size_t npts = M.points.size();
    std::vector<std::map<long, long>> counts_pt(npts);
    std::vector<long> counts_all(cutoff + 1, 0);
    long contributing = 0;
    auto record = [&](const FieldElement& gen, long n) {
        int pt = model_point_index(M, gen);
        ++counts_pt[pt][n];
        ++counts_all[n];
        ++contributing;
    };

    if (target == 0 && g == ideal_one(F)) {
        stream_tp_generated(F, cutoff, record);
    } else {
        std::vector<PrimeIdealInfo> primes = prime_ideals_up_to(F, cutoff);
        std::vector<int> pcls(primes.size());
        for (size_t i = 0; i < primes.size(); ++i) pcls[i] = G.class_of(primes[i].P);
        enumerate_ideals_stream(F, cutoff,
                                [&](const Ideal& I, const Int& nrm, const std::vector<int>& exps) {
                                    int c = 0;
                                    for (size_t i = 0; i < exps.size(); ++i)
                                        if (exps[i]) c = G.mul_class(c, G.pow_class(pcls[i], exps[i]));
                                    if (c != target) return;
                                    auto gen = tp_principal_generator(mul(g, I));
                                    if (!gen)
                                        throw internal_check_error(
                                            "class arithmetic disagrees with principality");
                                    record(*gen, nrm.get_si());
                                });
    }
    if (contributing == 0)
        throw std::invalid_argument("no ideals below the cutoff in the required class");

    std::vector<Rat> terms = power_terms(counts_all, beta, precision);
    KmsWeights out;
    out.weights.assign(npts, Rat(0));
    out.ideal_count = contributing;
    std::vector<Rat> num(npts, Rat(0));
    for (size_t k = 0; k < npts; ++k)
        for (const auto& [n, cnt] : counts_pt[k]) num[k] += Rat(cnt) * terms[n];
    for (const Rat& v : num) out.partition += v;
    for (size_t k = 0; k < npts; ++k) out.weights[k] = num[k] / out.partition;
    return out;
}

Rat measure_scaling_deviation(const LevelModel& M, const FieldElement& h,
                              const std::vector<int>& point_set, const Rat& beta, long cutoff,
                              long precision) {
    const QuadField& F = M.F;
    if (h.field() != F) throw std::invalid_argument("element from a different field");
    if (!h.is_integral() || !is_totally_positive(h))
        throw std::invalid_argument("scaling element must be integral and totally positive");
    validate_sum_args(beta, cutoff, precision);
    if (point_set.empty()) throw std::invalid_argument("empty point set");
    std::vector<char> in_set(M.points.size(), 0);
    for (int k : point_set) {
        if (k < 0 || static_cast<size_t>(k) >= M.points.size())
            throw std::invalid_argument("point index out of range");
        in_set[k] = 1;
    }

    FieldElement hinv = h.inverse();
    std::map<long, long> set_counts, scaled_counts;
    stream_tp_generated(F, cutoff, [&](const FieldElement& gen, long n) {
        if (in_set[model_point_index(M, gen)]) ++set_counts[n];
        FieldElement q = gen * hinv;
        if (q.is_integral() && in_set[model_point_index(M, q)]) ++scaled_counts[n];
    });

    std::vector<long> counts_all(cutoff + 1, 0);
    for (const auto& e : set_counts) counts_all[e.first] = 1;
    for (const auto& e : scaled_counts) counts_all[e.first] = 1;
    std::vector<Rat> terms = power_terms(counts_all, beta, precision);

    Rat lhs = 0, set_mass = 0;
    for (const auto& [n, cnt] : scaled_counts) lhs += Rat(cnt) * terms[n];
    for (const auto& [n, cnt] : set_counts) set_mass += Rat(cnt) * terms[n];
    if (set_mass == 0) throw std::invalid_argument("point set carries no mass below the cutoff");

    Rat Nh = h.norm();
    if (Nh.get_den() != 1 || Nh <= 0 || !Nh.get_num().fits_ulong_p())
        throw internal_check_error("unusable norm for the scaling element");
    Rat rhs = single_power_term(Nh.get_num().get_ui(), beta, precision) * set_mass;
    Rat dev = (lhs - rhs) / rhs;
    if (dev < 0) dev = -dev;
    return dev;
}

Rat partition_mass(const QuadField& F, const Rat& beta, long cutoff, long precision) {
    if (beta < 0) throw std::invalid_argument("mass requires beta >= 0");
    if (cutoff < 1) throw std::invalid_argument("cutoff must be positive");
    if (precision < 24 || precision > 8192) throw std::invalid_argument("precision out of range");
    std::vector<long> counts(cutoff + 1, 0);
    enumerate_ideals_stream(F, cutoff, [&](const Ideal&, const Int& nrm, const std::vector<int>&) {
        ++counts[nrm.get_si()];
    });
    std::vector<Rat> terms = power_terms(counts, beta, precision);
    Rat total = 0;
    for (long n = 1; n <= cutoff; ++n)
        if (counts[n]) total += Rat(counts[n]) * terms[n];
    return total;
}

}  // namespace bclab
