#include "bclab/class_group.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>

namespace bclab {

namespace {

bool ideals_equivalent(const Ideal& I, const Ideal& J, bool narrow) {
    Ideal Q = mul(I, inverse(J));
    return narrow ? tp_principal_generator(Q).has_value()
                  : wide_principal_generator(Q).has_value();
}

int match_class(const std::vector<Ideal>& reps, const Ideal& I, bool narrow) {
    for (size_t k = 0; k < reps.size(); ++k)
        if (ideals_equivalent(I, reps[k], narrow)) return static_cast<int>(k);
    return -1;
}

/* Element x with N(x) = -D < 0; its principal ideal spans the fiber of the
   narrow-to-wide collapse. */
FieldElement negative_norm_element(const QuadField& F) {
    if (F.t == 0) return element_w(F);   // sqrt(d)
    return FieldElement(F, -1, 2);       // 2w - 1 = sqrt(D)
}

/* Every class contains an integral ideal of norm within this bound (wide
   sense); a slight overshoot of the exact geometric bound is harmless. */
long scan_bound(const QuadField& F) {
    Int L = F.is_imaginary() ? isqrt(Int(4) * (-F.D) / 9) + 1 : isqrt(F.D / 4) + 1;
    long v = L.get_si();
    return v < 2 ? 2 : v;
}

ClassGroup compute_class_group(const QuadField& F, bool narrow) {
    ClassGroup G;
    G.F = F;
    G.narrow = narrow;
    if (F.is_rational()) {
        G.reps = {ideal_one(F)};
        G.table = {{0}};
        return G;
    }

    long L = scan_bound(F);
    std::vector<Ideal> disc;
    for (const Ideal& I : enumerate_ideals(F, L))
        if (match_class(disc, I, narrow) < 0) disc.push_back(I);

    if (narrow && F.is_real()) {
        // Wide classes split into at most two narrow classes, joined by any
        // principal ideal whose generators all have negative norm.
        Ideal R = principal_ideal(negative_norm_element(F));
        size_t base = disc.size();
        for (size_t i = 0; i < base; ++i) {
            Ideal C = mul(disc[i], R);
            if (match_class(disc, C, narrow) < 0) disc.push_back(C);
        }
    }

    // Replace discovery representatives by the first equivalent integral
    // ideal in enumeration order.
    long bound = L;
    for (const Ideal& I : disc) {
        Rat n = I.norm();
        if (n > bound) bound = Int(n.get_num()).get_si() + 1;
    }
    std::vector<std::optional<Ideal>> best(disc.size());
    size_t left = disc.size();
    for (const Ideal& I : enumerate_ideals(F, bound)) {
        if (left == 0) break;
        int k = match_class(disc, I, narrow);
        if (k < 0) throw internal_check_error("scanned ideal matches no discovered class");
        if (!best[k]) {
            best[k] = I;
            --left;
        }
    }
    if (left != 0) throw internal_check_error("class representative sweep incomplete");

    G.reps.clear();
    for (auto& f : best) G.reps.push_back(*f);
    std::sort(G.reps.begin(), G.reps.end());
    if (G.reps[0] != ideal_one(F)) throw internal_check_error("identity class lost in sweep");

    int h = static_cast<int>(G.reps.size());
    G.table.assign(h, std::vector<int>(h, 0));
    for (int i = 0; i < h; ++i)
        for (int j = 0; j <= i; ++j) {
            int k = match_class(G.reps, mul(G.reps[i], G.reps[j]), narrow);
            if (k < 0) throw internal_check_error("class set not closed under products");
            G.table[i][j] = G.table[j][i] = k;
        }
    G.invariants = abelian_invariants(G.table);
    return G;
}

}  // namespace

int ClassGroup::pow_class(int i, long e) const {
    int acc = 0, base = i;
    if (e < 0) {
        base = inverse_class(i);
        e = -e;
    }
    while (e > 0) {
        if (e & 1) acc = table[acc][base];
        base = table[base][base];
        e >>= 1;
    }
    return acc;
}

int ClassGroup::inverse_class(int i) const {
    for (size_t j = 0; j < reps.size(); ++j)
        if (table[i][j] == 0) return static_cast<int>(j);
    throw internal_check_error("class without inverse");
}

bool ClassGroup::equivalent(const Ideal& I, const Ideal& J) const {
    return ideals_equivalent(I, J, narrow);
}

int ClassGroup::class_of(const Ideal& I) const {
    int k = match_class(reps, I, narrow);
    if (k < 0) throw internal_check_error("ideal matches no class");
    return k;
}

std::vector<long> abelian_invariants(const std::vector<std::vector<int>>& table) {
    long h = static_cast<long>(table.size());
    if (h <= 1) return {};
    auto mulc = [&](int i, int j) { return table[i][j]; };
    auto powc = [&](int i, long e) {
        int acc = 0, base = i;
        while (e > 0) {
            if (e & 1) acc = mulc(acc, base);
            base = mulc(base, base);
            e >>= 1;
        }
        return acc;
    };
    // Per-prime invariant exponents from the counts of p^k-torsion elements.
    std::map<long, std::vector<long>> exps_by_prime;
    long m = h;
    for (long p = 2; p * p <= m; ++p)
        while (m % p == 0) {
            m /= p;
            if (exps_by_prime.find(p) == exps_by_prime.end()) exps_by_prime[p] = {};
        }
    if (m > 1) exps_by_prime[m] = {};
    for (auto& [p, exps] : exps_by_prime) {
        std::vector<long> r = {0};  // r[k] = log_p #{x : x^(p^k) = e}
        long pk = 1;
        for (;;) {
            pk *= p;
            long count = 0;
            for (int i = 0; i < h; ++i)
                if (powc(i, pk) == 0) ++count;
            long lg = 0;
            while (count > 1) {
                if (count % p != 0) throw internal_check_error("torsion count not a prime power");
                count /= p;
                ++lg;
            }
            if (lg == r.back()) break;  // p-part exhausted
            r.push_back(lg);
        }
        for (size_t k = 1; k < r.size(); ++k) {
            long with_exp_ge_k = r[k] - r[k - 1];
            while (static_cast<long>(exps.size()) < with_exp_ge_k) exps.push_back(0);
            for (long i = 0; i < with_exp_ge_k; ++i) ++exps[i];
        }
        std::sort(exps.begin(), exps.end(), std::greater<long>());
    }
    size_t width = 0;
    for (auto& [p, exps] : exps_by_prime) width = std::max(width, exps.size());
    std::vector<long> inv(width, 1);
    for (auto& [p, exps] : exps_by_prime)
        for (size_t i = 0; i < exps.size(); ++i)
            for (long k = 0; k < exps[i]; ++k) inv[i] *= p;
    std::sort(inv.begin(), inv.end());  // ascending: each divides the next
    return inv;
}

namespace {
const ClassGroup& cached_group(const QuadField& F, bool narrow) {
    static std::map<std::pair<long, bool>, ClassGroup> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(F.d, narrow);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, compute_class_group(F, narrow)).first;
    return it->second;
}
}  // namespace

const ClassGroup& narrow_class_group(const QuadField& F) { return cached_group(F, true); }
const ClassGroup& wide_class_group(const QuadField& F) { return cached_group(F, false); }

}  // namespace bclab
