#include "bclab/ideal.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace bclab {

namespace {

Int coord_norm(const QuadField& F, const Int& x, const Int& y) {
    return x * x + F.t * x * y + F.n * y * y;
}

/* Hermite basis (a, b + c*w) of the span of integer coordinate vectors. */
void hnf2(const QuadField& F, const std::vector<std::pair<Int, Int>>& v, Int& a, Int& b, Int& c) {
    (void)F;
    Int bx = 0, cy = 0;
    for (const auto& [x, y] : v) {
        if (y == 0) continue;
        if (cy == 0) {
            bx = x;
            cy = y;
            continue;
        }
        Int g, s, t;
        xgcd(cy, y, g, s, t);
        bx = s * bx + t * x;
        cy = g;
    }
    if (cy == 0) throw internal_check_error("module has rank below 2");
    Int A = 0;
    for (const auto& [x, y] : v) A = gcd(A, x - (y / cy) * bx);
    if (A == 0) throw internal_check_error("module has rank below 2");
    if (cy < 0) {
        cy = -cy;
        bx = -bx;
    }
    a = abs(A);
    c = cy;
    b = fdiv_r(bx, a);
}

/* Canonical fractional form from raw module data (wraps validation; internal
   callers reaching an invalid state indicates a computation bug). */
Ideal finish(const QuadField& F, Int a, Int b, Int c, Int denom) {
    if (denom < 0) throw internal_check_error("negative ideal denominator");
    Int f = gcd(F.is_rational() ? a : c, denom);
    if (f > 1) {
        a /= f;
        b /= f;
        c /= f;
        denom /= f;
    }
    try {
        return make_ideal(F, a, b, c, denom);
    } catch (const std::invalid_argument& e) {
        throw internal_check_error(std::string("ideal invariant violated internally: ") + e.what());
    }
}

/* Common denominator of the coordinates of a list of elements. */
Int coord_lcm(const std::vector<FieldElement>& xs) {
    Int L = 1;
    for (const auto& x : xs) {
        L = lcm(L, Int(x.a().get_den()));
        L = lcm(L, Int(x.b().get_den()));
    }
    return L;
}

}  // namespace

Int Ideal::norm_integral() const {
    if (denom != 1) throw std::invalid_argument("norm_integral needs an integral ideal");
    if (F.is_rational()) return a;
    return a * c;
}

Rat Ideal::norm() const {
    if (F.is_rational()) return make_rat(a, denom);
    return make_rat(a * c, denom * denom);
}

Ideal Ideal::conj() const {
    if (F.is_rational()) return *this;
    Int a2, b2, c2;
    hnf2(F, {{a, Int(0)}, {b + F.t * c, -c}}, a2, b2, c2);
    return finish(F, a2, b2, c2, denom);
}

bool Ideal::contains(const FieldElement& x) const {
    if (x.is_zero()) return true;
    return residue_mod(x, *this).is_zero();
}

int Ideal::cmp(const Ideal& o) const {
    int k = rat_cmp(norm(), o.norm());
    if (k != 0) return k;
    if (int s = ::cmp(a, o.a); s != 0) return s;
    if (int s = ::cmp(b, o.b); s != 0) return s;
    if (int s = ::cmp(c, o.c); s != 0) return s;
    return ::cmp(denom, o.denom);
}

Ideal make_ideal(const QuadField& F, const Int& a, const Int& b, const Int& c, const Int& denom) {
    if (a <= 0 || c <= 0 || denom <= 0) throw std::invalid_argument("ideal basis must be positive");
    if (F.is_rational()) {
        if (b != 0 || c != a) throw std::invalid_argument("rational ideal form is (a, 0, a)");
        if (gcd(a, denom) != 1) throw std::invalid_argument("rational ideal fraction not reduced");
    } else {
        if (a % c != 0 || b % c != 0) throw std::invalid_argument("content must divide basis");
        if (b < 0 || b >= a) throw std::invalid_argument("second basis coefficient out of range");
        if (coord_norm(F, b, c) % (a * c) != 0)
            throw std::invalid_argument("module is not an ideal of the order");
        if (gcd(c, denom) != 1) throw std::invalid_argument("ideal fraction not reduced");
    }
    Ideal I;
    I.F = F;
    I.a = a;
    I.b = b;
    I.c = c;
    I.denom = denom;
    return I;
}

Ideal ideal_one(const QuadField& F) { return make_ideal(F, 1, 0, 1, 1); }

Ideal ideal_from_generators(const QuadField& F, const std::vector<FieldElement>& gens) {
    std::vector<FieldElement> nz;
    for (const auto& g : gens)
        if (!g.is_zero()) nz.push_back(g);
    if (nz.empty()) throw std::invalid_argument("ideal needs a nonzero generator");
    Int L = coord_lcm(nz);
    if (F.is_rational()) {
        Int A = 0;
        for (const auto& g : nz) A = gcd(A, Int(g.a().get_num()) * (L / Int(g.a().get_den())));
        A = abs(A);
        return finish(F, A, 0, A, L);
    }
    std::vector<std::pair<Int, Int>> v;
    FieldElement w = element_w(F);
    for (const auto& g : nz) {
        for (const FieldElement& h : {g, g * w}) {
            Rat xa = h.a() * L, xb = h.b() * L;
            v.emplace_back(Int(xa.get_num()), Int(xb.get_num()));
        }
    }
    Int a, b, c;
    hnf2(F, v, a, b, c);
    return finish(F, a, b, c, L);
}

Ideal principal_ideal(const FieldElement& x) { return ideal_from_generators(x.field(), {x}); }

Ideal mul(const Ideal& I, const Ideal& J) {
    if (I.F.d != J.F.d) throw std::invalid_argument("ideals of different fields");
    const QuadField& F = I.F;
    if (F.is_rational()) return finish(F, I.a * J.a, 0, I.a * J.a, I.denom * J.denom);
    FieldElement g1(F, Rat(I.b), Rat(I.c)), g2(F, Rat(J.b), Rat(J.c));
    FieldElement p = g1 * g2;
    std::vector<std::pair<Int, Int>> v = {
        {I.a * J.a, 0},
        {I.a * J.b, I.a * J.c},
        {J.a * I.b, J.a * I.c},
        {Int(p.a().get_num()), Int(p.b().get_num())},
    };
    Int a, b, c;
    hnf2(F, v, a, b, c);
    return finish(F, a, b, c, I.denom * J.denom);
}

Ideal mul(const FieldElement& x, const Ideal& I) {
    if (x.is_zero()) throw std::invalid_argument("zero does not scale an ideal");
    const QuadField& F = I.F;
    FieldElement e1(F, make_rat(I.a, I.denom), 0);
    FieldElement e2(F, make_rat(I.b, I.denom), make_rat(I.c, I.denom));
    return ideal_from_generators(F, {x * e1, x * e2});
}

Ideal inverse(const Ideal& I) {
    const QuadField& F = I.F;
    if (F.is_rational()) return finish(F, I.denom, 0, I.denom, I.a);
    // J * conj(J) = (N(J)) for the integral part J, so J^-1 = conj(J)/N(J).
    Ideal Jc = make_ideal(F, I.a, I.b, I.c, 1).conj();
    Int N = I.a * I.c;
    return finish(F, I.denom * Jc.a, I.denom * Jc.b, I.denom * Jc.c, N);
}

Ideal add(const Ideal& I, const Ideal& J) {
    if (I.F.d != J.F.d) throw std::invalid_argument("ideals of different fields");
    const QuadField& F = I.F;
    Int L = lcm(I.denom, J.denom);
    Int u = L / I.denom, v = L / J.denom;
    if (F.is_rational()) {
        Int A = gcd(u * I.a, v * J.a);
        return finish(F, A, 0, A, L);
    }
    std::vector<std::pair<Int, Int>> vecs = {
        {u * I.a, 0}, {u * I.b, u * I.c}, {v * J.a, 0}, {v * J.b, v * J.c}};
    Int a, b, c;
    hnf2(F, vecs, a, b, c);
    return finish(F, a, b, c, L);
}

Ideal intersect(const Ideal& I, const Ideal& J) { return mul(mul(I, J), inverse(add(I, J))); }

FieldElement residue_mod(const FieldElement& y, const Ideal& I) {
    const QuadField& F = I.F;
    if (F.is_rational()) {
        Rat q = make_rat(I.a, I.denom);
        Rat r = y.a() - rat_floor(y.a() / q) * q;
        return FieldElement(F, r, 0);
    }
    Int f = lcm(Int(y.a().get_den()), Int(y.b().get_den()));
    Int S = f * I.denom;
    Rat ua = y.a() * S, va = y.b() * S;
    Int u(ua.get_num()), v(va.get_num());
    Int A = f * I.a, B = f * I.b, C = f * I.c;
    Int v2 = fdiv_r(v, C);
    Int k = (v - v2) / C;
    Int u2 = fdiv_r(u - k * B, A);
    return FieldElement(F, make_rat(u2, S), make_rat(v2, S));
}

PrimeSplit split_prime(const QuadField& F, long p) {
    if (F.is_rational()) throw std::invalid_argument("prime decomposition needs a quadratic field");
    Int P(p);
    if (p < 2 || mpz_probab_prime_p(P.get_mpz_t(), 30) == 0)
        throw std::invalid_argument("not a prime");
    int kr = kronecker(F.D, P);
    PrimeSplit out;
    if (kr == -1) {
        out.type = PrimeType::inert;
        out.first = make_ideal(F, P, 0, P, 1);
        out.second = out.first;
        return out;
    }
    auto root_ideal = [&](const Int& r) { return make_ideal(F, P, fdiv_r(r, P), 1, 1); };
    if (kr == 0) {
        out.type = PrimeType::ramified;
        Int r;
        if (p == 2) {
            r = (F.n % 2 == 0) ? 0 : 1;
            if (coord_norm(F, r, 1) % 2 != 0) throw internal_check_error("no ramified root mod 2");
        } else {
            r = fdiv_r(Int(-F.t) * ((P + 1) / 2), P);
        }
        out.first = root_ideal(r);
        out.second = out.first;
        return out;
    }
    out.type = PrimeType::split;
    Int r1, r2;
    if (p == 2) {
        r1 = 0;
        r2 = 1;  // x^2 + tx + n = x(x+1) mod 2 exactly in the split case
        if (coord_norm(F, r1, 1) % 2 != 0 || coord_norm(F, r2, 1) % 2 != 0)
            throw internal_check_error("no split roots mod 2");
    } else {
        Int s = sqrt_mod_prime(fdiv_r(F.D, P), P);
        Int inv2 = (P + 1) / 2;
        r1 = fdiv_r((-Int(F.t) + s) * inv2, P);
        r2 = fdiv_r((-Int(F.t) - s) * inv2, P);
    }
    if (r1 > r2) std::swap(r1, r2);
    out.first = root_ideal(r1);
    out.second = root_ideal(r2);
    return out;
}

std::vector<PrimeIdealInfo> prime_ideals_up_to(const QuadField& F, long bound) {
    std::vector<PrimeIdealInfo> out;
    if (bound < 2) return out;
    for (long p : primes_up_to(bound)) {
        if (F.is_rational()) {
            out.push_back({make_ideal(F, Int(p), 0, Int(p), 1), p, 1});
            continue;
        }
        PrimeSplit s = split_prime(F, p);
        if (s.type == PrimeType::inert) {
            if (Int(p) * p <= bound) out.push_back({s.first, p, 2});
        } else {
            out.push_back({s.first, p, 1});
            if (s.type == PrimeType::split) out.push_back({s.second, p, 1});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const PrimeIdealInfo& x, const PrimeIdealInfo& y) { return x.P < y.P; });
    return out;
}

void enumerate_ideals_stream(
    const QuadField& F, long bound,
    const std::function<void(const Ideal&, const Int&, const std::vector<int>&)>& visit) {
    if (bound < 1) return;
    auto primes = prime_ideals_up_to(F, bound);
    std::vector<Int> q(primes.size());
    for (size_t i = 0; i < primes.size(); ++i) q[i] = primes[i].P.norm_integral();
    std::vector<int> exps(primes.size(), 0);
    std::function<void(size_t, const Ideal&, const Int&)> rec = [&](size_t i, const Ideal& cur,
                                                                    const Int& nrm) {
        visit(cur, nrm, exps);
        for (size_t j = i; j < primes.size(); ++j) {
            Int nn = nrm * q[j];
            if (nn > bound) break;  // primes sorted by norm
            ++exps[j];
            rec(j, mul(cur, primes[j].P), nn);
            --exps[j];
        }
    };
    rec(0, ideal_one(F), 1);
}

std::vector<Ideal> enumerate_ideals(const QuadField& F, long bound) {
    std::vector<Ideal> out;
    enumerate_ideals_stream(F, bound,
                            [&](const Ideal& I, const Int&, const std::vector<int>&) {
                                out.push_back(I);
                            });
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

/* |sigma1/sigma2| >= 1 test: sign((s1 - s2)(s1 + s2)) = sign(b) * sign(trace). */
int cmp_abs_ratio_one(const FieldElement& x) { return sgn(x.b()) * sgn(x.trace()); }

/* Exhaustive norm-form solve for imaginary fields: generator of the integral
   ideal J, if principal. */
std::optional<FieldElement> imaginary_generator(const Ideal& J) {
    const QuadField& F = J.F;
    Int M = J.a * J.c;
    Int vmax = isqrt((4 * M) / (-F.D));
    for (Int v = 0; v <= vmax; ++v) {
        Int disc = F.D * v * v + 4 * M;
        if (disc < 0) break;
        Int s;
        if (!is_square(disc, &s)) continue;
        for (int sv : {1, -1}) {
            if (v == 0 && sv < 0) continue;
            Int vv = sv * v;
            for (int ss : {1, -1}) {
                Int num = -F.t * vv + ss * s;
                if (num % 2 != 0) continue;
                Int u = num / 2;
                if (u == 0 && vv == 0) continue;
                FieldElement g(F, Rat(u), Rat(vv));
                if (g.norm() == Rat(M) && J.contains(g)) return g;
            }
        }
    }
    return std::nullopt;
}

/* One reduction step on a primitive ideal (a, b + w): pick the basis residue
   in the classical window below sqrt(D) and divide by it. Returns the new
   (a, b) and rel with  I_next = rel * I. */
void rho_step(const QuadField& F, const Int& a, const Int& b, Int& a2, Int& b2,
              FieldElement& rel) {
    Int s = isqrt(F.D);
    Int B = s - fdiv_r(s - (2 * b + F.t), 2 * a);
    Int btil = (B - F.t) / 2;
    Int Nd = (B * B - F.D) / 4;
    if (Nd == 0) throw internal_check_error("square discriminant in reduction step");
    a2 = abs(Nd) / a;
    b2 = fdiv_r(-(btil + F.t), a2);
    rel = FieldElement(F, make_rat(btil + F.t, a), make_rat(-1, a));
}

struct PrincipalCycle {
    /* state (a, b) of a primitive ideal -> element g with  I_state = (g). */
    std::map<std::pair<Int, Int>, FieldElement> gen;
};

const PrincipalCycle& principal_cycle(const QuadField& F) {
    static std::map<long, PrincipalCycle> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(F.d);
    if (it != cache.end()) return it->second;
    PrincipalCycle cyc;
    Int a = 1, b = 0;
    FieldElement g = element_one(F);
    for (long guard = 0;; ++guard) {
        if (guard > 2000000) throw internal_check_error("reduction cycle did not close");
        if (!cyc.gen.emplace(std::make_pair(a, b), g).second) break;
        Int a2, b2;
        FieldElement rel;
        rho_step(F, a, b, a2, b2, rel);
        g = rel * g;
        a = a2;
        b = b2;
    }
    return cache.emplace(F.d, std::move(cyc)).first->second;
}

/* Walk a primitive integral ideal down to the reduced region and test it
   against the principal cycle. */
std::optional<FieldElement> real_wide_generator_primitive(const QuadField& F, Int a, Int b) {
    const PrincipalCycle& cyc = principal_cycle(F);
    FieldElement e = element_one(F);  // I_k = e * I_0
    std::map<std::pair<Int, Int>, bool> visited;
    for (long guard = 0;; ++guard) {
        if (guard > 2000000) throw internal_check_error("reduction walk did not terminate");
        auto key = std::make_pair(a, b);
        auto hit = cyc.gen.find(key);
        if (hit != cyc.gen.end()) return hit->second * e.inverse();
        if (!visited.emplace(key, true).second) return std::nullopt;
        Int a2, b2;
        FieldElement rel;
        rho_step(F, a, b, a2, b2, rel);
        e = rel * e;
        a = a2;
        b = b2;
    }
}

FieldElement canonical_wide_associate(const FieldElement& x) {
    const QuadField& F = x.field();
    if (F.is_rational()) {
        Rat v = x.a() < 0 ? Rat(-x.a()) : x.a();
        return FieldElement(F, v, 0);
    }
    if (F.is_imaginary()) return canonical_tp_associate(x);
    const UnitInfo& U = unit_info(F);
    std::vector<FieldElement> reps = {element_one(F), -element_one(F)};
    if (U.fundamental_norm == -1) {
        reps.push_back(U.fundamental);
        reps.push_back(-U.fundamental);
    }
    FieldElement best = canonical_tp_associate(reps[0] * x);
    for (size_t i = 1; i < reps.size(); ++i) {
        FieldElement cand = canonical_tp_associate(reps[i] * x);
        if (cand.cmp(best) < 0) best = cand;
    }
    return best;
}

}  // namespace

FieldElement canonical_tp_associate(const FieldElement& x, FieldElement* unit_out) {
    if (x.is_zero()) throw std::invalid_argument("cannot normalize zero");
    const QuadField& F = x.field();
    FieldElement u = element_one(F);
    if (F.is_rational()) {
        if (unit_out) *unit_out = u;
        return x;
    }
    if (F.is_imaginary()) {
        const UnitInfo& U = unit_info(F);
        FieldElement best = x, bu = u, cur = x, cu = u;
        for (long j = 1; j < U.torsion; ++j) {
            cur = cur * U.torsion_gen;
            cu = cu * U.torsion_gen;
            if (cur.cmp(best) < 0) {
                best = cur;
                bu = cu;
            }
        }
        if (unit_out) *unit_out = bu;
        return best;
    }
    const UnitInfo& U = unit_info(F);
    FieldElement epi = U.eps_plus.inverse();
    FieldElement y = x;
    for (long guard = 0; cmp_abs_ratio_one(y) < 0; ++guard) {
        if (guard > 1000000) throw internal_check_error("unit normalization diverged");
        y = y * U.eps_plus;
        u = u * U.eps_plus;
    }
    for (long guard = 0; cmp_abs_ratio_one(y * epi) >= 0; ++guard) {
        if (guard > 1000000) throw internal_check_error("unit normalization diverged");
        y = y * epi;
        u = u * epi;
    }
    if (unit_out) *unit_out = u;
    return y;
}

std::optional<FieldElement> wide_principal_generator(const Ideal& I) {
    const QuadField& F = I.F;
    std::optional<FieldElement> g;
    if (F.is_rational()) {
        g = FieldElement(F, make_rat(I.a, I.denom), 0);
    } else if (F.is_imaginary()) {
        auto raw = imaginary_generator(make_ideal(F, I.a, I.b, I.c, 1));
        if (!raw) return std::nullopt;
        g = FieldElement(F, raw->a() / Rat(I.denom), raw->b() / Rat(I.denom));
    } else {
        auto raw = real_wide_generator_primitive(F, I.a / I.c, fdiv_r(I.b / I.c, I.a / I.c));
        if (!raw) return std::nullopt;
        Rat scale = make_rat(I.c, I.denom);
        g = FieldElement(F, raw->a() * scale, raw->b() * scale);
    }
    FieldElement out = canonical_wide_associate(*g);
    if (principal_ideal(out) != I) throw internal_check_error("generator certificate failed");
    return out;
}

std::optional<FieldElement> tp_principal_generator(const Ideal& I) {
    const QuadField& F = I.F;
    auto g = wide_principal_generator(I);
    if (!g) return std::nullopt;
    if (F.is_rational() || F.is_imaginary()) return g;  // positivity free or vacuous
    const UnitInfo& U = unit_info(F);
    for (const FieldElement& cand :
         {*g, -*g, U.fundamental * *g, -(U.fundamental * *g)}) {
        if (is_totally_positive(cand)) {
            FieldElement out = canonical_tp_associate(cand);
            if (principal_ideal(out) != I) throw internal_check_error("generator certificate failed");
            return out;
        }
    }
    return std::nullopt;
}

}  // namespace bclab
