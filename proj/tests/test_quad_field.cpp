#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bclab/numeric.hpp"
#include "bclab/quad_field.hpp"

using namespace bclab;

namespace {

/* Deterministic LCG so failures reproduce exactly. */
struct Lcg {
    unsigned long long s;
    explicit Lcg(unsigned long long seed) : s(seed) {}
    long next(long lo, long hi) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return lo + static_cast<long>((s >> 33) % static_cast<unsigned long long>(hi - lo + 1));
    }
    Rat rat() {
        Rat q(next(-9, 9), next(1, 3));
        q.canonicalize();
        return q;
    }
};

/* Minimal unit > 1 of the maximal order, by exhaustive search on the sqrt(d)
   coordinate. Independent of the continued-fraction route. */
FieldElement smallest_unit_bruteforce(const QuadField& F) {
    if (F.t == 0) {
        for (Int k = 1;; ++k) {
            Int dk2 = Int(F.d) * k * k;
            Int p;
            if (is_square(dk2 + 1, &p)) return FieldElement(F, Rat(p), Rat(k));
            if (is_square(dk2 - 1, &p)) return FieldElement(F, Rat(p), Rat(k));
        }
    }
    for (Int v = 1;; ++v) {
        Int dv2 = Int(F.d) * v * v;
        Int T;
        for (int s : {-4, 4}) {
            if (dv2 + s <= 0) continue;
            if (is_square(dv2 + s, &T) && (T - v) % 2 == 0)
                return FieldElement(F, Rat((T - v) / 2), Rat(v));
        }
    }
}

}  // namespace

TEST_CASE("field construction accepts exactly squarefree nonzero d") {
    for (long d : {1L, 2L, 3L, 5L, 6L, 7L, -1L, -2L, -3L, -5L, -163L, 61L})
        CHECK_NOTHROW(make_field(d));
    for (long d : {0L, 4L, -4L, 8L, 9L, 12L, 18L, -12L, 50L})
        CHECK_THROWS_AS(make_field(d), std::invalid_argument);
}

TEST_CASE("discriminant and generator data") {
    QuadField F5 = make_field(5);
    CHECK(F5.D == 5);
    CHECK(F5.t == 1);
    CHECK(F5.n == -1);
    QuadField F3 = make_field(3);
    CHECK(F3.D == 12);
    CHECK(F3.t == 0);
    CHECK(F3.n == -3);
    QuadField Fm1 = make_field(-1);
    CHECK(Fm1.D == -4);
    CHECK(Fm1.n == 1);
    QuadField Fm3 = make_field(-3);
    CHECK(Fm3.D == -3);
    CHECK(Fm3.n == 1);
    QuadField Fm5 = make_field(-5);
    CHECK(Fm5.D == -20);
    QuadField Q = make_field(1);
    CHECK(Q.is_rational());
    CHECK(Q.D == 1);
}

TEST_CASE("generator satisfies its quadratic relation") {
    for (long d : {2L, 3L, 5L, 13L, -1L, -3L, -5L, -7L}) {
        QuadField F = make_field(d);
        FieldElement w = element_w(F);
        FieldElement rel = w * w - FieldElement(F, 0, Rat(F.t)) + FieldElement(F, Rat(F.n), 0);
        CHECK(rel.is_zero());
        CHECK(w.norm() == Rat(F.n));
        CHECK(w.trace() == Rat(F.t));
    }
}

TEST_CASE("arithmetic identities on random elements") {
    Lcg rng(12345);
    for (long d : {1L, 2L, 5L, -1L, -5L, 13L}) {
        QuadField F = make_field(d);
        for (int i = 0; i < 40; ++i) {
            FieldElement x(F, rng.rat(), rng.rat());
            FieldElement y(F, rng.rat(), rng.rat());
            FieldElement z(F, rng.rat(), rng.rat());
            CHECK((x * y) * z == x * (y * z));
            CHECK(x * (y + z) == x * y + x * z);
            CHECK(x.norm() * y.norm() == (x * y).norm());
            CHECK(x.trace() + y.trace() == (x + y).trace());
            CHECK((x * y).conj() == x.conj() * y.conj());
            if (!F.is_rational()) {
                FieldElement nx = x * x.conj();
                CHECK(nx == FieldElement(F, x.norm(), 0));
            }
            if (!x.is_zero()) {
                CHECK(x * x.inverse() == element_one(F));
                CHECK(x.pow(3) == x * x * x);
                CHECK(x.pow(-2) * x.pow(2) == element_one(F));
            }
        }
    }
}

TEST_CASE("rational field collapses the generator") {
    QuadField Q = make_field(1);
    FieldElement x(Q, Rat(3), Rat(2));  // 3 + 2*w = 5
    CHECK(x.a() == 5);
    CHECK(x.b() == 0);
    CHECK(x.norm() == 5);
    CHECK(parse_element(Q, "3+2*w") == FieldElement(Q, 5, 0));
}

TEST_CASE("element parsing and formatting round trip") {
    QuadField F = make_field(-5);
    CHECK(parse_element(F, "w") == element_w(F));
    CHECK(parse_element(F, "-w") == -element_w(F));
    CHECK(parse_element(F, "0") == element_zero(F));
    CHECK(parse_element(F, "1/2+3*w") == FieldElement(F, Rat(1, 2), 3));
    CHECK(parse_element(F, "2-1/3*w") == FieldElement(F, 2, Rat(-1, 3)));
    CHECK(parse_element(F, " -2/4 + 1*w ") == FieldElement(F, Rat(-1, 2), 1));
    CHECK(format_element(FieldElement(F, Rat(1, 2), 3)) == "1/2+3*w");
    CHECK(format_element(FieldElement(F, 0, -1)) == "-w");
    CHECK(format_element(FieldElement(F, -2, 0)) == "-2");
    CHECK(format_element(element_zero(F)) == "0");
    Lcg rng(777);
    for (int i = 0; i < 60; ++i) {
        FieldElement x(F, rng.rat(), rng.rat());
        CHECK(parse_element(F, format_element(x)) == x);
    }
    CHECK_THROWS_AS(parse_element(F, ""), std::invalid_argument);
    CHECK_THROWS_AS(parse_element(F, "2w"), std::invalid_argument);
    CHECK_THROWS_AS(parse_element(F, "1+*w"), std::invalid_argument);
    CHECK_THROWS_AS(parse_element(F, "x"), std::invalid_argument);
}

TEST_CASE("exact sign of A + B*sqrt(D)") {
    Int D = 8;
    CHECK(sign_plus_sqrt(Rat(3), Rat(-1), D) > 0);   // 3 - sqrt(8) > 0
    CHECK(sign_plus_sqrt(Rat(-3), Rat(1), D) < 0);   // sqrt(8) - 3 < 0
    CHECK(sign_plus_sqrt(Rat(2), Rat(-1), D) < 0);   // 2 - sqrt(8) < 0
    CHECK(sign_plus_sqrt(Rat(0), Rat(0), D) == 0);
    CHECK(sign_plus_sqrt(Rat(0), Rat(-2), D) < 0);
    CHECK(sign_plus_sqrt(Rat(1, 3), Rat(1, 7), D) > 0);
}

TEST_CASE("total positivity per signature") {
    QuadField Q = make_field(1);
    CHECK(is_totally_positive(FieldElement(Q, 5, 0)));
    CHECK_FALSE(is_totally_positive(FieldElement(Q, -2, 0)));
    CHECK_FALSE(is_totally_positive(element_zero(Q)));

    QuadField Fi = make_field(-1);
    CHECK(is_totally_positive(FieldElement(Fi, -3, 7)));
    CHECK_FALSE(is_totally_positive(element_zero(Fi)));

    QuadField F2 = make_field(2);
    CHECK_FALSE(is_totally_positive(FieldElement(F2, 1, 1)));  // 1+sqrt2 has negative conjugate
    CHECK(is_totally_positive(FieldElement(F2, 3, 2)));        // (1+sqrt2)^2
    CHECK_FALSE(is_totally_positive(FieldElement(F2, -3, -2)));
    QuadField F3 = make_field(3);
    CHECK(is_totally_positive(FieldElement(F3, 2, 1)));
    CHECK_FALSE(is_totally_positive(FieldElement(F3, 1, 1)));
}

TEST_CASE("fundamental unit matches exhaustive minimal solution") {
    for (long d : {2L, 3L, 5L, 6L, 7L, 10L, 11L, 13L, 14L, 15L, 17L, 19L, 21L, 23L, 29L, 33L,
                   37L, 41L, 53L, 61L, 77L, 94L}) {
        QuadField F = make_field(d);
        const UnitInfo& U = unit_info(F);
        CAPTURE(d);
        CHECK(U.fundamental == smallest_unit_bruteforce(F));
        CHECK(U.fundamental.is_unit());
        CHECK(Rat(U.fundamental_norm) == U.fundamental.norm());
    }
}

TEST_CASE("known fundamental units") {
    CHECK(unit_info(make_field(2)).fundamental == FieldElement(make_field(2), 1, 1));
    CHECK(unit_info(make_field(3)).fundamental == FieldElement(make_field(3), 2, 1));
    CHECK(unit_info(make_field(5)).fundamental == element_w(make_field(5)));
    CHECK(unit_info(make_field(13)).fundamental == FieldElement(make_field(13), 1, 1));
    CHECK(unit_info(make_field(61)).fundamental == FieldElement(make_field(61), 17, 5));
    CHECK(unit_info(make_field(2)).fundamental_norm == -1);
    CHECK(unit_info(make_field(3)).fundamental_norm == 1);
    CHECK(unit_info(make_field(7)).fundamental_norm == 1);
    CHECK(unit_info(make_field(10)).fundamental_norm == -1);
}

TEST_CASE("totally positive unit generator and unit indices") {
    const UnitInfo& U2 = unit_info(make_field(2));
    CHECK(U2.eps_plus == FieldElement(make_field(2), 3, 2));
    CHECK(U2.index_plus == 4);
    const UnitInfo& U3 = unit_info(make_field(3));
    CHECK(U3.eps_plus == FieldElement(make_field(3), 2, 1));
    CHECK(U3.index_plus == 2);
    const UnitInfo& U5 = unit_info(make_field(5));
    CHECK(U5.eps_plus == U5.fundamental * U5.fundamental);
    CHECK(U5.index_plus == 4);
    for (long d : {2L, 3L, 5L, 7L, 10L, 13L}) {
        const UnitInfo& U = unit_info(make_field(d));
        CHECK(is_totally_positive(U.eps_plus));
        CHECK(U.eps_plus.norm() == 1);
        CHECK(U.eps_plus != element_one(make_field(d)));
    }
    CHECK(unit_info(make_field(1)).index_plus == 2);
    CHECK(unit_info(make_field(-5)).index_plus == 1);
}

TEST_CASE("torsion unit subgroup") {
    CHECK(unit_info(make_field(-1)).torsion == 4);
    CHECK(unit_info(make_field(-3)).torsion == 6);
    CHECK(unit_info(make_field(-2)).torsion == 2);
    CHECK(unit_info(make_field(-163)).torsion == 2);
    CHECK(unit_info(make_field(1)).torsion == 2);
    CHECK(unit_info(make_field(7)).torsion == 2);
    const UnitInfo& Ui = unit_info(make_field(-1));
    CHECK(Ui.torsion_gen.pow(4) == element_one(make_field(-1)));
    CHECK(Ui.torsion_gen.pow(2) != element_one(make_field(-1)));
    const UnitInfo& Uw = unit_info(make_field(-3));
    CHECK(Uw.torsion_gen.pow(6) == element_one(make_field(-3)));
    CHECK(Uw.torsion_gen.pow(3) != element_one(make_field(-3)));
    CHECK(Uw.torsion_gen.pow(2) != element_one(make_field(-3)));
}

TEST_CASE("integer utilities behave on edges") {
    CHECK(isqrt(Int(0)) == 0);
    CHECK(isqrt(Int(15)) == 3);
    CHECK(isqrt(Int(16)) == 4);
    Int r;
    CHECK(is_square(Int(49), &r));
    CHECK(r == 7);
    CHECK_FALSE(is_square(Int(48)));
    CHECK(icbrt(Int(26)) == 2);
    CHECK(icbrt(Int(27)) == 3);
    CHECK(kronecker(Int(5), Int(11)) == 1);   // 4^2 = 5 mod 11
    CHECK(kronecker(Int(7), Int(11)) == -1);
    CHECK(kronecker(Int(-4), Int(5)) == 1);   // disc -4, 5 splits in the Gaussian order
    CHECK(kronecker(Int(8), Int(2)) == 0);
    Int g, s, t;
    xgcd(Int(240), Int(46), g, s, t);
    CHECK(g == 2);
    CHECK(s * 240 + t * 46 == g);
    CHECK(primes_up_to(20) == std::vector<long>({2, 3, 5, 7, 11, 13, 17, 19}));
    CHECK(is_squarefree(Int(1)));
    CHECK(is_squarefree(Int(30)));
    CHECK_FALSE(is_squarefree(Int(0)));
    CHECK_FALSE(is_squarefree(Int(75)));
    for (long p : {3L, 5L, 13L, 10007L}) {
        for (long a = 1; a < 30; ++a) {
            if (kronecker(Int(a), Int(p)) != 1) continue;
            Int root = sqrt_mod_prime(Int(a), Int(p));
            CHECK(fdiv_r(root * root - a, Int(p)) == 0);
        }
    }
    CHECK(fdiv_q(Int(-7), Int(2)) == -4);
    CHECK(fdiv_r(Int(-7), Int(2)) == 1);
}

TEST_CASE("rational parsing round trips") {
    CHECK(parse_rational("3/6") == Rat(1, 2));
    CHECK(parse_rational("-3") == -3);
    CHECK(parse_rational("+3") == 3);
    CHECK(parse_rational("0.25") == Rat(1, 4));
    CHECK(parse_rational("-1.5") == Rat(-3, 2));
    CHECK(rat_to_string(Rat(-3, 2)) == "-3/2");
    CHECK(rat_to_string(Rat(4) / Rat(2)) == "2");
    CHECK(rat_to_string(make_rat(Int(4), Int(-2))) == "-2");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}
