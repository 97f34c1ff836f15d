#ifndef BCLAB_QUAD_FIELD_HPP
#define BCLAB_QUAD_FIELD_HPP

#include <string>

#include "bclab/numeric.hpp"

namespace bclab {

/* K = Q(sqrt(d)) for squarefree d, with d = 1 denoting Q itself.
   O is the maximal order Z[w], where
     d = 1 (mod 4): w = (1 + sqrt(d))/2,  t = 1, n = (1-d)/4
     otherwise:     w = sqrt(d),          t = 0, n = -d
   so w^2 = t*w - n uniformly and disc = t^2 - 4n. For d = 1 every element
   collapses to its rational part (w = 1). */
struct QuadField {
    long d = 1;
    long t = 0;
    Int D = 1;  // field discriminant (1 for Q)
    Int n = 0;  // norm of w

    bool is_rational() const { return d == 1; }
    bool is_imaginary() const { return d < 0; }
    bool is_real() const { return d > 1; }

    friend bool operator==(const QuadField& a, const QuadField& b) { return a.d == b.d; }
    friend bool operator!=(const QuadField& a, const QuadField& b) { return a.d != b.d; }
};

/* Validates d (nonzero, squarefree, |d| <= 10^12) and builds the field. */
QuadField make_field(long d);

/* Element a + b*w of K, coordinates exact rationals. For rational fields the
   representation is normalized to b = 0 on construction. */
class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(const QuadField& F, const Rat& a, const Rat& b);

    const QuadField& field() const { return F_; }
    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_integral() const;
    bool is_unit() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement conj() const;
    FieldElement inverse() const;  // throws std::domain_error on zero
    FieldElement pow(long e) const;

    Rat norm() const;   // a^2 + t*a*b + n*b^2
    Rat trace() const;  // 2a + t*b

    friend bool operator==(const FieldElement& x, const FieldElement& y) {
        return x.F_.d == y.F_.d && x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const FieldElement& x, const FieldElement& y) { return !(x == y); }

    /* Lexicographic on (a, b); total order within one field. */
    int cmp(const FieldElement& o) const;

  private:
    QuadField F_;
    Rat a_ = 0, b_ = 0;
};

FieldElement element_one(const QuadField& F);
FieldElement element_zero(const QuadField& F);
FieldElement element_w(const QuadField& F);

/* Sign of A + B*sqrt(D) for exact rationals A, B and a positive nonsquare
   integer D; returns -1, 0, or +1 without floating point. */
int sign_plus_sqrt(const Rat& A, const Rat& B, const Int& D);

/* Embedding signs: sigma1 uses +sqrt(D), sigma2 uses -sqrt(D). */
int sign_sigma1(const FieldElement& x);
int sign_sigma2(const FieldElement& x);

/* x > 0 under every real embedding (vacuous for imaginary fields; x > 0 for
   Q). Zero is never totally positive. */
bool is_totally_positive(const FieldElement& x);

/* Parses "a", "a+b*w", "b*w", "w", "-w", with rational coefficients such as
   "1/2" or "-3/4". Throws std::invalid_argument on malformed input. */
FieldElement parse_element(const QuadField& F, const std::string& s);
std::string format_element(const FieldElement& x);

struct UnitInfo {
    long torsion = 2;             // order of the torsion unit subgroup
    FieldElement torsion_gen;     // generator of the torsion subgroup
    FieldElement fundamental;     // fundamental unit (1 for Q and imaginary)
    int fundamental_norm = 1;     // N(fundamental), +1 or -1
    FieldElement eps_plus;        // fundamental totally positive unit (1 if none)
    long index_plus = 1;          // [O^* : O^*_+]
};

/* Unit group data for the maximal order; exact throughout. */
const UnitInfo& unit_info(const QuadField& F);

}  // namespace bclab

#endif
