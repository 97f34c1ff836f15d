#ifndef BCLAB_HECKE_HPP
#define BCLAB_HECKE_HPP

#include <map>
#include <vector>

#include "bclab/ideal.hpp"

namespace bclab {

/* Element (y, x) of the affine group K x| K^*_+ with x totally positive and
   product (y, x)(y', x') = (y + x y', x x'). The distinguished subgroup
   consists of the integral translations and totally positive units,
   O x| O^*_+; all cosets below are relative to it. */
struct AffineElement {
    FieldElement y;
    FieldElement x;

    int cmp(const AffineElement& o) const {
        int c = x.cmp(o.x);
        return c != 0 ? c : y.cmp(o.y);
    }
    friend bool operator==(const AffineElement& g, const AffineElement& h) {
        return g.y == h.y && g.x == h.x;
    }
    friend bool operator!=(const AffineElement& g, const AffineElement& h) { return !(g == h); }
};

struct AffineLess {
    bool operator()(const AffineElement& g, const AffineElement& h) const { return g.cmp(h) < 0; }
};

/* Validating constructor; throws std::invalid_argument unless x is totally
   positive (and both parts live in the same field). */
AffineElement affine(const FieldElement& y, const FieldElement& x);
AffineElement affine_identity(const QuadField& F);
AffineElement mul(const AffineElement& g, const AffineElement& h);
AffineElement inverse(const AffineElement& g);

/* Canonical member of the (left / right / double) coset of g, equal for two
   group elements exactly when their cosets coincide. */
AffineElement left_coset_key(const AffineElement& g);    // coset g * subgroup
AffineElement right_coset_key(const AffineElement& g);   // coset subgroup * g
AffineElement double_coset_key(const AffineElement& g);

/* Exhaustive decomposition of the double coset of g into one-sided cosets:
   it is the disjoint union of r * subgroup over left_reps(g), and of
   subgroup * r over right_reps(g). Representatives are canonical keys. */
std::vector<AffineElement> left_reps(const AffineElement& g);
std::vector<AffineElement> right_reps(const AffineElement& g);

/* right_reps(g).size() / left_reps(g).size(), by enumeration, as an exact
   rational. */
Rat hecke_delta(const AffineElement& g);

struct ExactComplex {
    Rat re = 0, im = 0;

    ExactComplex() = default;
    ExactComplex(const Rat& r) : re(r) {}  // NOLINT(google-explicit-constructor)
    ExactComplex(const Rat& r, const Rat& i) : re(r), im(i) {}

    bool is_zero() const { return re == 0 && im == 0; }
    ExactComplex conj() const { return {re, Rat(-im)}; }
    ExactComplex operator+(const ExactComplex& o) const { return {re + o.re, im + o.im}; }
    ExactComplex operator-(const ExactComplex& o) const { return {re - o.re, im - o.im}; }
    ExactComplex operator*(const ExactComplex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    ExactComplex& operator+=(const ExactComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }
};

/* Finitely supported function on double cosets with exact complex rational
   values; the convolution algebra these span is associative and unital with
   the subgroup's indicator as identity. Terms are keyed by canonical
   double-coset members. */
struct HeckeFunction {
    QuadField F;
    std::map<AffineElement, ExactComplex, AffineLess> terms;
};

HeckeFunction hecke_zero(const QuadField& F);
HeckeFunction hecke_basis(const AffineElement& g);  // indicator of the double coset of g
void hecke_add(HeckeFunction& f, const AffineElement& g, const ExactComplex& c);
ExactComplex hecke_value(const HeckeFunction& f, const AffineElement& g);

/* (f1 * f2)(g) = sum over right cosets (subgroup)h of f1(g h^-1) f2(h). */
HeckeFunction convolve(const HeckeFunction& f1, const HeckeFunction& f2);

/* f*(g) = conj(f(g^-1)). */
HeckeFunction star(const HeckeFunction& f);

}  // namespace bclab

#endif
