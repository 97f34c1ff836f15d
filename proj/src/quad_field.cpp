#include "bclab/quad_field.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <stdexcept>

namespace bclab {

QuadField make_field(long d) {
    if (d == 0) throw std::invalid_argument("field parameter d must be nonzero");
    if (d > 1000000000000L || d < -1000000000000L)
        throw std::invalid_argument("field parameter d out of supported range");
    if (!is_squarefree(Int(d))) throw std::invalid_argument("field parameter d must be squarefree");
    QuadField F;
    F.d = d;
    if (d == 1) {
        F.t = 1;
        F.D = 1;
        F.n = 0;
        return F;
    }
    long r = ((d % 4) + 4) % 4;
    if (r == 1) {
        F.t = 1;
        F.D = d;
        F.n = Int(1 - d) / 4;
    } else {
        F.t = 0;
        F.D = Int(4) * d;
        F.n = -d;
    }
    return F;
}

FieldElement::FieldElement(const QuadField& F, const Rat& a, const Rat& b) : F_(F), a_(a), b_(b) {
    if (F_.is_rational() && b_ != 0) {  // w = 1
        a_ += b_;
        b_ = 0;
    }
}

bool FieldElement::is_integral() const {
    return a_.get_den() == 1 && b_.get_den() == 1;
}

bool FieldElement::is_unit() const {
    if (!is_integral()) return false;
    Rat N = norm();
    return N == 1 || N == -1;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    if (F_.d != o.F_.d) throw std::invalid_argument("elements of different fields");
    return FieldElement(F_, a_ + o.a_, b_ + o.b_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    if (F_.d != o.F_.d) throw std::invalid_argument("elements of different fields");
    return FieldElement(F_, a_ - o.a_, b_ - o.b_);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    if (F_.d != o.F_.d) throw std::invalid_argument("elements of different fields");
    // (a + bw)(a' + b'w) with w^2 = t*w - n
    Rat bb = b_ * o.b_;
    Rat na = a_ * o.a_ - Rat(F_.n) * bb;
    Rat nb = a_ * o.b_ + b_ * o.a_ + Rat(F_.t) * bb;
    return FieldElement(F_, na, nb);
}

FieldElement FieldElement::operator-() const { return FieldElement(F_, -a_, -b_); }

FieldElement FieldElement::conj() const {
    return FieldElement(F_, a_ + Rat(F_.t) * b_, -b_);
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (F_.is_rational()) return FieldElement(F_, Rat(1) / a_, 0);
    Rat N = norm();
    FieldElement c = conj();
    return FieldElement(F_, c.a_ / N, c.b_ / N);
}

FieldElement FieldElement::pow(long e) const {
    FieldElement base = *this;
    if (e < 0) {
        base = base.inverse();
        e = -e;
    }
    FieldElement acc = element_one(F_);
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

Rat FieldElement::norm() const {
    if (F_.is_rational()) return a_;  // single embedding
    return a_ * a_ + Rat(F_.t) * a_ * b_ + Rat(F_.n) * b_ * b_;
}

Rat FieldElement::trace() const {
    if (F_.is_rational()) return a_;
    return 2 * a_ + Rat(F_.t) * b_;
}

int FieldElement::cmp(const FieldElement& o) const {
    int c = rat_cmp(a_, o.a_);
    if (c != 0) return c;
    return rat_cmp(b_, o.b_);
}

FieldElement element_one(const QuadField& F) { return FieldElement(F, 1, 0); }
FieldElement element_zero(const QuadField& F) { return FieldElement(F, 0, 0); }
FieldElement element_w(const QuadField& F) { return FieldElement(F, 0, 1); }

int sign_plus_sqrt(const Rat& A, const Rat& B, const Int& D) {
    int sa = sgn(A), sb = sgn(B);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare A^2 with B^2*D; sign follows the larger magnitude.
    Rat lhs = A * A, rhs = B * B * Rat(D);
    int c = rat_cmp(lhs, rhs);
    if (c == 0) return 0;
    return (c > 0) ? sa : sb;
}

int sign_sigma1(const FieldElement& x) {
    const QuadField& F = x.field();
    if (F.is_rational()) return sgn(x.a());
    if (F.is_imaginary()) throw std::domain_error("no real embedding for imaginary field");
    // sigma1(a + bw) = (2a + tb + b*sqrt(D))/2
    return sign_plus_sqrt(x.trace(), x.b(), F.D);
}

int sign_sigma2(const FieldElement& x) {
    const QuadField& F = x.field();
    if (F.is_rational()) return sgn(x.a());
    if (F.is_imaginary()) throw std::domain_error("no real embedding for imaginary field");
    return sign_plus_sqrt(x.trace(), -x.b(), F.D);
}

bool is_totally_positive(const FieldElement& x) {
    if (x.is_zero()) return false;
    const QuadField& F = x.field();
    if (F.is_rational()) return x.a() > 0;
    if (F.is_imaginary()) return true;
    return sign_sigma1(x) > 0 && sign_sigma2(x) > 0;
}

namespace {

/* One term of "a+b*w": either a rational or rational*"w" or bare "w". */
void apply_term(const std::string& term, Rat& a, Rat& b) {
    if (term.empty()) throw std::invalid_argument("empty term in element literal");
    auto star = term.find('*');
    if (star != std::string::npos) {
        std::string coef = term.substr(0, star);
        std::string var = term.substr(star + 1);
        if (var != "w") throw std::invalid_argument("expected 'w' after '*' in element literal");
        b += parse_rational(coef);
        return;
    }
    if (term == "w") {
        b += 1;
        return;
    }
    if (term == "-w") {
        b -= 1;
        return;
    }
    if (term == "+w") {
        b += 1;
        return;
    }
    if (term.back() == 'w') throw std::invalid_argument("coefficient of w needs '*'");
    a += parse_rational(term);
}

}  // namespace

FieldElement parse_element(const QuadField& F, const std::string& s) {
    std::string t;
    t.reserve(s.size());
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw std::invalid_argument("empty element literal");
    Rat a = 0, b = 0;
    size_t start = 0;
    for (size_t i = 1; i <= t.size(); ++i) {
        if (i == t.size() || ((t[i] == '+' || t[i] == '-') && t[i - 1] != '/' && t[i - 1] != '*' &&
                              t[i - 1] != '+' && t[i - 1] != '-')) {
            apply_term(t.substr(start, i - start), a, b);
            start = i;
        }
    }
    return FieldElement(F, a, b);
}

std::string format_element(const FieldElement& x) {
    if (x.b() == 0) return rat_to_string(x.a());
    std::string wterm;
    if (x.b() == 1)
        wterm = "w";
    else if (x.b() == -1)
        wterm = "-w";
    else
        wterm = rat_to_string(x.b()) + "*w";
    if (x.a() == 0) return wterm;
    std::string out = rat_to_string(x.a());
    if (wterm[0] != '-') out += "+";
    return out + wterm;
}

namespace {

/* Fundamental solution of x^2 - d*y^2 = +-1 over Z[sqrt(d)] via the continued
   fraction of sqrt(d); returns (p, k) with p^2 - d*k^2 = (-1)^period. */
void pell_fundamental(long d, Int& p, Int& k) {
    Int a0 = isqrt(Int(d));
    Int m = 0, q = 1, a = a0;
    Int pm1 = 1, p0 = a0;  // convergent numerators
    Int km1 = 0, k0 = 1;   // convergent denominators
    while (true) {
        m = q * a - m;
        q = (Int(d) - m * m) / q;
        a = (a0 + m) / q;
        if (q == 1) {
            p = p0;
            k = k0;
            return;
        }
        Int p1 = a * p0 + pm1;
        Int k1 = a * k0 + km1;
        pm1 = p0;
        p0 = p1;
        km1 = k0;
        k0 = k1;
    }
}

UnitInfo compute_unit_info(const QuadField& F) {
    UnitInfo U;
    U.fundamental = element_one(F);
    U.eps_plus = element_one(F);
    U.torsion_gen = -element_one(F);
    if (F.is_rational()) {
        U.torsion = 2;
        U.index_plus = 2;
        return U;
    }
    if (F.is_imaginary()) {
        if (F.d == -1) {
            U.torsion = 4;
            U.torsion_gen = element_w(F);
        } else if (F.d == -3) {
            U.torsion = 6;
            U.torsion_gen = element_w(F);
        } else {
            U.torsion = 2;
        }
        U.index_plus = 1;
        return U;
    }

    U.torsion = 2;
    Int p, k;
    pell_fundamental(F.d, p, k);
    Int s = p * p - Int(F.d) * k * k;  // +-1
    FieldElement eps;
    if (F.t == 0) {
        eps = FieldElement(F, Rat(p), Rat(k));
    } else {
        // w = (1 + sqrt(d))/2, so p + k*sqrt(d) = (p - k) + 2k*w; check whether
        // the order unit is the cube of a half-integral unit (T + v*sqrt(d))/2.
        eps = FieldElement(F, Rat(p - k), Rat(2 * k));
        Int two_h = 2 * p;  // trace of the Z[sqrt(d)] unit
        Int That = icbrt(two_h);
        for (Int T = That - 2; T <= That + 3; ++T) {
            if (T < 1) continue;
            if (T * T * T - 3 * s * T != two_h) continue;
            Int v2num = T * T - 4 * s;
            if (v2num <= 0 || v2num % F.d != 0) continue;
            Int v;
            if (!is_square(v2num / F.d, &v)) continue;
            if ((T - v) % 2 != 0) continue;
            eps = FieldElement(F, Rat((T - v) / 2), Rat(v));
            break;
        }
    }
    Rat N = eps.norm();
    U.fundamental = eps;
    U.fundamental_norm = (N == 1) ? 1 : -1;
    if (U.fundamental_norm == 1) {
        U.eps_plus = eps;  // sigma1(eps) > 1 and sigma2 = 1/sigma1 > 0
        U.index_plus = 2;
    } else {
        U.eps_plus = eps * eps;
        U.index_plus = 4;
    }
    if (!is_totally_positive(U.eps_plus))
        throw internal_check_error("fundamental totally positive unit failed positivity");
    return U;
}

}  // namespace

const UnitInfo& unit_info(const QuadField& F) {
    static std::map<long, UnitInfo> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(F.d);
    if (it == cache.end()) it = cache.emplace(F.d, compute_unit_info(F)).first;
    return it->second;
}

}  // namespace bclab
