#include "bclab/numeric.hpp"

#include <cctype>

namespace bclab {

Int isqrt(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt: negative argument");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const Int& n, Int* root) {
    if (n < 0) return false;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
    if (root != nullptr) *root = isqrt(n);
    return true;
}

Int icbrt(const Int& n) {
    Int r;
    if (n >= 0) {
        mpz_root(r.get_mpz_t(), n.get_mpz_t(), 3);
        return r;
    }
    Int m = -n;
    mpz_root(r.get_mpz_t(), m.get_mpz_t(), 3);
    /* mpz_root truncates toward zero; floor for negatives. */
    if (r * r * r != m) r += 1;
    return -r;
}

int kronecker(const Int& a, const Int& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

void xgcd(const Int& a, const Int& b, Int& d, Int& s, Int& t) {
    mpz_gcdext(d.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

std::vector<long> primes_up_to(long n) {
    std::vector<long> out;
    if (n < 2) return out;
    std::vector<bool> sieve(static_cast<size_t>(n) + 1, true);
    sieve[0] = sieve[1] = false;
    for (long p = 2; p * p <= n; ++p)
        if (sieve[static_cast<size_t>(p)])
            for (long q = p * p; q <= n; q += p) sieve[static_cast<size_t>(q)] = false;
    for (long p = 2; p <= n; ++p)
        if (sieve[static_cast<size_t>(p)]) out.push_back(p);
    return out;
}

bool is_squarefree(const Int& n) {
    Int m = abs(n);
    if (m == 0) return false;
    if (m == 1) return true;
    for (long p = 2; p <= 1000000 && Int(p) * p <= m; ++p) {
        if (m % p == 0) {
            m /= p;
            if (m % p == 0) return false;
        }
    }
    /* Remaining cofactor has no prime factor <= 1e6; it is squarefull only if
       it is a perfect square of a prime (bounded inputs enforced upstream). */
    if (m > 1 && is_square(m)) return false;
    return true;
}

Int sqrt_mod_prime(const Int& a0, const Int& p) {
    Int a = fdiv_r(a0, p);
    if (a == 0) return 0;
    if (p == 2) return a;
    if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1)
        throw std::domain_error("sqrt_mod_prime: not a quadratic residue");
    auto powmod = [&](Int base, Int exp) {
        Int r;
        mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), p.get_mpz_t());
        return r;
    };
    if (fdiv_r(p, 4) == 3) return powmod(a, (p + 1) / 4);
    /* Tonelli-Shanks. */
    Int q = p - 1;
    unsigned long s = 0;
    while (fdiv_r(q, 2) == 0) { q /= 2; ++s; }
    Int z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) z += 1;
    Int m(static_cast<long>(s)), c = powmod(z, q), t = powmod(a, q), r = powmod(a, (q + 1) / 2);
    while (t != 1) {
        Int i = 0, tt = t;
        while (tt != 1) { tt = tt * tt % p; i += 1; }
        Int b = c;
        for (Int j = 0; j < m - i - 1; ++j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

Int fdiv_q(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int fdiv_r(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int rat_floor(const Rat& q) {
    return fdiv_q(q.get_num(), q.get_den());
}

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat parse_rational(const std::string& s0) {
    std::string s = (!s0.empty() && s0[0] == '+') ? s0.substr(1) : s0;
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto bad = [&] { throw std::invalid_argument("parse_rational: malformed '" + s0 + "'"); };
    size_t slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (num.empty() || den.empty()) bad();
        Rat q;
        try {
            q = Rat(Int(num), Int(den));
        } catch (const std::invalid_argument&) {
            bad();
        }
        if (q.get_den() == 0) throw std::invalid_argument("parse_rational: zero denominator");
        q.canonicalize();
        return q;
    }
    size_t dot = s.find('.');
    if (dot == std::string::npos) {
        for (size_t i = 0; i < s.size(); ++i) {
            char c = s[i];
            if (!(std::isdigit(static_cast<unsigned char>(c)) || (i == 0 && (c == '-' || c == '+')))) bad();
        }
        try {
            return Rat(Int(s));
        } catch (const std::invalid_argument&) {
            bad();
        }
    }
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (fp.empty()) bad();
    for (char c : fp)
        if (!std::isdigit(static_cast<unsigned char>(c))) bad();
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip = ip.substr(1);
    for (char c : ip)
        if (!std::isdigit(static_cast<unsigned char>(c))) bad();
    Int whole = ip.empty() ? Int(0) : Int(ip);
    Int scale = 1;
    for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
    Rat q(whole * scale + Int(fp), scale);
    q.canonicalize();
    return neg ? Rat(-q) : q;
}

std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

int rat_cmp(const Rat& a, const Rat& b) {
    return mpq_cmp(a.get_mpq_t(), b.get_mpq_t());
}

}  // namespace bclab
