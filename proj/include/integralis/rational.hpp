#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace integralis {

// Exact arithmetic over Q. GMP keeps gcd(num,den)=1 and den>0 after
// canonicalize(), which is exactly the invariant we need.
using Int = mpz_class;
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational ratFromString(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

inline bool isInteger(const Rational& q) { return q.get_den() == 1; }

inline bool fitsLong(const Rational& q) {
    return isInteger(q) && q.get_num().fits_slong_p();
}

inline Rational ratPowInt(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    Rational b = base;
    bool inv = e < 0;
    unsigned long n = inv ? static_cast<unsigned long>(-(e + 1)) + 1ul : static_cast<unsigned long>(e);
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), b.get_num_mpz_t(), n);
    mpz_pow_ui(r.get_den_mpz_t(), b.get_den_mpz_t(), n);
    r.canonicalize();
    if (inv) {
        if (r == 0) throw std::domain_error("zero to negative power");
        r = 1 / r;
    }
    return r;
}

inline std::string ratToString(const Rational& q) { return q.get_str(); }

inline double ratToDouble(const Rational& q) { return q.get_d(); }

} // namespace integralis
