#pragma once

#include <map>
#include <string>

#include "integralis/polynomial.hpp"

namespace integralis {

// Reduced fraction of polynomials. Denominator is primitive with positive
// leading coefficient under graded lex, so equality is structural and
// isZero() is a sound zero test.
class RatFun {
public:
    RatFun() : num_(), den_(Rational(1)) {}
    RatFun(const Polynomial& num, const Polynomial& den);
    explicit RatFun(const Polynomial& p) : num_(p), den_(Rational(1)) {}
    explicit RatFun(const Rational& c) : num_(c), den_(Rational(1)) {}
    explicit RatFun(long c) : num_(Rational(c)), den_(Rational(1)) {}
    static RatFun variable(int id) { return RatFun(Polynomial::variable(id)); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool isZero() const { return num_.isZero(); }
    bool isPolynomial() const { return den_.isOne(); }
    bool isConstant() const { return num_.isConstant() && den_.isConstant(); }
    Rational constantValue() const { return num_.constantValue() / den_.constantValue(); }

    RatFun operator-() const;
    RatFun operator+(const RatFun& o) const;
    RatFun operator-(const RatFun& o) const;
    RatFun operator*(const RatFun& o) const;
    RatFun operator/(const RatFun& o) const;
    bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFun& o) const { return !(*this == o); }

    RatFun derivative(int var) const;
    RatFun substitute(const std::map<int, RatFun>& bindings) const;
    Rational evaluate(const std::map<int, Rational>& point) const; // throws on zero denominator

    std::vector<int> variables() const;
    bool dependsOn(int var) const { return num_.dependsOn(var) || den_.dependsOn(var); }

    std::string render() const;

private:
    void normalize();
    Polynomial num_, den_;
};

int rfCmp(const RatFun& a, const RatFun& b);

// Substitute var := value into a polynomial, allowing a rational value.
RatFun substPolyRational(const Polynomial& p, int var, const RatFun& value);

} // namespace integralis
