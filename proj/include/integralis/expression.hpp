#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "integralis/errors.hpp"
#include "integralis/ratfun.hpp"

namespace integralis {

// One multiplicative factor base^exponent with a non-integer rational
// exponent. Bases are primitive, positive-leading, nonconstant polynomials;
// integer powers live in the rational coefficient instead.
struct RadFactor {
    Polynomial base;
    Rational exponent;
};

// coeff * prod(rad_i) * exp(expArg)
struct ExTerm {
    RatFun coeff;
    std::vector<RadFactor> rads; // sorted by base, pairwise distinct bases
    Polynomial expArg;
};

// Canonical closed-form scalar: finite sum of terms with pairwise distinct
// (rads, expArg) signatures. The class is closed under differentiation.
class Expression {
public:
    Expression() = default; // zero
    explicit Expression(const Rational& c);
    explicit Expression(long c) : Expression(Rational(c)) {}
    explicit Expression(const Polynomial& p);
    explicit Expression(const RatFun& r);
    static Expression variable(int id) { return Expression(Polynomial::variable(id)); }
    static Expression expOf(const Polynomial& arg);
    static Expression fromTerms(std::vector<ExTerm> terms); // canonicalizes

    const std::vector<ExTerm>& terms() const { return terms_; }

    bool isZero() const { return terms_.empty(); }
    // Single pure-rational value, if this expression is one (zero counts).
    std::optional<RatFun> asRatFun() const;
    bool isRational() const { return asRatFun().has_value(); }

    Expression operator-() const;
    Expression operator+(const Expression& o) const;
    Expression operator-(const Expression& o) const;
    Expression operator*(const Expression& o) const;
    // Division by a single-term (or rational) expression; throws
    // UnsupportedQuotient otherwise, DivisionByZero on zero divisor.
    Expression operator/(const Expression& o) const;
    bool operator==(const Expression& o) const { return (*this - o).isZero(); }
    bool operator!=(const Expression& o) const { return !(*this == o); }

    Expression differentiate(int var) const;
    Expression substitute(const std::map<int, Expression>& bindings) const;

    struct Value {
        bool exact;
        Rational rationalValue; // valid when exact
        long double numericValue;
        long double asNumeric() const { return exact ? static_cast<long double>(ratToDouble(rationalValue)) : numericValue; }
    };
    Value evaluate(const std::map<int, Rational>& point) const;

    std::set<int> freeVariables() const;
    bool dependsOn(int var) const;

    std::string render() const;

    // Multiply by a nonzero rational constant (cheap scaling).
    Expression scaled(const Rational& c) const;

private:
    void canonicalize();
    std::vector<ExTerm> terms_;
};

int exprCmp(const Expression& a, const Expression& b); // total order, canonical forms

// Parse per the expression grammar. If strictSymbols is given, any symbol not
// in the set raises UnknownSymbolError.
Expression parseExpression(const std::string& text,
                           const std::set<int>* strictSymbols = nullptr);

} // namespace integralis
