#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "integralis/rational.hpp"
#include "integralis/symbol.hpp"

namespace integralis {

// Sparse monomial: (symbol id, exponent) pairs, sorted by id, exponents > 0.
struct Monomial {
    std::vector<std::pair<int, int>> vars;

    int totalDegree() const {
        int d = 0;
        for (auto& [v, e] : vars) d += e;
        return d;
    }
    int degreeIn(int var) const {
        for (auto& [v, e] : vars)
            if (v == var) return e;
        return 0;
    }
    bool isOne() const { return vars.empty(); }

    static Monomial one() { return {}; }
    static Monomial var(int id, int exp = 1);

    Monomial mul(const Monomial& o) const;
    // Exact monomial quotient; nullopt if any exponent would go negative.
    std::optional<Monomial> tryDiv(const Monomial& o) const;

    bool operator==(const Monomial& o) const { return vars == o.vars; }
};

// Graded lexicographic, larger first (so map::begin() is the leading term).
// Lex tiebreak treats smaller symbol ids as more significant.
struct MonoGrlexDesc {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

int monoCmpGrlex(const Monomial& a, const Monomial& b); // <0, 0, >0  (a vs b, ascending sense)

class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, MonoGrlexDesc>;

    Polynomial() = default;
    explicit Polynomial(const Rational& c);
    explicit Polynomial(long c) : Polynomial(Rational(c)) {}
    static Polynomial variable(int id);
    static Polynomial fromTerm(const Rational& c, const Monomial& m);

    bool isZero() const { return terms_.empty(); }
    bool isConstant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.isOne()); }
    Rational constantValue() const; // requires isConstant()
    bool isOne() const;

    const TermMap& terms() const { return terms_; }
    std::size_t termCount() const { return terms_.size(); }

    const Monomial& leadingMonomial() const;
    const Rational& leadingCoeff() const;
    Rational coeff(const Monomial& m) const;

    int totalDegree() const; // -1 for zero
    int degreeIn(int var) const;
    std::vector<int> variables() const; // sorted ids
    bool dependsOn(int var) const { return degreeIn(var) > 0; }

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;
    Polynomial pow(int e) const; // e >= 0
    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial derivative(int var) const;

    // Rational content with the sign of the leading coefficient; zero poly -> 0.
    // P = content * primitivePart, primitive part has coprime integer
    // coefficients and positive leading coefficient.
    Rational content() const;
    Polynomial primitivePart() const;

    Rational evaluate(const std::map<int, Rational>& point) const;
    Polynomial substitute(const std::map<int, Polynomial>& bindings) const;

    // Univariate view in `var`: coefficient polynomials by ascending degree.
    std::vector<Polynomial> univariate(int var) const;
    static Polynomial fromUnivariate(int var, const std::vector<Polynomial>& coeffs);
    Polynomial coeffOfPower(int var, int deg) const;
    Polynomial leadingCoeffIn(int var) const;

    bool tryDivideExact(const Polynomial& divisor, Polynomial& quotient) const;

    std::string render() const;

    void addTerm(const Rational& c, const Monomial& m); // canonicalizing insert

private:
    TermMap terms_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

// Total order for deterministic containers and canonical signatures.
int polyCmp(const Polynomial& a, const Polynomial& b);

// Primitive gcd with positive leading coefficient (1 for coprime inputs).
Polynomial polyGcd(const Polynomial& a, const Polynomial& b);

// Best-effort split into pairwise coprime factors (content splits, degree-1
// detection, squarefree splits). Factors are primitive; rational content is
// dropped. Multiplicity preserved by repetition.
std::vector<Polynomial> splitFactors(const Polynomial& p);

// Squarefree part: product of distinct irreducible factors, primitive.
Polynomial squareFreePart(const Polynomial& p);

} // namespace integralis
