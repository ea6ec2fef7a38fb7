#include "integralis/expression.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace integralis {

namespace {

int radCmp(const RadFactor& a, const RadFactor& b) {
    int c = polyCmp(a.base, b.base);
    if (c != 0) return c;
    return cmp(a.exponent, b.exponent);
}

int signatureCmp(const ExTerm& a, const ExTerm& b) {
    int c = polyCmp(a.expArg, b.expArg);
    if (c != 0) return c;
    if (a.rads.size() != b.rads.size()) return a.rads.size() < b.rads.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.rads.size(); ++i) {
        c = radCmp(a.rads[i], b.rads[i]);
        if (c != 0) return c;
    }
    return 0;
}

// Normalize one term: absorb integer radical exponents into the coefficient,
// merge equal bases, split reducible bases where the cheap factorizer can.
void normalizeTerm(ExTerm& t) {
    if (t.coeff.isZero()) {
        t.rads.clear();
        t.expArg = Polynomial();
        return;
    }
    std::vector<RadFactor> flat;
    for (auto& rf : t.rads) {
        if (rf.exponent == 0 || rf.base.isOne()) continue;
        if (rf.base.isZero()) throw std::domain_error("zero radical base");
        if (rf.base.isConstant())
            throw UnsupportedOperation("constant radical base outside the expression class");
        if (rf.base.content() != 1)
            throw UnsupportedOperation("non-primitive radical base outside the expression class");
        for (auto& piece : splitFactors(rf.base)) flat.push_back({piece, rf.exponent});
    }
    std::sort(flat.begin(), flat.end(), [](const RadFactor& a, const RadFactor& b) {
        return polyCmp(a.base, b.base) < 0;
    });
    std::vector<RadFactor> merged;
    for (auto& rf : flat) {
        if (!merged.empty() && merged.back().base == rf.base)
            merged.back().exponent += rf.exponent;
        else
            merged.push_back(rf);
    }
    std::vector<RadFactor> kept;
    for (auto& rf : merged) {
        if (rf.exponent == 0) continue;
        if (isInteger(rf.exponent)) {
            long e = rf.exponent.get_num().get_si();
            if (e > 0)
                t.coeff = t.coeff * RatFun(rf.base.pow(static_cast<int>(e)));
            else
                t.coeff = t.coeff / RatFun(rf.base.pow(static_cast<int>(-e)));
        } else {
            kept.push_back(rf);
        }
    }
    t.rads = std::move(kept);
}

} // namespace

Expression::Expression(const Rational& c) {
    if (c != 0) terms_.push_back({RatFun(c), {}, Polynomial()});
}

Expression::Expression(const Polynomial& p) {
    if (!p.isZero()) terms_.push_back({RatFun(p), {}, Polynomial()});
}

Expression::Expression(const RatFun& r) {
    if (!r.isZero()) terms_.push_back({r, {}, Polynomial()});
}

Expression Expression::expOf(const Polynomial& arg) {
    Expression e;
    e.terms_.push_back({RatFun(Rational(1)), {}, arg});
    return e;
}

Expression Expression::fromTerms(std::vector<ExTerm> terms) {
    Expression e;
    e.terms_ = std::move(terms);
    e.canonicalize();
    return e;
}

void Expression::canonicalize() {
    for (auto& t : terms_) normalizeTerm(t);
    std::sort(terms_.begin(), terms_.end(),
              [](const ExTerm& a, const ExTerm& b) { return signatureCmp(a, b) < 0; });
    std::vector<ExTerm> merged;
    for (auto& t : terms_) {
        if (t.coeff.isZero()) continue;
        if (!merged.empty() && signatureCmp(merged.back(), t) == 0)
            merged.back().coeff = merged.back().coeff + t.coeff;
        else
            merged.push_back(t);
    }
    terms_.clear();
    for (auto& t : merged)
        if (!t.coeff.isZero()) terms_.push_back(std::move(t));
}

std::optional<RatFun> Expression::asRatFun() const {
    if (terms_.empty()) return RatFun(Rational(0));
    if (terms_.size() == 1 && terms_[0].rads.empty() && terms_[0].expArg.isZero())
        return terms_[0].coeff;
    return std::nullopt;
}

Expression Expression::operator-() const {
    Expression r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

Expression Expression::operator+(const Expression& o) const {
    std::vector<ExTerm> all = terms_;
    all.insert(all.end(), o.terms_.begin(), o.terms_.end());
    return fromTerms(std::move(all));
}

Expression Expression::operator-(const Expression& o) const { return *this + (-o); }

Expression Expression::operator*(const Expression& o) const {
    std::vector<ExTerm> out;
    for (auto& a : terms_) {
        for (auto& b : o.terms_) {
            ExTerm t;
            t.coeff = a.coeff * b.coeff;
            t.rads = a.rads;
            t.rads.insert(t.rads.end(), b.rads.begin(), b.rads.end());
            t.expArg = a.expArg + b.expArg;
            out.push_back(std::move(t));
        }
    }
    return fromTerms(std::move(out));
}

Expression Expression::operator/(const Expression& o) const {
    if (o.isZero()) throw DivisionByZero();
    if (auto rf = o.asRatFun()) {
        Expression r = *this;
        for (auto& t : r.terms_) t.coeff = t.coeff / *rf;
        return r;
    }
    if (o.terms_.size() != 1) throw UnsupportedQuotient();
    const ExTerm& d = o.terms_[0];
    std::vector<ExTerm> out;
    for (auto& a : terms_) {
        ExTerm t;
        t.coeff = a.coeff / d.coeff;
        t.rads = a.rads;
        for (auto& rf : d.rads) t.rads.push_back({rf.base, -rf.exponent});
        t.expArg = a.expArg - d.expArg;
        out.push_back(std::move(t));
    }
    return fromTerms(std::move(out));
}

Expression Expression::scaled(const Rational& c) const {
    if (c == 0) return Expression();
    Expression r = *this;
    for (auto& t : r.terms_) t.coeff = t.coeff * RatFun(c);
    return r;
}

Expression Expression::differentiate(int var) const {
    std::vector<ExTerm> out;
    for (auto& t : terms_) {
        // d(c * prod b_i^e_i * exp(P)) =
        //   (c' + c*sum e_i b_i'/b_i + c*P') * prod b_i^e_i * exp(P)
        RatFun factor = t.coeff.derivative(var);
        for (auto& rf : t.rads) {
            Polynomial db = rf.base.derivative(var);
            if (db.isZero()) continue;
            factor = factor + t.coeff * RatFun(rf.exponent) * RatFun(db, rf.base);
        }
        Polynomial dP = t.expArg.derivative(var);
        if (!dP.isZero()) factor = factor + t.coeff * RatFun(dP);
        if (factor.isZero()) continue;
        out.push_back({factor, t.rads, t.expArg});
    }
    return fromTerms(std::move(out));
}

Expression Expression::substitute(const std::map<int, Expression>& bindings) const {
    std::map<int, RatFun> rb;
    for (auto& [v, e] : bindings) {
        auto rf = e.asRatFun();
        if (!rf) throw UnsupportedOperation("substitute: bindings must be rational functions");
        rb.emplace(v, *rf);
    }
    auto touches = [&](const Polynomial& p) {
        for (auto& [v, rf] : rb)
            if (p.dependsOn(v)) return true;
        return false;
    };
    std::vector<ExTerm> out;
    for (auto& t : terms_) {
        ExTerm nt;
        nt.coeff = t.coeff.substitute(rb);
        for (auto& rf : t.rads) {
            if (!touches(rf.base)) {
                nt.rads.push_back(rf);
                continue;
            }
            RatFun nb = RatFun(rf.base).substitute(rb);
            if (nb.isZero()) throw std::domain_error("substitution vanishes a radical base");
            // (N/D)^e -> N^e * D^(-e); constant contents cannot be extracted
            // from a non-integer power inside Q, so reject those.
            auto pushPiece = [&](const Polynomial& p, const Rational& e) {
                if (p.isConstant()) {
                    if (p.constantValue() == 1) return;
                    throw UnsupportedOperation("substitution creates irrational constant");
                }
                nt.rads.push_back({p, e});
            };
            pushPiece(nb.num(), rf.exponent);
            pushPiece(nb.den(), Rational(-rf.exponent));
        }
        if (touches(t.expArg)) {
            RatFun na = RatFun(t.expArg).substitute(rb);
            if (!na.isPolynomial())
                throw UnsupportedOperation("substitution makes exp argument non-polynomial");
            nt.expArg = na.num();
        } else {
            nt.expArg = t.expArg;
        }
        out.push_back(std::move(nt));
    }
    return fromTerms(std::move(out));
}

Expression::Value Expression::evaluate(const std::map<int, Rational>& point) const {
    bool extended = false;
    for (auto& t : terms_)
        if (!t.rads.empty() || !t.expArg.isZero()) extended = true;
    if (!extended) {
        Rational total(0);
        for (auto& t : terms_) {
            Rational d = t.coeff.den().evaluate(point);
            if (d == 0) throw EvaluationSingularity("zero denominator");
            total += t.coeff.num().evaluate(point) / d;
        }
        return {true, total, 0.0L};
    }
    long double total = 0.0L;
    for (auto& t : terms_) {
        Rational d = t.coeff.den().evaluate(point);
        if (d == 0) throw EvaluationSingularity("zero denominator");
        long double v = static_cast<long double>(ratToDouble(t.coeff.num().evaluate(point))) /
                        static_cast<long double>(ratToDouble(d));
        for (auto& rf : t.rads) {
            Rational b = rf.base.evaluate(point);
            if (b == 0) throw EvaluationSingularity("zero radical base");
            long double bd = static_cast<long double>(ratToDouble(b));
            long double ed = static_cast<long double>(ratToDouble(rf.exponent));
            if (bd < 0) throw EvaluationSingularity("negative radical base");
            v *= powl(bd, ed);
        }
        if (!t.expArg.isZero())
            v *= expl(static_cast<long double>(ratToDouble(t.expArg.evaluate(point))));
        total += v;
    }
    return {false, Rational(0), total};
}

std::set<int> Expression::freeVariables() const {
    std::set<int> out;
    for (auto& t : terms_) {
        for (int v : t.coeff.variables()) out.insert(v);
        for (auto& rf : t.rads)
            for (int v : rf.base.variables()) out.insert(v);
        for (int v : t.expArg.variables()) out.insert(v);
    }
    return out;
}

bool Expression::dependsOn(int var) const {
    return !differentiate(var).isZero();
}

int exprCmp(const Expression& a, const Expression& b) {
    if (a.terms().size() != b.terms().size())
        return a.terms().size() < b.terms().size() ? -1 : 1;
    for (std::size_t i = 0; i < a.terms().size(); ++i) {
        int c = signatureCmp(a.terms()[i], b.terms()[i]);
        if (c != 0) return c;
        c = rfCmp(a.terms()[i].coeff, b.terms()[i].coeff);
        if (c != 0) return c;
    }
    return 0;
}

std::string Expression::render() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& t : terms_) {
        bool neg = false;
        RatFun c = t.coeff;
        if (c.num().leadingCoeff() < 0) {
            neg = true;
            c = -c;
        }
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        std::vector<std::string> factors;
        bool coeffIsOne = c.isConstant() && c.constantValue() == 1;
        bool hasOther = !t.rads.empty() || !t.expArg.isZero();
        if (!coeffIsOne || !hasOther) {
            std::string cs = c.render();
            if (c.num().termCount() > 1 && hasOther) cs = "(" + cs + ")";
            factors.push_back(cs);
        }
        for (auto& rf : t.rads) {
            std::string b = "(" + rf.base.render() + ")";
            std::string e = isInteger(rf.exponent) ? ratToString(rf.exponent)
                                                   : "(" + ratToString(rf.exponent) + ")";
            factors.push_back(b + "^" + e);
        }
        if (!t.expArg.isZero()) factors.push_back("exp(" + t.expArg.render() + ")");
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) os << "*";
            os << factors[i];
        }
    }
    return os.str();
}

} // namespace integralis
