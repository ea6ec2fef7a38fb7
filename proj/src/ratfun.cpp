#include "integralis/ratfun.hpp"

#include <stdexcept>

namespace integralis {

RatFun::RatFun(const Polynomial& num, const Polynomial& den) : num_(num), den_(den) {
    if (den_.isZero()) throw std::domain_error("zero denominator");
    normalize();
}

void RatFun::normalize() {
    if (num_.isZero()) {
        den_ = Polynomial(Rational(1));
        return;
    }
    Polynomial g = polyGcd(num_, den_);
    if (!g.isConstant()) {
        Polynomial qn, qd;
        num_.tryDivideExact(g, qn);
        den_.tryDivideExact(g, qd);
        num_ = qn;
        den_ = qd;
    }
    Rational c = den_.content();
    num_ = num_ * (1 / c);
    den_ = den_ * (1 / c);
}

RatFun RatFun::operator-() const {
    RatFun r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RatFun RatFun::operator+(const RatFun& o) const {
    return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator-(const RatFun& o) const {
    return RatFun(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator*(const RatFun& o) const {
    return RatFun(num_ * o.num_, den_ * o.den_);
}

RatFun RatFun::operator/(const RatFun& o) const {
    if (o.isZero()) throw std::domain_error("division by zero");
    return RatFun(num_ * o.den_, den_ * o.num_);
}

RatFun RatFun::derivative(int var) const {
    // (n/d)' = (n'd - nd')/d^2
    Polynomial dn = num_.derivative(var);
    Polynomial dd = den_.derivative(var);
    if (dd.isZero()) return RatFun(dn, den_);
    return RatFun(dn * den_ - num_ * dd, den_ * den_);
}

RatFun RatFun::substitute(const std::map<int, RatFun>& bindings) const {
    auto substPoly = [&](const Polynomial& p) {
        RatFun total{Rational(0)};
        for (auto& [m, c] : p.terms()) {
            RatFun t{c};
            for (auto& [v, e] : m.vars) {
                auto it = bindings.find(v);
                RatFun base = (it == bindings.end()) ? RatFun::variable(v) : it->second;
                for (int i = 0; i < e; ++i) t = t * base;
            }
            total = total + t;
        }
        return total;
    };
    RatFun dn = substPoly(den_);
    if (dn.isZero()) throw std::domain_error("substitution produced zero denominator");
    return substPoly(num_) / dn;
}

Rational RatFun::evaluate(const std::map<int, Rational>& point) const {
    Rational d = den_.evaluate(point);
    if (d == 0) throw std::domain_error("evaluation singularity");
    return num_.evaluate(point) / d;
}

std::vector<int> RatFun::variables() const {
    std::vector<int> a = num_.variables();
    std::vector<int> b = den_.variables();
    std::vector<int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::string RatFun::render() const {
    if (den_.isOne()) return num_.render();
    bool numAtom = num_.termCount() == 1 && num_.leadingCoeff() > 0;
    std::string n = numAtom ? num_.render() : "(" + num_.render() + ")";
    // a bare variable power is unambiguous after '/', anything else needs parens
    bool denAtom = den_.termCount() == 1 && den_.leadingCoeff() == 1 &&
                   den_.leadingMonomial().vars.size() == 1;
    std::string d = denAtom ? den_.render() : "(" + den_.render() + ")";
    return n + "/" + d;
}

int rfCmp(const RatFun& a, const RatFun& b) {
    int c = polyCmp(a.num(), b.num());
    if (c != 0) return c;
    return polyCmp(a.den(), b.den());
}

RatFun substPolyRational(const Polynomial& p, int var, const RatFun& value) {
    std::map<int, RatFun> b{{var, value}};
    return RatFun(p).substitute(b);
}

} // namespace integralis
