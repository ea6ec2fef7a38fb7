#include "integralis/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace integralis {

Monomial Monomial::var(int id, int exp) {
    Monomial m;
    if (exp != 0) m.vars.emplace_back(id, exp);
    return m;
}

Monomial Monomial::mul(const Monomial& o) const {
    Monomial r;
    r.vars.reserve(vars.size() + o.vars.size());
    std::size_t i = 0, j = 0;
    while (i < vars.size() || j < o.vars.size()) {
        if (j == o.vars.size() || (i < vars.size() && vars[i].first < o.vars[j].first)) {
            r.vars.push_back(vars[i++]);
        } else if (i == vars.size() || o.vars[j].first < vars[i].first) {
            r.vars.push_back(o.vars[j++]);
        } else {
            int e = vars[i].second + o.vars[j].second;
            if (e != 0) r.vars.emplace_back(vars[i].first, e);
            ++i, ++j;
        }
    }
    return r;
}

std::optional<Monomial> Monomial::tryDiv(const Monomial& o) const {
    Monomial r;
    std::size_t i = 0, j = 0;
    while (j < o.vars.size()) {
        if (i == vars.size()) return std::nullopt;
        if (vars[i].first < o.vars[j].first) {
            r.vars.push_back(vars[i++]);
        } else if (vars[i].first > o.vars[j].first) {
            return std::nullopt;
        } else {
            int e = vars[i].second - o.vars[j].second;
            if (e < 0) return std::nullopt;
            if (e > 0) r.vars.emplace_back(vars[i].first, e);
            ++i, ++j;
        }
    }
    while (i < vars.size()) r.vars.push_back(vars[i++]);
    return r;
}

int monoCmpGrlex(const Monomial& a, const Monomial& b) {
    int da = a.totalDegree(), db = b.totalDegree();
    if (da != db) return da < db ? -1 : 1;
    // lex: smaller id more significant; higher exponent there = larger monomial
    std::size_t i = 0, j = 0;
    while (i < a.vars.size() && j < b.vars.size()) {
        if (a.vars[i].first != b.vars[j].first) {
            // the one owning the smaller id has positive exponent there
            return a.vars[i].first < b.vars[j].first ? 1 : -1;
        }
        if (a.vars[i].second != b.vars[j].second)
            return a.vars[i].second < b.vars[j].second ? -1 : 1;
        ++i, ++j;
    }
    if (i < a.vars.size()) return 1;
    if (j < b.vars.size()) return -1;
    return 0;
}

bool MonoGrlexDesc::operator()(const Monomial& a, const Monomial& b) const {
    return monoCmpGrlex(a, b) > 0;
}

Polynomial::Polynomial(const Rational& c) {
    if (c != 0) terms_.emplace(Monomial::one(), c);
}

Polynomial Polynomial::variable(int id) {
    Polynomial p;
    p.terms_.emplace(Monomial::var(id), Rational(1));
    return p;
}

Polynomial Polynomial::fromTerm(const Rational& c, const Monomial& m) {
    Polynomial p;
    if (c != 0) p.terms_.emplace(m, c);
    return p;
}

Rational Polynomial::constantValue() const {
    if (terms_.empty()) return Rational(0);
    return terms_.begin()->second;
}

bool Polynomial::isOne() const {
    return terms_.size() == 1 && terms_.begin()->first.isOne() && terms_.begin()->second == 1;
}

const Monomial& Polynomial::leadingMonomial() const {
    static const Monomial kOne;
    return terms_.empty() ? kOne : terms_.begin()->first;
}

const Rational& Polynomial::leadingCoeff() const {
    static const Rational kZero(0);
    return terms_.empty() ? kZero : terms_.begin()->second;
}

Rational Polynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::totalDegree() const {
    return terms_.empty() ? -1 : terms_.begin()->first.totalDegree();
}

int Polynomial::degreeIn(int var) const {
    int d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.degreeIn(var));
    return d;
}

std::vector<int> Polynomial::variables() const {
    std::vector<int> out;
    for (auto& [m, c] : terms_)
        for (auto& [v, e] : m.vars) out.push_back(v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void Polynomial::addTerm(const Rational& c, const Monomial& m) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    for (auto& [m, c] : o.terms_) r.addTerm(c, m);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r = *this;
    for (auto& [m, c] : o.terms_) r.addTerm(-c, m);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial r;
    for (auto& [ma, ca] : terms_)
        for (auto& [mb, cb] : o.terms_) r.addTerm(ca * cb, ma.mul(mb));
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    if (c == 0) return Polynomial();
    Polynomial r = *this;
    for (auto& [m, cc] : r.terms_) cc *= c;
    return r;
}

Polynomial Polynomial::pow(int e) const {
    if (e < 0) throw std::domain_error("negative polynomial power");
    Polynomial r(Rational(1));
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

Polynomial Polynomial::derivative(int var) const {
    Polynomial r;
    for (auto& [m, c] : terms_) {
        int e = m.degreeIn(var);
        if (e == 0) continue;
        Monomial dm;
        for (auto& [v, ee] : m.vars) {
            int ne = (v == var) ? ee - 1 : ee;
            if (ne != 0) dm.vars.emplace_back(v, ne);
        }
        r.addTerm(c * Rational(e), dm);
    }
    return r;
}

Rational Polynomial::content() const {
    if (terms_.empty()) return Rational(0);
    Int num(0), den(1);
    for (auto& [m, c] : terms_) {
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rational r(num, den);
    r.canonicalize();
    if (leadingCoeff() < 0) r = -r;
    return r;
}

Polynomial Polynomial::primitivePart() const {
    if (terms_.empty()) return *this;
    Rational c = content();
    Polynomial r = *this;
    for (auto& [m, cc] : r.terms_) cc /= c;
    return r;
}

Rational Polynomial::evaluate(const std::map<int, Rational>& point) const {
    Rational total(0);
    for (auto& [m, c] : terms_) {
        Rational t = c;
        for (auto& [v, e] : m.vars) {
            auto it = point.find(v);
            if (it == point.end()) throw std::invalid_argument("unassigned variable: " + symName(v));
            t *= ratPowInt(it->second, e);
        }
        total += t;
    }
    return total;
}

Polynomial Polynomial::substitute(const std::map<int, Polynomial>& bindings) const {
    Polynomial total;
    for (auto& [m, c] : terms_) {
        Polynomial t(c);
        for (auto& [v, e] : m.vars) {
            auto it = bindings.find(v);
            if (it == bindings.end())
                t = t * Polynomial::fromTerm(Rational(1), Monomial::var(v, e));
            else
                t = t * it->second.pow(e);
        }
        total = total + t;
    }
    return total;
}

std::vector<Polynomial> Polynomial::univariate(int var) const {
    int d = degreeIn(var);
    std::vector<Polynomial> out(static_cast<std::size_t>(d) + 1);
    for (auto& [m, c] : terms_) {
        int e = m.degreeIn(var);
        Monomial rest;
        for (auto& [v, ee] : m.vars)
            if (v != var) rest.vars.emplace_back(v, ee);
        out[static_cast<std::size_t>(e)].addTerm(c, rest);
    }
    return out;
}

Polynomial Polynomial::fromUnivariate(int var, const std::vector<Polynomial>& coeffs) {
    Polynomial r;
    for (std::size_t d = 0; d < coeffs.size(); ++d) {
        Polynomial vd = Polynomial::fromTerm(Rational(1), Monomial::var(var, static_cast<int>(d)));
        r = r + coeffs[d] * vd;
    }
    return r;
}

Polynomial Polynomial::coeffOfPower(int var, int deg) const {
    Polynomial r;
    for (auto& [m, c] : terms_) {
        if (m.degreeIn(var) != deg) continue;
        Monomial rest;
        for (auto& [v, ee] : m.vars)
            if (v != var) rest.vars.emplace_back(v, ee);
        r.addTerm(c, rest);
    }
    return r;
}

Polynomial Polynomial::leadingCoeffIn(int var) const {
    return coeffOfPower(var, degreeIn(var));
}

bool Polynomial::tryDivideExact(const Polynomial& divisor, Polynomial& quotient) const {
    if (divisor.isZero()) return false;
    Polynomial rem = *this;
    Polynomial q;
    const Monomial& lmB = divisor.leadingMonomial();
    const Rational& lcB = divisor.leadingCoeff();
    while (!rem.isZero()) {
        auto qm = rem.leadingMonomial().tryDiv(lmB);
        if (!qm) return false;
        Rational qc = rem.leadingCoeff() / lcB;
        Polynomial t = Polynomial::fromTerm(qc, *qm);
        q = q + t;
        rem = rem - t * divisor;
    }
    quotient = q;
    return true;
}

int polyCmp(const Polynomial& a, const Polynomial& b) {
    auto ia = a.terms().begin(), ib = b.terms().begin();
    while (ia != a.terms().end() && ib != b.terms().end()) {
        int mc = monoCmpGrlex(ia->first, ib->first);
        if (mc != 0) return mc;
        int cc = cmp(ia->second, ib->second);
        if (cc != 0) return cc;
        ++ia, ++ib;
    }
    if (ia != a.terms().end()) return 1;
    if (ib != b.terms().end()) return -1;
    return 0;
}

namespace {

Polynomial divideExactOrThrow(const Polynomial& a, const Polynomial& b) {
    Polynomial q;
    if (!a.tryDivideExact(b, q)) throw std::logic_error("inexact polynomial division");
    return q;
}

// Pseudo-remainder of a by b with respect to var, fraction-free.
Polynomial prem(Polynomial a, const Polynomial& b, int var) {
    int db = b.degreeIn(var);
    Polynomial lcB = b.leadingCoeffIn(var);
    int e = a.degreeIn(var) - db + 1;
    while (!a.isZero() && a.degreeIn(var) >= db) {
        int da = a.degreeIn(var);
        Polynomial lcA = a.leadingCoeffIn(var);
        Polynomial shift = Polynomial::fromTerm(Rational(1), Monomial::var(var, da - db));
        a = a * lcB - lcA * shift * b;
        --e;
    }
    for (; e > 0; --e) a = a * lcB;
    return a;
}

// gcd of contents of coefficient list (recursive).
Polynomial gcdOfList(const std::vector<Polynomial>& ps) {
    Polynomial g;
    for (auto& p : ps) {
        if (p.isZero()) continue;
        g = g.isZero() ? p.primitivePart() : polyGcd(g, p);
        if (g.isOne()) break;
    }
    return g.isZero() ? Polynomial() : g;
}

// Subresultant PRS gcd for inputs primitive in var.
Polynomial gcdPrimitiveUnivar(Polynomial p, Polynomial q, int var) {
    if (p.degreeIn(var) < q.degreeIn(var)) std::swap(p, q);
    Polynomial g(Rational(1)), h(Rational(1));
    while (true) {
        int delta = p.degreeIn(var) - q.degreeIn(var);
        Polynomial r = prem(p, q, var);
        if (r.isZero()) break;
        if (r.degreeIn(var) == 0) return Polynomial(Rational(1));
        p = q;
        Polynomial denom = g * h.pow(delta);
        q = divideExactOrThrow(r, denom);
        g = p.leadingCoeffIn(var);
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            h = divideExactOrThrow(g.pow(delta), h.pow(delta - 1));
        }
    }
    // primitive part with respect to var
    Polynomial cont = gcdOfList(q.univariate(var));
    Polynomial pp = divideExactOrThrow(q, cont);
    return pp.primitivePart();
}

} // namespace

Polynomial polyGcd(const Polynomial& a, const Polynomial& b) {
    if (a.isZero()) return b.isZero() ? Polynomial() : b.primitivePart();
    if (b.isZero()) return a.primitivePart();
    Polynomial pa = a.primitivePart();
    Polynomial pb = b.primitivePart();
    if (pa == pb) return pa;
    if (pa.isConstant() || pb.isConstant()) return Polynomial(Rational(1));

    // quick exits: exact divisibility
    Polynomial q;
    if (pa.tryDivideExact(pb, q)) return pb;
    if (pb.tryDivideExact(pa, q)) return pa;

    auto varsA = pa.variables();
    auto varsB = pb.variables();
    std::vector<int> common;
    std::set_intersection(varsA.begin(), varsA.end(), varsB.begin(), varsB.end(),
                          std::back_inserter(common));
    if (common.empty()) return Polynomial(Rational(1));

    // main variable: smallest min-degree among common vars
    int var = common[0];
    int best = std::min(pa.degreeIn(var), pb.degreeIn(var));
    for (int v : common) {
        int d = std::min(pa.degreeIn(v), pb.degreeIn(v));
        if (d < best) {
            best = d;
            var = v;
        }
    }

    Polynomial contA = gcdOfList(pa.univariate(var));
    Polynomial contB = gcdOfList(pb.univariate(var));
    Polynomial ppA = divideExactOrThrow(pa, contA);
    Polynomial ppB = divideExactOrThrow(pb, contB);
    Polynomial g = gcdPrimitiveUnivar(ppA, ppB, var);
    Polynomial result = g * polyGcd(contA, contB);
    result = result.primitivePart();
    return result;
}

Polynomial squareFreePart(const Polynomial& p) {
    if (p.isZero() || p.isConstant()) return p.primitivePart();
    Polynomial out(Rational(1));
    Polynomial prev;
    for (const Polynomial& f : splitFactors(p)) {
        if (!prev.isZero() && f == prev) continue;
        out = out * f;
        prev = f;
    }
    return out;
}

namespace {

void splitInto(const Polynomial& p, std::vector<Polynomial>& out, int depth) {
    Polynomial pp = p.primitivePart();
    if (pp.isConstant()) return;
    if (pp.totalDegree() == 1 || depth > 32) {
        out.push_back(pp);
        return;
    }
    // content split along each variable
    for (int v : pp.variables()) {
        std::vector<Polynomial> uni = pp.univariate(v);
        Polynomial cont = gcdOfList(uni);
        if (!cont.isConstant()) {
            Polynomial q;
            pp.tryDivideExact(cont, q);
            splitInto(cont, out, depth + 1);
            splitInto(q, out, depth + 1);
            return;
        }
    }
    // squarefree split
    for (int v : pp.variables()) {
        Polynomial d = pp.derivative(v);
        if (d.isZero()) continue;
        Polynomial g = polyGcd(pp, d);
        if (!g.isConstant() && g != pp) {
            Polynomial q;
            pp.tryDivideExact(g, q);
            splitInto(g, out, depth + 1);
            splitInto(q, out, depth + 1);
            return;
        }
    }
    out.push_back(pp);
}

} // namespace

std::vector<Polynomial> splitFactors(const Polynomial& p) {
    std::vector<Polynomial> out;
    if (p.isZero()) return out;
    splitInto(p, out, 0);
    std::sort(out.begin(), out.end(), [](const Polynomial& a, const Polynomial& b) {
        return polyCmp(a, b) < 0;
    });
    return out;
}

std::string Polynomial::render() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        Rational ac = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool needCoeff = (ac != 1) || m.isOne();
        if (needCoeff) os << ratToString(ac);
        bool firstVar = !needCoeff;
        for (auto& [v, e] : m.vars) {
            if (!firstVar || needCoeff) os << "*";
            os << symName(v);
            if (e != 1) os << "^" << e;
            firstVar = false;
        }
    }
    return os.str();
}

} // namespace integralis
