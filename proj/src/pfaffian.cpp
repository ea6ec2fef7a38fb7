#include "integralis/pfaffian.hpp"

#include <algorithm>
#include <functional>

#include "integralis/funcsys.hpp"
#include "integralis/linalg.hpp"

namespace integralis {

Expression PfaffForm::coeff(int var) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (variables[i] == var) return coefficients[i];
    return Expression();
}

ClosednessReport isClosed(const PfaffForm& f) {
    ClosednessReport rep;
    rep.closed = true;
    for (std::size_t a = 0; a < f.variables.size(); ++a) {
        for (std::size_t b = a + 1; b < f.variables.size(); ++b) {
            Expression r = f.coefficients[b].differentiate(f.variables[a]) -
                           f.coefficients[a].differentiate(f.variables[b]);
            if (!r.isZero()) rep.closed = false;
            rep.residuals.emplace_back(f.variables[a], f.variables[b], std::move(r));
        }
    }
    return rep;
}

namespace {

// ---- univariate polynomials over the rational-function field ----

using UPoly = std::vector<RatFun>; // ascending degree, no trailing zeros

void upTrim(UPoly& p) {
    while (!p.empty() && p.back().isZero()) p.pop_back();
}

int upDeg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly upFromPoly(const Polynomial& p, int var) {
    UPoly out;
    for (auto& c : p.univariate(var)) out.push_back(RatFun(c));
    upTrim(out);
    return out;
}

UPoly upSub(const UPoly& a, const UPoly& b) {
    UPoly r = a;
    if (b.size() > r.size()) r.resize(b.size(), RatFun(Rational(0)));
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] - b[i];
    upTrim(r);
    return r;
}

UPoly upScale(const UPoly& a, const RatFun& c) {
    UPoly r;
    for (auto& x : a) r.push_back(x * c);
    upTrim(r);
    return r;
}

UPoly upMul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, RatFun(Rational(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    upTrim(r);
    return r;
}

// division with remainder over the field
std::pair<UPoly, UPoly> upDivMod(UPoly a, const UPoly& b) {
    if (b.empty()) throw DivisionByZero();
    UPoly q;
    int db = upDeg(b);
    if (upDeg(a) >= db) q.assign(static_cast<std::size_t>(upDeg(a) - db) + 1, RatFun(Rational(0)));
    while (upDeg(a) >= db) {
        int shift = upDeg(a) - db;
        RatFun c = a.back() / b.back();
        q[static_cast<std::size_t>(shift)] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[static_cast<std::size_t>(shift) + i] = a[static_cast<std::size_t>(shift) + i] - c * b[i];
        upTrim(a);
    }
    upTrim(q);
    return {q, a};
}

UPoly upMonic(UPoly p) {
    if (p.empty()) return p;
    RatFun lc = p.back();
    for (auto& c : p) c = c / lc;
    return p;
}

UPoly upGcd(UPoly a, UPoly b) {
    upTrim(a);
    upTrim(b);
    while (!b.empty()) {
        auto [q, r] = upDivMod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return upMonic(a);
}

UPoly upDeriv(const UPoly& p) {
    UPoly r;
    for (std::size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * RatFun(Rational(static_cast<long>(i))));
    upTrim(r);
    return r;
}

RatFun upEval(const UPoly& p, const RatFun& x) {
    RatFun r{Rational(0)};
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

RatFun upToRatFun(const UPoly& p, int var) {
    RatFun r{Rational(0)};
    RatFun v = RatFun::variable(var);
    for (std::size_t i = p.size(); i-- > 0;) r = r * v + p[i];
    return r;
}

// clear field denominators and content: primitive Polynomial with the same
// v-roots
Polynomial upClearToPoly(const UPoly& p, int var) {
    Polynomial common(Rational(1));
    for (auto& c : p) {
        Polynomial g = polyGcd(common, c.den());
        Polynomial q;
        c.den().tryDivideExact(g, q);
        common = common * q;
    }
    Polynomial out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        Polynomial q;
        common.tryDivideExact(p[i].den(), q);
        out = out + p[i].num() * q * Polynomial::fromTerm(Rational(1), Monomial::var(var, static_cast<int>(i)));
    }
    return out.primitivePart();
}

struct LogPart {
    Polynomial base;   // primitive, positive leading
    Rational residue;  // constant
};

struct IntegralPieces {
    RatFun rational;           // log-free antiderivative
    std::vector<LogPart> logs; // sum of residue * ln(base)
};

void mergeLog(std::vector<LogPart>& logs, const Polynomial& base, const Rational& residue) {
    if (residue == 0) return;
    for (auto& l : logs) {
        if (l.base == base) {
            l.residue += residue;
            return;
        }
    }
    logs.push_back({base, residue});
}

// exact integral of a rational function with respect to var:
// Horowitz/Ostrogradsky reduction, then constant residues over the factored
// squarefree denominator.
IntegralPieces integrateRationalInVar(const RatFun& f, int var) {
    IntegralPieces out;
    out.rational = RatFun(Rational(0));
    if (f.isZero()) return out;
    UPoly A = upFromPoly(f.num(), var);
    UPoly D = upFromPoly(f.den(), var);

    // polynomial part
    auto [Q, Rem] = upDivMod(A, D);
    if (!Q.empty()) {
        UPoly intQ(Q.size() + 1, RatFun(Rational(0)));
        for (std::size_t i = 0; i < Q.size(); ++i)
            intQ[i + 1] = Q[i] / RatFun(Rational(static_cast<long>(i + 1)));
        out.rational = out.rational + upToRatFun(intQ, var);
    }
    if (Rem.empty()) return out;
    if (upDeg(D) == 0) throw std::logic_error("nonzero remainder with unit denominator");

    UPoly C = Rem;
    UPoly Dstar = D;
    UPoly Dm = upGcd(D, upDeriv(D));
    if (upDeg(Dm) > 0) {
        // Horowitz: Rem/D = (B/Dm)' + C/Dstar,
        //   Rem = B'*Dstar - B*T + C*Dm,  T = Dm' * Dstar / Dm
        auto [Ds, rem0] = upDivMod(D, Dm);
        if (!rem0.empty()) throw std::logic_error("gcd does not divide denominator");
        Dstar = Ds;
        auto [T, rem1] = upDivMod(upMul(upDeriv(Dm), Dstar), Dm);
        if (!rem1.empty()) throw std::logic_error("hermite T is not polynomial");
        int nb = upDeg(Dm);      // unknowns B_0..B_{nb-1}
        int nc = upDeg(Dstar);   // unknowns C_0..C_{nc-1}
        int rows = std::max(upDeg(D), upDeg(Rem) + 1);
        rows = std::max(rows, nb + std::max(upDeg(Dstar), upDeg(T)) + 1);
        rows = std::max(rows, nc + upDeg(Dm) + 1);
        RFMatrix M(static_cast<std::size_t>(rows),
                   std::vector<RatFun>(static_cast<std::size_t>(nb + nc), RatFun(Rational(0))));
        std::vector<RatFun> rhs(static_cast<std::size_t>(rows), RatFun(Rational(0)));
        for (int d = 0; d <= upDeg(Rem); ++d) rhs[static_cast<std::size_t>(d)] = Rem[static_cast<std::size_t>(d)];
        // B_i contributes i*v^{i-1}*Dstar - v^i*T
        for (int i = 0; i < nb; ++i) {
            for (int d = 0; d <= upDeg(Dstar); ++d) {
                if (i >= 1) {
                    int row = i - 1 + d;
                    M[static_cast<std::size_t>(row)][static_cast<std::size_t>(i)] =
                        M[static_cast<std::size_t>(row)][static_cast<std::size_t>(i)] +
                        RatFun(Rational(i)) * Dstar[static_cast<std::size_t>(d)];
                }
            }
            for (int d = 0; d <= upDeg(T); ++d) {
                int row = i + d;
                M[static_cast<std::size_t>(row)][static_cast<std::size_t>(i)] =
                    M[static_cast<std::size_t>(row)][static_cast<std::size_t>(i)] - T[static_cast<std::size_t>(d)];
            }
        }
        // C_i contributes v^i * Dm
        for (int i = 0; i < nc; ++i) {
            for (int d = 0; d <= upDeg(Dm); ++d) {
                int row = i + d;
                M[static_cast<std::size_t>(row)][static_cast<std::size_t>(nb + i)] =
                    M[static_cast<std::size_t>(row)][static_cast<std::size_t>(nb + i)] + Dm[static_cast<std::size_t>(d)];
            }
        }
        auto sol = solveLinearRF(M, rhs, nb + nc);
        if (!sol.consistent) throw std::logic_error("hermite reduction failed");
        UPoly B(static_cast<std::size_t>(nb), RatFun(Rational(0)));
        for (int i = 0; i < nb; ++i) B[static_cast<std::size_t>(i)] = sol.particular[static_cast<std::size_t>(i)];
        upTrim(B);
        C.assign(static_cast<std::size_t>(nc), RatFun(Rational(0)));
        for (int i = 0; i < nc; ++i) C[static_cast<std::size_t>(i)] = sol.particular[static_cast<std::size_t>(nb + i)];
        upTrim(C);
        if (!B.empty()) out.rational = out.rational + upToRatFun(B, var) / upToRatFun(Dm, var);
    }
    if (C.empty()) return out;

    // log part: C/Dstar with Dstar squarefree in var
    UPoly DstarDeriv = upDeriv(Dstar);
    // global shortcut: C = c * Dstar' for a rational constant c
    if (upDeg(C) == upDeg(DstarDeriv)) {
        RatFun ratio = C.back() / DstarDeriv.back();
        if (ratio.isConstant()) {
            UPoly diff = upSub(C, upScale(DstarDeriv, ratio));
            if (diff.empty()) {
                mergeLog(out.logs, upClearToPoly(Dstar, var), ratio.constantValue());
                return out;
            }
        }
    }
    Polynomial cleared = upClearToPoly(Dstar, var);
    std::vector<LogPart> logs;
    for (auto& factor : splitFactors(cleared)) {
        int dv = factor.degreeIn(var);
        if (dv == 0) continue;
        if (dv > 1)
            throw UnsupportedOperation(
                "unsupported antiderivative: non-linear denominator factor " + factor.render());
        // factor = a*var + b, root -b/a
        Polynomial a = factor.coeffOfPower(var, 1);
        Polynomial b = factor.coeffOfPower(var, 0);
        RatFun root = RatFun(-b, a);
        RatFun denAtRoot = upEval(DstarDeriv, root);
        if (denAtRoot.isZero()) throw std::logic_error("squarefree part has repeated root");
        RatFun residue = upEval(C, root) / denAtRoot;
        if (!residue.isConstant())
            throw UnsupportedOperation("unsupported antiderivative: non-constant residue " +
                                       residue.render());
        logs.push_back({factor, residue.constantValue()});
    }
    // verify the residue expansion reproduces C/Dstar exactly
    RatFun check = upToRatFun(C, var) / upToRatFun(Dstar, var);
    for (auto& l : logs)
        check = check - RatFun(l.base.derivative(var), l.base) * RatFun(l.residue);
    if (!check.isZero())
        throw UnsupportedOperation("unsupported antiderivative: residues do not close");
    for (auto& l : logs) mergeLog(out.logs, l.base, l.residue);
    return out;
}

// d/dvar of accumulated log parts, as a rational function
RatFun logsDerivative(const std::vector<LogPart>& logs, int var) {
    RatFun r{Rational(0)};
    for (auto& l : logs) {
        Polynomial db = l.base.derivative(var);
        if (db.isZero()) continue;
        r = r + RatFun(l.residue) * RatFun(db, l.base);
    }
    return r;
}

// integral of an expression term in var; rational terms may produce logs
// (collected), exp terms integrate by parts.
Expression integrateTermInVar(const ExTerm& t, int var, std::vector<LogPart>* logsOut) {
    for (auto& rf : t.rads)
        if (rf.base.dependsOn(var))
            throw UnsupportedOperation("unsupported antiderivative: radical factor in " + symName(var));
    Polynomial expDeriv = t.expArg.derivative(var);
    if (expDeriv.isZero()) {
        IntegralPieces pieces = integrateRationalInVar(t.coeff, var);
        if (!pieces.logs.empty()) {
            if (!logsOut)
                throw UnsupportedOperation("unsupported antiderivative: logarithmic part");
            if (!t.rads.empty() || !t.expArg.isZero())
                throw UnsupportedOperation("unsupported antiderivative: log under exp/radical");
            for (auto& l : pieces.logs) mergeLog(*logsOut, l.base, l.residue);
        }
        if (pieces.rational.isZero()) return Expression();
        ExTerm r{pieces.rational, t.rads, t.expArg};
        return Expression::fromTerms({r});
    }
    if (!expDeriv.isConstant())
        throw UnsupportedOperation("unsupported antiderivative: exp of nonlinear argument in " +
                                   symName(var));
    Rational c = expDeriv.constantValue();
    if (t.coeff.den().dependsOn(var))
        throw UnsupportedOperation("unsupported antiderivative: rational coefficient under exp");
    // integration by parts: int A e^{cv} = e^{cv} sum_j (-1)^j A^(j) / c^{j+1}
    RatFun B{Rational(0)};
    RatFun Aj = t.coeff;
    Rational cpow = c;
    int sign = 1;
    while (!Aj.isZero()) {
        B = B + RatFun(Rational(sign)) * Aj / RatFun(cpow);
        Aj = Aj.derivative(var);
        cpow *= c;
        sign = -sign;
    }
    ExTerm r{B, t.rads, t.expArg};
    return Expression::fromTerms({r});
}

Expression integrateExpressionInVar(const Expression& e, int var, std::vector<LogPart>* logsOut) {
    Expression out;
    for (auto& t : e.terms()) out = out + integrateTermInVar(t, var, logsOut);
    return out;
}

} // namespace

Expression potential(const PfaffForm& f) {
    Expression F;
    for (std::size_t i = 0; i < f.variables.size(); ++i) {
        int v = f.variables[i];
        Expression target = f.coefficients[i] - F.differentiate(v);
        F = F + integrateExpressionInVar(target, v, nullptr);
    }
    for (std::size_t i = 0; i < f.variables.size(); ++i) {
        if (!(F.differentiate(f.variables[i]) - f.coefficients[i]).isZero())
            throw UnsupportedOperation("unsupported antiderivative: form is not exact over the class");
    }
    return F;
}

std::optional<Polynomial> findExpMultiplier(const PfaffForm& f, int degreeBound) {
    std::vector<RatFun> coeffs;
    for (auto& c : f.coefficients) {
        auto rf = c.asRatFun();
        if (!rf) throw UnsupportedOperation("multiplier search requires rational coefficients");
        coeffs.push_back(*rf);
    }
    const auto& vars = f.variables;
    // candidate monomials of g by total degree (constant omitted)
    std::vector<Monomial> monos;
    std::function<void(std::size_t, int, Monomial)> gen = [&](std::size_t idx, int degLeft, Monomial m) {
        if (idx == vars.size()) {
            if (!m.isOne()) monos.push_back(m);
            return;
        }
        for (int e = 0; e <= degLeft; ++e) {
            Monomial mm = m;
            if (e) mm.vars.emplace_back(vars[idx], e);
            gen(idx + 1, degLeft - e, mm);
        }
    };
    for (int degree = 1; degree <= degreeBound; ++degree) {
        monos.clear();
        gen(0, degree, Monomial::one());
        std::sort(monos.begin(), monos.end(),
                  [](const Monomial& a, const Monomial& b) { return monoCmpGrlex(a, b) < 0; });
        std::vector<std::vector<RatFun>> rows;
        std::vector<RatFun> rhs;
        for (std::size_t a = 0; a < vars.size(); ++a) {
            for (std::size_t b = a + 1; b < vars.size(); ++b) {
                std::vector<RatFun> row;
                for (auto& m : monos) {
                    Polynomial pm = Polynomial::fromTerm(Rational(1), m);
                    row.push_back(coeffs[b] * RatFun(pm.derivative(vars[a])) -
                                  coeffs[a] * RatFun(pm.derivative(vars[b])));
                }
                rows.push_back(std::move(row));
                rhs.push_back(RatFun(coeffs[a].derivative(vars[b])) -
                              RatFun(coeffs[b].derivative(vars[a])));
            }
        }
        auto sol = solveForConstants(rows, rhs);
        if (!sol.consistent) continue;
        Polynomial g;
        for (std::size_t i = 0; i < monos.size(); ++i) g.addTerm(sol.particular[i], monos[i]);
        return g;
    }
    return std::nullopt;
}

Expression expOfIntegral(const PfaffForm& f) {
    auto closed = isClosed(f);
    if (!closed.closed) throw UnsupportedOperation("exp-integral of a non-closed form");
    RatFun G{Rational(0)};
    std::vector<LogPart> logs;
    for (std::size_t i = 0; i < f.variables.size(); ++i) {
        int v = f.variables[i];
        auto rf = f.coefficients[i].asRatFun();
        if (!rf) throw UnsupportedOperation("unsupported exp-integral: non-rational coefficient");
        RatFun target = *rf - G.derivative(v) - logsDerivative(logs, v);
        IntegralPieces pieces = integrateRationalInVar(target, v);
        G = G + pieces.rational;
        for (auto& l : pieces.logs) mergeLog(logs, l.base, l.residue);
    }
    if (!G.isPolynomial())
        throw UnsupportedOperation("unsupported exp-integral: non-polynomial rational part " +
                                   G.render());
    ExTerm t;
    t.coeff = RatFun(Rational(1));
    t.expArg = G.num();
    for (auto& l : logs) t.rads.push_back({l.base, l.residue});
    Expression mu = Expression::fromTerms({t});
    for (std::size_t i = 0; i < f.variables.size(); ++i) {
        Expression resid = mu.differentiate(f.variables[i]) - f.coefficients[i] * mu;
        if (!resid.isZero())
            throw UnsupportedOperation("unsupported exp-integral: verification failed");
    }
    return mu;
}

std::optional<IntegrationResult> generalIntegral(const PfaffForm& f, int degreeBound) {
    auto finish = [&](const Expression& mult, IntegrationKind kind) -> std::optional<IntegrationResult> {
        PfaffForm scaled = f;
        for (auto& c : scaled.coefficients) c = c * mult;
        if (!isClosed(scaled).closed) return std::nullopt;
        Expression F;
        try {
            F = potential(scaled);
        } catch (const UnsupportedOperation&) {
            return std::nullopt;
        }
        for (std::size_t i = 0; i < f.variables.size(); ++i) {
            if (!(F.differentiate(f.variables[i]) - mult * f.coefficients[i]).isZero())
                return std::nullopt;
        }
        return IntegrationResult{mult, F, kind};
    };
    if (isClosed(f).closed) {
        auto r = finish(Expression(1L), IntegrationKind::Exact);
        if (r) return r;
    }
    std::optional<Polynomial> g;
    try {
        g = findExpMultiplier(f, degreeBound);
    } catch (const UnsupportedOperation&) {
        return std::nullopt;
    }
    if (g && !g->isZero()) {
        auto r = finish(Expression::expOf(*g), IntegrationKind::ExpMultiplier);
        if (r) return r;
    }
    return std::nullopt;
}

} // namespace integralis
