#include "integralis/funcsys.hpp"

#include <algorithm>

namespace integralis {

bool FunctionalSystem::homogeneous() const {
    for (auto& r : rhs)
        if (!r.isZero()) return false;
    return true;
}

std::vector<RatFun> FunctionalSystem::residuals(const std::vector<RatFun>& v) const {
    std::vector<RatFun> out;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        RatFun acc = -rhs[r];
        for (std::size_t c = 0; c < v.size(); ++c) acc = acc + rows[r][c] * v[c];
        out.push_back(acc);
    }
    return out;
}

namespace {

RatFun asRatFunOrThrow(const Expression& e) {
    auto rf = e.asRatFun();
    if (!rf) throw UnsupportedOperation("functional systems require rational-function coefficients");
    return *rf;
}

void appendRow(FunctionalSystem& f, std::vector<RatFun> row, RatFun rhs) {
    bool allZero = rhs.isZero();
    for (auto& c : row)
        if (!c.isZero()) allZero = false;
    if (allZero) return;
    for (std::size_t r = 0; r < f.rows.size(); ++r) {
        if (f.rows[r] == row && f.rhs[r] == rhs) return; // drop exact duplicates
    }
    f.rows.push_back(std::move(row));
    f.rhs.push_back(std::move(rhs));
}

RatFun iteratedDerivative(RatFun v, int var, int order) {
    for (int i = 0; i < order; ++i) v = v.derivative(var);
    return v;
}

std::set<int> prefixVars(const std::vector<int>& vars, int count) {
    return std::set<int>(vars.begin(), vars.begin() + count);
}

struct RhsSpec {
    // rhs = fixed + sum_b lambda_{j,b} * basis_b  (lambda moved to the lhs)
    RatFun fixed;
    const std::vector<RatFun>* lambdaBasis = nullptr; // per family index j
    int lambdaBlock = -1;                             // offset of this family's lambda block
};

// One generic row builder: coefficient entries, derivative operator applied
// `order` times, optional lambda columns for the rhs basis.
void emitRows(FunctionalSystem& f, const std::vector<RatFun>& phiCoeffs, int psiIndex,
              const RhsSpec& rhs, const std::vector<std::pair<int, int>>& derivVarOrders) {
    const std::size_t numU = f.unknowns.size();
    auto makeRow = [&](int dvar, int order) {
        std::vector<RatFun> row(numU, RatFun(Rational(0)));
        if (psiIndex >= 0 && order == 0) row[static_cast<std::size_t>(psiIndex)] = RatFun(Rational(1));
        for (std::size_t i = 0; i < phiCoeffs.size(); ++i) {
            RatFun c = order ? iteratedDerivative(phiCoeffs[i], dvar, order) : phiCoeffs[i];
            row[static_cast<std::size_t>(f.numPsi) + i] = c;
        }
        RatFun r = order ? iteratedDerivative(rhs.fixed, dvar, order) : rhs.fixed;
        if (rhs.lambdaBasis) {
            for (std::size_t b = 0; b < rhs.lambdaBasis->size(); ++b) {
                RatFun bb = (*rhs.lambdaBasis)[b];
                if (order) bb = iteratedDerivative(bb, dvar, order);
                row[static_cast<std::size_t>(rhs.lambdaBlock) + b] = -bb;
            }
        }
        appendRow(f, std::move(row), std::move(r));
    };
    makeRow(0, 0);
    for (auto& [dvar, maxOrder] : derivVarOrders)
        for (int xi = 1; xi <= maxOrder; ++xi) makeRow(dvar, xi);
}

std::vector<RatFun> pdePhiCoeffs(const PdeSystem& s, int j, int k) {
    std::vector<RatFun> out;
    for (int xi = 0; xi < k; ++xi)
        out.push_back(asRatFunOrThrow(
            s.operators[static_cast<std::size_t>(j)].coeff(s.space.dependent[static_cast<std::size_t>(xi)])));
    return out;
}

std::vector<RatFun> tdPhiCoeffs(const TdSystem& s, int j, int k) {
    std::vector<RatFun> out;
    for (int xi = 0; xi < k; ++xi) out.push_back(asRatFunOrThrow(s.entry(xi, j)));
    return out;
}

FunctionalSystem pdeSkeleton(const PdeSystem& s, int k) {
    FunctionalSystem f;
    f.numPhi = k;
    std::set<int> allowed = prefixVars(s.space.dependent, k);
    for (int i = 1; i <= k; ++i) f.unknowns.push_back({"phi" + std::to_string(i), allowed});
    return f;
}

FunctionalSystem tdSkeleton(const TdSystem& s, int sNonaut, int k) {
    FunctionalSystem f;
    f.numPsi = sNonaut;
    f.numPhi = k;
    std::set<int> allowed = prefixVars(s.space.independent, sNonaut);
    auto xs = prefixVars(s.space.dependent, k);
    allowed.insert(xs.begin(), xs.end());
    for (int i = 1; i <= sNonaut; ++i) f.unknowns.push_back({"psi" + std::to_string(i), allowed});
    for (int i = 1; i <= k; ++i) f.unknowns.push_back({"phi" + std::to_string(i), allowed});
    return f;
}

std::vector<std::pair<int, int>> pdeDerivVars(const PdeSystem& s, int k, int order) {
    std::vector<std::pair<int, int>> out;
    for (int p = k; p < s.n(); ++p) out.emplace_back(s.space.dependent[static_cast<std::size_t>(p)], order);
    return out;
}

std::vector<std::pair<int, int>> tdDerivVars(const TdSystem& s, int sNonaut, int k, int order) {
    std::vector<std::pair<int, int>> out;
    for (int zeta = sNonaut; zeta < s.m(); ++zeta)
        out.emplace_back(s.space.independent[static_cast<std::size_t>(zeta)], order);
    for (int p = k; p < s.n(); ++p) out.emplace_back(s.space.dependent[static_cast<std::size_t>(p)], order);
    return out;
}

} // namespace

FunctionalSystem buildFiPde(const PdeSystem& s, int k, DerivOrders ords) {
    FunctionalSystem f = pdeSkeleton(s, k);
    int order = ords.nuOrder.value_or(k - 1);
    for (int j = 0; j < s.m(); ++j)
        emitRows(f, pdePhiCoeffs(s, j, k), -1, {RatFun(Rational(0)), nullptr, -1},
                 pdeDerivVars(s, k, order));
    return f;
}

FunctionalSystem buildFiTd(const TdSystem& s, int sNonaut, int k, DerivOrders ords) {
    FunctionalSystem f = tdSkeleton(s, sNonaut, k);
    int thetaOrder = ords.thetaOrder.value_or(k);
    int nuOrder = ords.nuOrder.value_or(k - 1);
    for (int j = 0; j < s.m(); ++j) {
        bool theta = j < sNonaut;
        emitRows(f, tdPhiCoeffs(s, j, k), theta ? j : -1, {RatFun(Rational(0)), nullptr, -1},
                 tdDerivVars(s, sNonaut, k, theta ? thetaOrder : nuOrder));
    }
    return f;
}

FunctionalSystem buildLmPde(const PdeSystem& s, int k, DerivOrders ords) {
    FunctionalSystem f = pdeSkeleton(s, k);
    int order = ords.nuOrder.value_or(k);
    for (int j = 0; j < s.m(); ++j) {
        RatFun div = asRatFunOrThrow(divergence(s.operators[static_cast<std::size_t>(j)]));
        emitRows(f, pdePhiCoeffs(s, j, k), -1, {-div, nullptr, -1}, pdeDerivVars(s, k, order));
    }
    return f;
}

FunctionalSystem buildLmTd(const TdSystem& s, int sNonaut, int k, DerivOrders ords) {
    FunctionalSystem f = tdSkeleton(s, sNonaut, k);
    int thetaOrder = ords.thetaOrder.value_or(k + 1);
    int nuOrder = ords.nuOrder.value_or(k);
    auto ops = inducedOperators(s);
    for (int j = 0; j < s.m(); ++j) {
        bool theta = j < sNonaut;
        RatFun div = asRatFunOrThrow(divergence(ops[static_cast<std::size_t>(j)]));
        emitRows(f, tdPhiCoeffs(s, j, k), theta ? j : -1, {-div, nullptr, -1},
                 tdDerivVars(s, sNonaut, k, theta ? thetaOrder : nuOrder));
    }
    return f;
}

std::vector<Expression> defaultResidualBasis(const std::vector<Expression>& coeffEntries) {
    std::vector<Expression> basis;
    auto push = [&](const Expression& e) {
        if (e.isZero()) return;
        for (auto& b : basis)
            if ((b - e).isZero()) return;
        basis.push_back(e);
    };
    for (auto& e : coeffEntries) push(e);
    for (std::size_t i = 0; i < coeffEntries.size(); ++i)
        for (std::size_t j = i; j < coeffEntries.size(); ++j) {
            Expression prod = coeffEntries[i] * coeffEntries[j];
            auto rf = prod.asRatFun();
            if (rf && rf->isPolynomial() && rf->num().totalDegree() <= 2) push(prod);
        }
    return basis;
}

namespace {

FunctionalSystem withLambdas(FunctionalSystem f, int families, const std::vector<RatFun>& basis) {
    f.numLambda = families * static_cast<int>(basis.size());
    for (int j = 1; j <= families; ++j)
        for (std::size_t b = 0; b < basis.size(); ++b)
            f.unknowns.push_back({"lambda" + std::to_string(j) + "_" + std::to_string(b + 1), {}});
    return f;
}

} // namespace

FunctionalSystem buildPiPde(const PdeSystem& s, int k, const std::vector<Expression>& residualBasis,
                            DerivOrders ords) {
    std::vector<RatFun> basis;
    for (auto& e : residualBasis) basis.push_back(asRatFunOrThrow(e));
    FunctionalSystem f = withLambdas(pdeSkeleton(s, k), s.m(), basis);
    int order = ords.nuOrder.value_or(k - 1);
    for (int j = 0; j < s.m(); ++j) {
        RhsSpec rhs{RatFun(Rational(0)), &basis,
                    f.numPsi + f.numPhi + j * static_cast<int>(basis.size())};
        emitRows(f, pdePhiCoeffs(s, j, k), -1, rhs, pdeDerivVars(s, k, order));
    }
    return f;
}

FunctionalSystem buildPiTd(const TdSystem& s, int sNonaut, int k,
                           const std::vector<Expression>& residualBasis, DerivOrders ords) {
    std::vector<RatFun> basis;
    for (auto& e : residualBasis) basis.push_back(asRatFunOrThrow(e));
    FunctionalSystem f = withLambdas(tdSkeleton(s, sNonaut, k), s.m(), basis);
    int thetaOrder = ords.thetaOrder.value_or(k);
    int nuOrder = ords.nuOrder.value_or(k - 1);
    for (int j = 0; j < s.m(); ++j) {
        bool theta = j < sNonaut;
        RhsSpec rhs{RatFun(Rational(0)), &basis,
                    f.numPsi + f.numPhi + j * static_cast<int>(basis.size())};
        emitRows(f, tdPhiCoeffs(s, j, k), theta ? j : -1, rhs,
                 tdDerivVars(s, sNonaut, k, theta ? thetaOrder : nuOrder));
    }
    return f;
}

namespace {

// Scale a rational-function vector to a primitive polynomial vector with a
// deterministic sign.
std::vector<RatFun> normalizeVector(const std::vector<RatFun>& v) {
    Polynomial lcmDen(Rational(1));
    for (auto& c : v) {
        Polynomial g = polyGcd(lcmDen, c.den());
        Polynomial q;
        c.den().tryDivideExact(g, q);
        lcmDen = lcmDen * q;
    }
    std::vector<Polynomial> nums;
    Polynomial gcdNum;
    for (auto& c : v) {
        Polynomial q;
        lcmDen.tryDivideExact(c.den(), q);
        Polynomial scaled = c.num() * q;
        nums.push_back(scaled);
        gcdNum = gcdNum.isZero() ? scaled : (scaled.isZero() ? gcdNum : polyGcd(gcdNum, scaled));
    }
    if (gcdNum.isZero()) return v;
    Rational content(0);
    for (auto& p : nums) {
        if (p.isZero()) continue;
        Rational c = p.content();
        if (c < 0) c = -c;
        if (content == 0)
            content = c;
        else {
            // gcd of rationals: gcd(num)/lcm(den)
            Int gn, ld;
            mpz_gcd(gn.get_mpz_t(), content.get_num().get_mpz_t(), c.get_num().get_mpz_t());
            mpz_lcm(ld.get_mpz_t(), content.get_den().get_mpz_t(), c.get_den().get_mpz_t());
            content = Rational(gn, ld);
            content.canonicalize();
        }
    }
    Polynomial divisor = gcdNum * content;
    std::vector<RatFun> out;
    bool signFixed = false;
    Rational sign(1);
    for (auto& p : nums) {
        Polynomial q;
        if (!p.tryDivideExact(divisor, q)) {
            // content mismatch; fall back to gcd only
            p.tryDivideExact(gcdNum, q);
        }
        if (!signFixed && !q.isZero()) {
            signFixed = true;
            if (q.leadingCoeff() < 0) sign = -1;
        }
        out.push_back(RatFun(q * sign));
    }
    return out;
}

} // namespace

SolutionFamily solve(const FunctionalSystem& f) {
    SolutionFamily fam;
    auto sol = solveLinearRF(f.rows, f.rhs, static_cast<int>(f.numUnknowns()));
    fam.consistent = sol.consistent;
    fam.rank = sol.rank;
    if (!sol.consistent) return fam;
    bool homog = f.homogeneous();
    if (!homog) fam.particular = sol.particular;
    for (auto& v : sol.nullspace) fam.nullspaceBasis.push_back(normalizeVector(v));
    // re-verify every vector by substitution
    if (fam.particular) {
        for (auto& r : f.residuals(*fam.particular))
            if (!r.isZero()) throw std::logic_error("particular solution fails re-verification");
    }
    std::vector<RatFun> zero(f.numUnknowns(), RatFun(Rational(0)));
    for (auto& v : fam.nullspaceBasis) {
        std::vector<RatFun> res = f.residuals(v);
        // nullspace vectors satisfy the homogeneous part
        std::vector<RatFun> base = f.residuals(zero);
        for (std::size_t i = 0; i < res.size(); ++i)
            if (!(res[i] - base[i]).isZero())
                throw std::logic_error("nullspace vector fails re-verification");
    }
    return fam;
}

QLinearSolution solveForConstants(const std::vector<std::vector<RatFun>>& rows,
                                  const std::vector<RatFun>& rhs) {
    // clear denominators per condition, then match monomial coefficients
    QMatrix qa;
    std::vector<Rational> qb;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        Polynomial common(Rational(1));
        auto foldDen = [&](const Polynomial& den) {
            Polynomial g = polyGcd(common, den);
            Polynomial q;
            den.tryDivideExact(g, q);
            common = common * q;
        };
        for (auto& c : rows[r]) foldDen(c.den());
        foldDen(rhs[r].den());
        std::vector<Polynomial> cleared;
        for (auto& c : rows[r]) {
            Polynomial q;
            common.tryDivideExact(c.den(), q);
            cleared.push_back(c.num() * q);
        }
        Polynomial clearedRhs;
        {
            Polynomial q;
            common.tryDivideExact(rhs[r].den(), q);
            clearedRhs = rhs[r].num() * q;
        }
        // collect monomials
        std::map<Monomial, std::vector<Rational>, MonoGrlexDesc> byMono;
        auto touch = [&](const Monomial& m) -> std::vector<Rational>& {
            auto it = byMono.find(m);
            if (it == byMono.end())
                it = byMono.emplace(m, std::vector<Rational>(rows[r].size() + 1, Rational(0))).first;
            return it->second;
        };
        for (std::size_t c = 0; c < cleared.size(); ++c)
            for (auto& [m, coef] : cleared[c].terms()) touch(m)[c] = coef;
        for (auto& [m, coef] : clearedRhs.terms()) touch(m)[rows[r].size()] = coef;
        for (auto& [m, vec] : byMono) {
            qa.emplace_back(vec.begin(), vec.end() - 1);
            qb.push_back(vec.back());
        }
    }
    if (qa.empty() && !rows.empty()) {
        // all conditions vacuous
        QLinearSolution s;
        s.consistent = true;
        s.particular.assign(rows[0].size(), Rational(0));
        for (std::size_t c = 0; c < rows[0].size(); ++c) {
            std::vector<Rational> v(rows[0].size(), Rational(0));
            v[c] = 1;
            s.nullspace.push_back(std::move(v));
        }
        return s;
    }
    return solveLinearQ(std::move(qa), std::move(qb));
}

SolutionFamily restrict(const FunctionalSystem& f, SolutionFamily sol) {
    if (!sol.consistent) return sol;
    const std::size_t nu = f.numUnknowns();
    std::vector<RatFun> base(nu, RatFun(Rational(0)));
    if (sol.particular) base = *sol.particular;
    const auto& dirs = sol.nullspaceBasis;

    // forbidden-partial conditions, linear in the combiners c
    std::vector<std::vector<RatFun>> rows;
    std::vector<RatFun> rhs;
    std::set<int> allVars;
    for (auto& r : f.rows)
        for (auto& c : r)
            for (int v : c.variables()) allVars.insert(v);
    for (auto& r : f.rhs)
        for (int v : r.variables()) allVars.insert(v);
    for (auto& v : dirs)
        for (auto& c : v)
            for (int vv : c.variables()) allVars.insert(vv);
    for (auto& c : base)
        for (int vv : c.variables()) allVars.insert(vv);

    for (std::size_t u = 0; u < nu; ++u) {
        for (int var : allVars) {
            if (f.unknowns[u].allowedVars.count(var)) continue;
            bool relevant = base[u].dependsOn(var);
            for (auto& d : dirs) relevant = relevant || d[u].dependsOn(var);
            if (!relevant) continue;
            std::vector<RatFun> row;
            for (auto& d : dirs) row.push_back(d[u].derivative(var));
            rows.push_back(std::move(row));
            rhs.push_back(-base[u].derivative(var));
        }
    }

    sol.restrictedVectors.clear();
    auto assemble = [&](const std::vector<Rational>& c, bool includeBase) {
        std::vector<RatFun> v(nu, RatFun(Rational(0)));
        if (includeBase) v = base;
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            if (c[i] == 0) continue;
            for (std::size_t u = 0; u < nu; ++u) v[u] = v[u] + RatFun(c[i]) * dirs[i][u];
        }
        return v;
    };

    if (rows.empty()) {
        // everything already restricted
        if (sol.particular) {
            sol.restrictedVectors.push_back(base);
            for (auto& d : dirs) {
                std::vector<RatFun> v = base;
                for (std::size_t u = 0; u < nu; ++u) v[u] = v[u] + d[u];
                sol.restrictedVectors.push_back(v);
            }
        } else {
            sol.restrictedVectors = dirs;
        }
        return sol;
    }

    auto q = solveForConstants(rows, rhs);
    if (!q.consistent) return sol; // no restricted solutions
    if (sol.particular) {
        std::vector<RatFun> p = assemble(q.particular, true);
        sol.restrictedVectors.push_back(p);
        for (auto& d : q.nullspace) {
            std::vector<RatFun> shift = assemble(d, false);
            std::vector<RatFun> v = p;
            for (std::size_t u = 0; u < nu; ++u) v[u] = v[u] + shift[u];
            sol.restrictedVectors.push_back(v);
        }
    } else {
        for (auto& d : q.nullspace) {
            std::vector<RatFun> v = assemble(d, false);
            bool nonzero = false;
            for (auto& c : v) nonzero = nonzero || !c.isZero();
            if (nonzero) sol.restrictedVectors.push_back(normalizeVector(v));
        }
    }
    return sol;
}

IndependenceCertificate independentFamily(const std::vector<std::vector<RatFun>>& vectors) {
    IndependenceCertificate cert;
    if (vectors.empty()) return cert;
    RFMatrix M = vectors;
    cert.q = rankRF(M);
    cert.minor = nonzeroMinor(vectors, cert.q);
    return cert;
}

} // namespace integralis
