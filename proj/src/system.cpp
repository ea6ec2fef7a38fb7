#include "integralis/system.hpp"

#include <algorithm>

namespace integralis {

bool VariableSpace::isDependent(int var) const {
    return std::find(dependent.begin(), dependent.end(), var) != dependent.end();
}

bool VariableSpace::isIndependent(int var) const {
    return std::find(independent.begin(), independent.end(), var) != independent.end();
}

Expression LinearOperator::coeff(int var) const {
    if (unitTimeIndex && space.independent[static_cast<std::size_t>(*unitTimeIndex)] == var)
        return Expression(1L);
    auto it = coefficients.find(var);
    return it == coefficients.end() ? Expression() : it->second;
}

bool LinearOperator::isNull() const {
    if (unitTimeIndex) return false;
    for (auto& [v, c] : coefficients)
        if (!c.isZero()) return false;
    return true;
}

Expression applyOperator(const LinearOperator& op, const Expression& e) {
    Expression out;
    for (auto& [v, c] : op.coefficients) {
        if (c.isZero()) continue;
        out = out + c * e.differentiate(v);
    }
    if (op.unitTimeIndex)
        out = out + e.differentiate(op.space.independent[static_cast<std::size_t>(*op.unitTimeIndex)]);
    return out;
}

LinearOperator poissonBracket(const LinearOperator& a, const LinearOperator& b) {
    LinearOperator r;
    r.space = a.space;
    std::vector<int> allVars = a.space.independent;
    allVars.insert(allVars.end(), a.space.dependent.begin(), a.space.dependent.end());
    for (int v : allVars) {
        // unit time terms enter as constant coefficients, so A(1)=B(1)=0
        Expression c = applyOperator(a, b.coeff(v)) - applyOperator(b, a.coeff(v));
        if (!c.isZero()) r.coefficients.emplace(v, std::move(c));
    }
    return r;
}

Expression divergence(const LinearOperator& op) {
    Expression out;
    for (int v : op.space.dependent) out = out + op.coeff(v).differentiate(v);
    return out;
}

std::vector<LinearOperator> inducedOperators(const TdSystem& s) {
    std::vector<LinearOperator> ops;
    for (int j = 0; j < s.m(); ++j) {
        LinearOperator op;
        op.space = s.space;
        op.unitTimeIndex = j;
        for (int i = 0; i < s.n(); ++i) {
            if (!s.X[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].isZero())
                op.coefficients.emplace(s.space.dependent[static_cast<std::size_t>(i)],
                                        s.X[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        }
        ops.push_back(std::move(op));
    }
    return ops;
}

PdeSystem associatedSystem(const TdSystem& s) {
    PdeSystem p;
    // all m+n coordinates are differentiation variables of the operators
    p.space.dependent = s.space.independent;
    p.space.dependent.insert(p.space.dependent.end(), s.space.dependent.begin(),
                             s.space.dependent.end());
    for (auto& op : inducedOperators(s)) {
        LinearOperator q;
        q.space = p.space;
        q.coefficients = op.coefficients;
        q.coefficients.emplace(s.space.independent[static_cast<std::size_t>(*op.unitTimeIndex)],
                               Expression(1L));
        p.operators.push_back(std::move(q));
    }
    return p;
}

FrobeniusReport isFrobeniusSolvable(const TdSystem& s, Exec policy) {
    FrobeniusReport rep;
    const int n = s.n(), m = s.m();
    struct Cell {
        int i, j, zeta;
    };
    std::vector<Cell> cells;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            for (int zeta = j + 1; zeta < m; ++zeta) cells.push_back({i, j, zeta});
    std::vector<Expression> residuals(cells.size());
    parallelFor(
        cells.size(),
        [&](std::size_t idx) {
            auto [i, j, zeta] = cells[idx];
            auto lhs = s.entry(i, zeta).differentiate(s.space.independent[static_cast<std::size_t>(j)]);
            auto rhs = s.entry(i, j).differentiate(s.space.independent[static_cast<std::size_t>(zeta)]);
            for (int xi = 0; xi < n; ++xi) {
                int xv = s.space.dependent[static_cast<std::size_t>(xi)];
                lhs = lhs + s.entry(xi, j) * s.entry(i, zeta).differentiate(xv);
                rhs = rhs + s.entry(xi, zeta) * s.entry(i, j).differentiate(xv);
            }
            residuals[idx] = lhs - rhs;
        },
        policy);
    rep.residuals = residuals;
    rep.solvable = std::all_of(residuals.begin(), residuals.end(),
                               [](const Expression& e) { return e.isZero(); });
    // bracket route
    auto ops = inducedOperators(s);
    bool bracketsVanish = true;
    for (int j = 0; j < m && bracketsVanish; ++j)
        for (int zeta = j + 1; zeta < m && bracketsVanish; ++zeta)
            if (!poissonBracket(ops[static_cast<std::size_t>(j)], ops[static_cast<std::size_t>(zeta)]).isNull())
                bracketsVanish = false;
    rep.bracketRouteAgrees = (bracketsVanish == rep.solvable);
    return rep;
}

namespace {

// coefficient rows of operators as rational functions over all space vars
std::vector<RatFun> coefficientRow(const LinearOperator& op) {
    std::vector<RatFun> row;
    std::vector<int> vars = op.space.independent;
    vars.insert(vars.end(), op.space.dependent.begin(), op.space.dependent.end());
    for (int v : vars) {
        auto rf = op.coeff(v).asRatFun();
        if (!rf) throw UnsupportedOperation("operator coefficients must be rational functions");
        row.push_back(*rf);
    }
    return row;
}

} // namespace

CompletenessReport isComplete(const PdeSystem& s) {
    CompletenessReport rep;
    const int m = s.m();
    rep.witness.assign(static_cast<std::size_t>(m),
                       std::vector<std::vector<RatFun>>(static_cast<std::size_t>(m)));
    // columns: operator coefficient vectors
    RFMatrix cols;
    for (auto& op : s.operators) cols.push_back(coefficientRow(op));
    rep.complete = true;
    for (int j = 0; j < m; ++j) {
        for (int zeta = j + 1; zeta < m; ++zeta) {
            LinearOperator br = poissonBracket(s.operators[static_cast<std::size_t>(j)],
                                               s.operators[static_cast<std::size_t>(zeta)]);
            std::vector<RatFun> b = coefficientRow(br);
            // solve sum_l A_l * col_l = b
            RFMatrix A(b.size(), std::vector<RatFun>(static_cast<std::size_t>(m)));
            for (std::size_t r = 0; r < b.size(); ++r)
                for (int l = 0; l < m; ++l) A[r][static_cast<std::size_t>(l)] = cols[static_cast<std::size_t>(l)][r];
            auto sol = solveLinearRF(A, b, m);
            if (sol.consistent) {
                rep.witness[static_cast<std::size_t>(j)][static_cast<std::size_t>(zeta)] = sol.particular;
            } else {
                rep.complete = false;
                rep.failingPairs.emplace_back(j, zeta);
            }
        }
    }
    return rep;
}

bool isJacobian(const PdeSystem& s) {
    for (std::size_t j = 0; j < s.operators.size(); ++j)
        for (std::size_t z = j + 1; z < s.operators.size(); ++z)
            if (!poissonBracket(s.operators[j], s.operators[z]).isNull()) return false;
    return true;
}

DefectReport closureAndDefect(const PdeSystem& s, int maxNewOps) {
    DefectReport rep;
    rep.iterationBound = maxNewOps;
    std::vector<LinearOperator> ops = s.operators;
    const int n = s.n();

    auto spanRank = [&]() {
        RFMatrix rows;
        for (auto& op : ops) rows.push_back(coefficientRow(op));
        return rankRF(rows);
    };
    auto inSpan = [&](const LinearOperator& candidate) {
        RFMatrix rows;
        for (auto& op : ops) rows.push_back(coefficientRow(op));
        int before = rankRF(rows);
        rows.push_back(coefficientRow(candidate));
        return rankRF(rows) == before;
    };

    // brackets in lexicographic pair order; nested brackets breadth-first as
    // appended operators join the list
    std::size_t processedUpTo = 0; // pairs (i, j) with j < ops.size() scanned
    while (true) {
        bool added = false;
        std::size_t total = ops.size();
        for (std::size_t j = processedUpTo; j < total && !added; ++j) {
            for (std::size_t i = 0; i < j && !added; ++i) {
                LinearOperator br = poissonBracket(ops[i], ops[j]);
                if (br.isNull()) continue;
                if (inSpan(br)) continue;
                if (static_cast<int>(rep.addedOperators.size()) >= maxNewOps) {
                    rep.closed = false;
                    rep.defect = static_cast<int>(rep.addedOperators.size());
                    return rep;
                }
                ops.push_back(br);
                rep.addedOperators.push_back(br);
                added = true;
            }
            if (!added) processedUpTo = j + 1;
        }
        if (!added) break;
        if (spanRank() >= n) break; // full span: every further bracket is dependent
    }
    rep.closed = true;
    rep.defect = static_cast<int>(rep.addedOperators.size());
    return rep;
}

int integralBasisDimension(const PdeSystem& s, const DefectReport& defect) {
    return s.n() - s.m() - defect.defect;
}

int integralBasisDimension(const TdSystem& s, const DefectReport& defect) {
    return s.n() - defect.defect;
}

FiCountReport autonomousFiCount(const TdSystem& s, int sNonaut) {
    FiCountReport rep;
    for (int i = 0; i < s.n(); ++i) {
        for (int j = 0; j < s.m(); ++j) {
            for (int zeta = sNonaut; zeta < s.m(); ++zeta) {
                int tv = s.space.independent[static_cast<std::size_t>(zeta)];
                if (s.entry(i, j).dependsOn(tv))
                    throw UnsupportedOperation("entry X[" + std::to_string(i + 1) + "][" +
                                               std::to_string(j + 1) + "] depends on " + symName(tv) +
                                               "; system is not " + std::to_string(sNonaut) +
                                               "-nonautonomous");
            }
        }
    }
    rep.completelySolvable = isFrobeniusSolvable(s).solvable;
    RFMatrix rows;
    for (int i = 0; i < s.n(); ++i) {
        std::vector<RatFun> row;
        for (int j = sNonaut; j < s.m(); ++j) {
            auto rf = s.entry(i, j).asRatFun();
            if (!rf) throw UnsupportedOperation("matrix entries must be rational functions");
            row.push_back(*rf);
        }
        rows.push_back(std::move(row));
    }
    rep.rank = (s.m() - sNonaut == 0) ? 0 : rankRF(rows);
    rep.count = s.n() - rep.rank;
    return rep;
}

std::pair<bool, std::string> operatorsIndependent(const PdeSystem& s) {
    RFMatrix rows;
    for (auto& op : s.operators) rows.push_back(coefficientRow(op));
    int r = rankRF(rows);
    if (r < s.m()) return {false, "operators are linearly bound over the function field"};
    auto cert = nonzeroMinor(rows, s.m());
    std::string locus = cert ? cert->value.num().render() : std::string("1");
    return {true, "independent away from the vanishing locus of: " + locus};
}

} // namespace integralis
