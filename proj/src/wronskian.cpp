#include "integralis/wronskian.hpp"

namespace integralis {

namespace {

// Laplace expansion; fine for the small matrices these tests produce.
Expression detExpression(std::vector<std::vector<Expression>>& M, std::size_t size) {
    if (size == 1) return M[0][0];
    Expression det;
    int sign = 1;
    for (std::size_t r = 0; r < size; ++r) {
        if (!M[r][0].isZero()) {
            std::vector<std::vector<Expression>> sub;
            sub.reserve(size - 1);
            for (std::size_t i = 0; i < size; ++i) {
                if (i == r) continue;
                std::vector<Expression> row(M[i].begin() + 1, M[i].end());
                sub.push_back(std::move(row));
            }
            Expression minor = detExpression(sub, size - 1);
            Expression term = M[r][0] * minor;
            det = (sign > 0) ? det + term : det - term;
        }
        sign = -sign;
    }
    return det;
}

bool allRational(const std::vector<std::vector<Expression>>& M) {
    for (auto& row : M)
        for (auto& e : row)
            if (!e.isRational()) return false;
    return true;
}

Expression detViaBareiss(const std::vector<std::vector<Expression>>& M) {
    RFMatrix R(M.size());
    for (std::size_t i = 0; i < M.size(); ++i)
        for (auto& e : M[i]) R[i].push_back(*e.asRatFun());
    return Expression(detRF(R));
}

} // namespace

Expression wronskian(const std::vector<Expression>& functions, int var) {
    const std::size_t q = functions.size();
    if (q == 0) throw std::invalid_argument("wronskian of empty set");
    std::vector<std::vector<Expression>> M(q, std::vector<Expression>(q));
    M[0] = functions;
    for (std::size_t r = 1; r < q; ++r)
        for (std::size_t c = 0; c < q; ++c) M[r][c] = M[r - 1][c].differentiate(var);
    if (allRational(M)) return detViaBareiss(M);
    return detExpression(M, q);
}

namespace {

// All four test families share the shape: per operator j, a set of functions
// and a list of Wronskian variables; each (j, var) pair is one residual cell.
struct Cell {
    int opIndex;
    int var;
    std::vector<Expression> funcs;
};

WronskianVerdict runCells(std::vector<Cell> cells, bool judged, Exec policy) {
    WronskianVerdict v;
    v.judged = judged;
    v.residuals.resize(cells.size());
    parallelFor(
        cells.size(),
        [&](std::size_t i) {
            v.residuals[i] = {cells[i].opIndex, cells[i].var, wronskian(cells[i].funcs, cells[i].var)};
        },
        policy);
    v.passed = judged && v.allZero();
    if (!judged) v.passed = false;
    return v;
}

std::vector<Expression> pdeCoeffSet(const PdeSystem& s, int j, int k) {
    std::vector<Expression> set;
    for (int xi = 0; xi < k; ++xi)
        set.push_back(s.operators[static_cast<std::size_t>(j)].coeff(
            s.space.dependent[static_cast<std::size_t>(xi)]));
    return set;
}

std::vector<Expression> tdColumnSet(const TdSystem& s, int j, int k, bool withOne) {
    std::vector<Expression> set;
    if (withOne) set.push_back(Expression(1L));
    for (int xi = 0; xi < k; ++xi) set.push_back(s.entry(xi, j));
    return set;
}

std::vector<Cell> tdCells(const TdSystem& s, int sNonaut, int k, bool withDiv) {
    std::vector<Cell> cells;
    std::vector<Expression> divs;
    if (withDiv) {
        auto ops = inducedOperators(s);
        for (auto& op : ops) divs.push_back(divergence(op));
    }
    for (int j = 0; j < s.m(); ++j) {
        bool theta = j < sNonaut;
        std::vector<Expression> base = tdColumnSet(s, j, k, theta);
        if (withDiv) base.push_back(divs[static_cast<std::size_t>(j)]);
        for (int zeta = sNonaut; zeta < s.m(); ++zeta)
            cells.push_back({j + 1, s.space.independent[static_cast<std::size_t>(zeta)], base});
        for (int p = k; p < s.n(); ++p)
            cells.push_back({j + 1, s.space.dependent[static_cast<std::size_t>(p)], base});
    }
    return cells;
}

} // namespace

WronskianVerdict necessaryFiPde(const PdeSystem& s, int k, Exec policy) {
    std::vector<Cell> cells;
    for (int j = 0; j < s.m(); ++j) {
        auto set = pdeCoeffSet(s, j, k);
        if (set.empty()) continue; // k = 0: vacuous
        for (int p = k; p < s.n(); ++p)
            cells.push_back({j + 1, s.space.dependent[static_cast<std::size_t>(p)], set});
    }
    auto v = runCells(std::move(cells), true, policy);
    if (k >= s.n()) v.notes = "vacuous: no x_p range";
    return v;
}

WronskianVerdict necessaryFiTd(const TdSystem& s, int sNonaut, int k, Exec policy) {
    auto v = runCells(tdCells(s, sNonaut, k, false), true, policy);
    if (k >= s.n() && sNonaut >= s.m()) v.notes = "vacuous: no t_zeta or x_p range";
    return v;
}

WronskianVerdict necessaryLmPde(const PdeSystem& s, int k, Exec policy) {
    std::vector<Cell> cells;
    for (int j = 0; j < s.m(); ++j) {
        auto set = pdeCoeffSet(s, j, k);
        set.push_back(divergence(s.operators[static_cast<std::size_t>(j)]));
        for (int p = k; p < s.n(); ++p)
            cells.push_back({j + 1, s.space.dependent[static_cast<std::size_t>(p)], set});
    }
    return runCells(std::move(cells), true, policy);
}

WronskianVerdict necessaryLmTd(const TdSystem& s, int sNonaut, int k, Exec policy) {
    return runCells(tdCells(s, sNonaut, k, true), true, policy);
}

WronskianVerdict piResiduals(const PdeSystem& s, int k, Exec policy) {
    std::vector<Cell> cells;
    for (int j = 0; j < s.m(); ++j) {
        auto set = pdeCoeffSet(s, j, k);
        if (set.empty()) continue;
        for (int p = k; p < s.n(); ++p)
            cells.push_back({j + 1, s.space.dependent[static_cast<std::size_t>(p)], set});
    }
    auto v = runCells(std::move(cells), false, policy);
    v.notes = "partial-integral residuals need only vanish on the integral manifold";
    return v;
}

WronskianVerdict piResiduals(const TdSystem& s, int sNonaut, int k, Exec policy) {
    auto v = runCells(tdCells(s, sNonaut, k, false), false, policy);
    v.notes = "partial-integral residuals need only vanish on the integral manifold";
    return v;
}

} // namespace integralis
