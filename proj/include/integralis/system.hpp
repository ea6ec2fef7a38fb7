#pragma once

#include <optional>
#include <string>
#include <vector>

#include "integralis/expression.hpp"
#include "integralis/linalg.hpp"
#include "integralis/parallel.hpp"

namespace integralis {

// Independent variables t_1..t_m (empty for PDE systems) and dependent
// variables x_1..x_n, in declaration order.
struct VariableSpace {
    std::vector<int> independent; // t symbols
    std::vector<int> dependent;   // x symbols

    int m() const { return static_cast<int>(independent.size()); }
    int n() const { return static_cast<int>(dependent.size()); }
    bool isDependent(int var) const;
    bool isIndependent(int var) const;
};

// First-order linear differential operator: sum of coeff * d/dv plus an
// optional unit d/dt_theta term.
struct LinearOperator {
    VariableSpace space;
    std::map<int, Expression> coefficients; // absent entry = zero
    std::optional<int> unitTimeIndex;       // index into space.independent

    Expression coeff(int var) const;
    bool isNull() const;
};

Expression applyOperator(const LinearOperator& op, const Expression& e);
LinearOperator poissonBracket(const LinearOperator& a, const LinearOperator& b);
// Divergence over the dependent variables only.
Expression divergence(const LinearOperator& op);

struct PdeSystem {
    VariableSpace space; // no independent variables
    std::vector<LinearOperator> operators;

    int m() const { return static_cast<int>(operators.size()); }
    int n() const { return space.n(); }
};

struct TdSystem {
    VariableSpace space;
    std::vector<std::vector<Expression>> X; // n rows, m columns

    int m() const { return space.m(); }
    int n() const { return space.n(); }
    const Expression& entry(int i, int j) const { return X[i][j]; }
};

// X_j = d/dt_j + sum_i X_ij d/dx_i
std::vector<LinearOperator> inducedOperators(const TdSystem& s);

// PDE system associated to a TD system (operators over t and x jointly).
PdeSystem associatedSystem(const TdSystem& s);

struct FrobeniusReport {
    bool solvable = false;
    // residuals of the coordinate conditions, indexed (i, j, zeta)
    std::vector<Expression> residuals;
    bool bracketRouteAgrees = false;
};

// Both the coordinate residual route and the bracket route are computed and
// must agree.
FrobeniusReport isFrobeniusSolvable(const TdSystem& s, Exec policy = Exec::Parallel);

struct CompletenessReport {
    bool complete = false;
    // witness coefficients A[j][zeta][l] for representable brackets
    std::vector<std::vector<std::vector<RatFun>>> witness;
    std::vector<std::pair<int, int>> failingPairs;
};

CompletenessReport isComplete(const PdeSystem& s);

bool isJacobian(const PdeSystem& s);

struct DefectReport {
    int defect = 0;
    std::vector<LinearOperator> addedOperators;
    bool closed = false;
    int iterationBound = 0;
};

DefectReport closureAndDefect(const PdeSystem& s, int maxNewOps);

// n - m - delta for PDE systems.
int integralBasisDimension(const PdeSystem& s, const DefectReport& defect);
// n - delta for TD systems (defect of the associated system).
int integralBasisDimension(const TdSystem& s, const DefectReport& defect);

struct FiCountReport {
    int count = 0;          // n - r
    int rank = 0;           // generic rank of X with the first s columns removed
    bool completelySolvable = false;
};

// Theorem count of functionally independent s-nonautonomous first integrals.
// Throws if an entry depends on t_{s+1}..t_m.
FiCountReport autonomousFiCount(const TdSystem& s, int sNonaut);

// Generic linear independence of the operators' coefficient rows; the second
// member names the vanishing locus of the pivot minor (exceptional set).
std::pair<bool, std::string> operatorsIndependent(const PdeSystem& s);

} // namespace integralis
