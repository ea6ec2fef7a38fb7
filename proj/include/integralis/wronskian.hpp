#pragma once

#include <string>
#include <vector>

#include "integralis/system.hpp"

namespace integralis {

struct WronskianResidual {
    int opIndex;    // 1-based operator / column family index
    int var;        // differentiation variable of the Wronskian
    Expression value;
};

struct WronskianVerdict {
    bool passed = false;       // all residuals identically zero (FI/LM tests)
    bool judged = true;        // false for partial-integral residuals (returned raw)
    std::vector<WronskianResidual> residuals;
    std::string notes;

    bool allZero() const {
        for (auto& r : residuals)
            if (!r.value.isZero()) return false;
        return true;
    }
};

// Determinant of successive partial derivatives with respect to one variable;
// row r holds the r-th derivatives.
Expression wronskian(const std::vector<Expression>& functions, int var);

WronskianVerdict necessaryFiPde(const PdeSystem& s, int k, Exec policy = Exec::Parallel);
WronskianVerdict necessaryFiTd(const TdSystem& s, int sNonaut, int k, Exec policy = Exec::Parallel);
WronskianVerdict necessaryLmPde(const PdeSystem& s, int k, Exec policy = Exec::Parallel);
WronskianVerdict necessaryLmTd(const TdSystem& s, int sNonaut, int k, Exec policy = Exec::Parallel);
// Partial-integral residuals: no pass/fail claimed, residuals returned raw.
WronskianVerdict piResiduals(const PdeSystem& s, int k, Exec policy = Exec::Parallel);
WronskianVerdict piResiduals(const TdSystem& s, int sNonaut, int k, Exec policy = Exec::Parallel);

} // namespace integralis
