#pragma once

#include <optional>
#include <vector>

#include "integralis/ratfun.hpp"

namespace integralis {

using RFMatrix = std::vector<std::vector<RatFun>>;
using QMatrix = std::vector<std::vector<Rational>>;

struct LinearSolution {
    bool consistent = false;
    std::vector<RatFun> particular;               // free unknowns set to zero
    std::vector<std::vector<RatFun>> nullspace;   // basis of homogeneous solutions
    int rank = 0;
};

// Exact Gaussian elimination; pivot = first structurally nonzero entry in
// column order. A is m x n, rhs length m. numUnknowns disambiguates n when
// there are no equations.
LinearSolution solveLinearRF(RFMatrix A, std::vector<RatFun> rhs, int numUnknowns = -1);

int rankRF(RFMatrix A);

// Fraction-free Bareiss rank over the polynomial ring (independent of the
// field-elimination route; used as a cross-check).
int rankBareissPoly(std::vector<std::vector<Polynomial>> M);

// Determinant via Bareiss after clearing row denominators; the cleared
// factor is divided back out exactly.
RatFun detRF(const RFMatrix& M);

struct MinorCertificate {
    std::vector<int> rows, cols;
    RatFun value;
};

// A nonzero q x q minor, if rank >= q.
std::optional<MinorCertificate> nonzeroMinor(const RFMatrix& M, int q);

struct QLinearSolution {
    bool consistent = false;
    std::vector<Rational> particular;
    std::vector<std::vector<Rational>> nullspace;
    int rank = 0;
};

QLinearSolution solveLinearQ(QMatrix A, std::vector<Rational> rhs);

} // namespace integralis
