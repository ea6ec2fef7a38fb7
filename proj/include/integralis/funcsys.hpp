#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "integralis/system.hpp"

namespace integralis {

struct FuncUnknown {
    std::string name;
    std::set<int> allowedVars; // variables the solution component may depend on
};

// Linear functional system over the rational-function field. Unknowns are
// ordered psi_1..psi_s, phi_1..phi_k, then any constant multiplier unknowns
// introduced for partial-integral right-hand sides.
struct FunctionalSystem {
    std::vector<FuncUnknown> unknowns;
    RFMatrix rows;
    std::vector<RatFun> rhs;
    int numPsi = 0, numPhi = 0, numLambda = 0;

    std::size_t numUnknowns() const { return unknowns.size(); }
    bool homogeneous() const;
    // residual of a candidate solution vector against every equation
    std::vector<RatFun> residuals(const std::vector<RatFun>& v) const;
};

struct SolutionFamily {
    bool consistent = false;
    std::optional<std::vector<RatFun>> particular; // absent for homogeneous systems
    std::vector<std::vector<RatFun>> nullspaceBasis;
    int rank = 0;
    // restricted full solutions (affine when the system is inhomogeneous);
    // populated by restrict()
    std::vector<std::vector<RatFun>> restrictedVectors;
};

// Optional overrides of the derivative-order counts; the defaults follow the
// worked constructions (see build function docs).
struct DerivOrders {
    std::optional<int> thetaOrder; // families that carry a psi unknown
    std::optional<int> nuOrder;    // families without one
};

// Homogeneous system for (n-k)-cylindrical first integrals of a PDE system:
// base rows are the truncated coefficient vectors, derivative rows take
// d^xi/dx_p of them for xi = 1..k-1, p = k+1..n.
FunctionalSystem buildFiPde(const PdeSystem& s, int k, DerivOrders ords = {});

// TD first-integral system: psi_theta + X^theta.phi = 0 rows plus derivative
// rows in t_zeta and x_p; orders default to k (theta family) and k-1 (nu).
FunctionalSystem buildFiTd(const TdSystem& s, int sNonaut, int k, DerivOrders ords = {});

// Last-multiplier variants carry -div rhs. The PDE derivative order defaults
// to k, matching the displayed construction for the worked 3-cylindrical
// multiplier; the printed range k-1 is available through ords.
FunctionalSystem buildLmPde(const PdeSystem& s, int k, DerivOrders ords = {});
// TD orders default to k+1 (theta family) and k (nu family).
FunctionalSystem buildLmTd(const TdSystem& s, int sNonaut, int k, DerivOrders ords = {});

// Partial-integral systems: rhs H_j is parametrized as an unknown constant
// combination of residualBasis elements, keeping the system linear.
FunctionalSystem buildPiPde(const PdeSystem& s, int k, const std::vector<Expression>& residualBasis,
                            DerivOrders ords = {});
FunctionalSystem buildPiTd(const TdSystem& s, int sNonaut, int k,
                           const std::vector<Expression>& residualBasis, DerivOrders ords = {});

// Default residual basis: the truncated coefficient entries and their
// pairwise products up to degree 2, deduplicated.
std::vector<Expression> defaultResidualBasis(const std::vector<Expression>& coeffEntries);

// Exact elimination over the field of all variables; nullspace vectors are
// normalized to primitive polynomial vectors, every returned vector is
// re-verified by substitution.
SolutionFamily solve(const FunctionalSystem& f);

// Keep / search for solutions whose components depend only on their allowed
// variables; constant-combination search over the affine solution set.
SolutionFamily restrict(const FunctionalSystem& f, SolutionFamily sol);

struct IndependenceCertificate {
    int q = 0;
    std::optional<MinorCertificate> minor;
};

IndependenceCertificate independentFamily(const std::vector<std::vector<RatFun>>& vectors);

// Linear conditions sum_i c_i * coeff_i = rhs over unknown rational constants
// c, expanded monomial-wise into a Q-linear system.
QLinearSolution solveForConstants(const std::vector<std::vector<RatFun>>& rows,
                                  const std::vector<RatFun>& rhs);

} // namespace integralis
