#pragma once

#include <optional>
#include <vector>

#include "integralis/expression.hpp"

namespace integralis {

// Single 1-form: sum coefficients[i] * d(variables[i]).
struct PfaffForm {
    std::vector<int> variables;
    std::vector<Expression> coefficients;

    Expression coeff(int var) const;
};

struct ClosednessReport {
    bool closed = false;
    // residual d_a c_b - d_b c_a per variable pair (a < b in form order)
    std::vector<std::tuple<int, int, Expression>> residuals;
};

ClosednessReport isClosed(const PfaffForm& f);

enum class IntegrationKind { Exact, ExpMultiplier, ExpOfIntegral };

struct IntegrationResult {
    Expression multiplier; // 1 for exact forms
    Expression potential;
    IntegrationKind kind = IntegrationKind::Exact;
};

// Potential of a closed form by iterated per-variable integration; supported
// coefficients: rational functions whose log-free antiderivative exists in
// the class, plus polynomial-times-exp(linear) terms integrated by parts.
// Throws UnsupportedOperation("unsupported antiderivative...") otherwise.
Expression potential(const PfaffForm& f);

// Searches mu = exp(g) with g polynomial of total degree <= degreeBound over
// the form's variables (additive constant fixed to zero). Returns g; the
// zero polynomial is returned for already-closed forms.
std::optional<Polynomial> findExpMultiplier(const PfaffForm& f, int degreeBound);

// exp of the line integral of a closed form, computed inside the expression
// class: polynomial parts exponentiate, simple-pole log parts become power
// factors. Throws UnsupportedOperation("unsupported exp-integral...") on
// higher-order poles or non-constant residues.
Expression expOfIntegral(const PfaffForm& f);

// Pipeline: exact potential, else exp-multiplier search up to the bound; the
// returned result satisfies d(potential) = multiplier * form (verified).
std::optional<IntegrationResult> generalIntegral(const PfaffForm& f, int degreeBound);

} // namespace integralis
