#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "integralis/funcsys.hpp"
#include "paper_systems.hpp"

using namespace integralis;
using namespace testsys;

namespace {
Expression E(const std::string& s) { return parseExpression(s); }
RatFun RF(const std::string& s) { return *parseExpression(s).asRatFun(); }

bool hasRow(const FunctionalSystem& f, const std::vector<std::string>& coeffs, const std::string& rhs) {
    std::vector<RatFun> want;
    for (auto& c : coeffs) want.push_back(RF(c));
    RatFun wantRhs = RF(rhs);
    for (std::size_t r = 0; r < f.rows.size(); ++r) {
        if (f.rows[r] == want && f.rhs[r] == wantRhs) return true;
    }
    return false;
}
} // namespace

TEST_CASE("first-integral system for the 2-cylindrical example") {
    PdeSystem s = ex1_8();
    FunctionalSystem f = buildFiPde(s, 2);
    CHECK(f.numPhi == 2);
    // base rows (derivative rows in x3, x4 vanish identically and are dropped)
    CHECK(hasRow(f, {"x1*x2", "-x1^2"}, "0"));
    CHECK(hasRow(f, {"x2^2", "-x1*x2"}, "0"));
    auto sol = solve(f);
    REQUIRE(sol.consistent);
    REQUIRE(sol.nullspaceBasis.size() == 1);
    CHECK(sol.nullspaceBasis[0][0] == RF("x1"));
    CHECK(sol.nullspaceBasis[0][1] == RF("x2"));
    auto rsol = restrict(f, sol);
    REQUIRE(rsol.restrictedVectors.size() == 1);
    CHECK(rsol.restrictedVectors[0][0] == RF("x1"));

    // k = 0: no unknowns, trivial system
    FunctionalSystem f0 = buildFiPde(s, 0);
    CHECK(f0.numUnknowns() == 0);
    CHECK(f0.rows.empty());
}

TEST_CASE("first-integral system for the TD example") {
    TdSystem s = ex1_23();
    FunctionalSystem f = buildFiTd(s, 2, 1);
    CHECK(f.numPsi == 2);
    CHECK(f.numPhi == 1);
    CHECK(f.rows.size() == 2); // psi1 + x1 phi = 0, psi2 + 3x1 phi = 0
    CHECK(hasRow(f, {"1", "0", "x1"}, "0"));
    CHECK(hasRow(f, {"0", "1", "3*x1"}, "0"));
    auto sol = restrict(f, solve(f));
    REQUIRE(sol.restrictedVectors.size() == 1);
    auto& v = sol.restrictedVectors[0];
    // normalized to the primitive vector (x1, 3x1, -1)
    CHECK(v[0] == RF("x1"));
    CHECK(v[1] == RF("3*x1"));
    CHECK(v[2] == RF("-1"));
}

TEST_CASE("construction rows match the operator coefficients") {
    TdSystem s = ex1_14();
    FunctionalSystem f = buildFiTd(s, 2, 3);
    // theta rows: psi_theta + sum X_xi,theta phi_xi = 0
    CHECK(hasRow(f, {"1", "0", "1", "0", "x2"}, "0"));
    CHECK(hasRow(f, {"0", "1", "0", "1", "x1"}, "0"));
}

TEST_CASE("last-multiplier system of the worked example") {
    PdeSystem s = ex2_8();
    FunctionalSystem f = buildLmPde(s, 1);
    CHECK(f.rows.size() == 3);
    CHECK(hasRow(f, {"x1*x2"}, "-x2"));
    CHECK(hasRow(f, {"x1*x3"}, "-x3"));
    CHECK(hasRow(f, {"x1"}, "-1"));
    auto sol = solve(f);
    REQUIRE(sol.consistent);
    REQUIRE(sol.particular.has_value());
    CHECK((*sol.particular)[0] == RF("-1/x1"));
    CHECK(sol.nullspaceBasis.empty());
    auto rsol = restrict(f, sol);
    REQUIRE(rsol.restrictedVectors.size() == 1);
    CHECK(rsol.restrictedVectors[0][0] == RF("-1/x1"));

    // printed derivative range stays available as an override
    FunctionalSystem fPrinted = buildLmPde(s, 1, DerivOrders{std::nullopt, 0});
    CHECK(fPrinted.rows.size() == 2);
}

TEST_CASE("divergence-free system gives a homogeneous multiplier system") {
    PdeSystem df = makePde({"x1", "x2"}, {{"x2", "-x1"}});
    FunctionalSystem f = buildLmPde(df, 2);
    CHECK(f.homogeneous());
}

TEST_CASE("partial-integral system reproduces the worked solution") {
    PdeSystem s = ex3_10();
    std::vector<Expression> entries;
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i)
            entries.push_back(s.operators[static_cast<std::size_t>(j)].coeff(
                s.space.dependent[static_cast<std::size_t>(i)]));
    auto basis = defaultResidualBasis(entries);
    FunctionalSystem f = buildPiPde(s, 2, basis);
    auto sol = restrict(f, solve(f));
    REQUIRE(sol.consistent);
    // some restricted vector has phi = (1, 1) and rhs H1 = (x1+x2)(x2+x3)
    bool found = false;
    for (auto& v : sol.restrictedVectors) {
        if (v[0].isZero()) continue;
        RatFun scale = v[0];
        if (!(v[1] / scale == RF("1"))) continue;
        // reconstruct H_1 = sum lambda_1b * basis_b
        RatFun h1{Rational(0)};
        for (std::size_t b = 0; b < basis.size(); ++b)
            h1 = h1 + v[2 + b] * *basis[b].asRatFun();
        h1 = h1 / scale;
        if (h1 == RF("(x1 + x2)*(x2 + x3)")) found = true;
    }
    CHECK(found);

    // empty residual basis reduces to the FI construction
    FunctionalSystem ffi = buildPiPde(s, 2, {});
    FunctionalSystem fref = buildFiPde(s, 2);
    CHECK(ffi.rows == fref.rows);
}

TEST_CASE("solution verification and rank bookkeeping") {
    PdeSystem s = ex1_8();
    FunctionalSystem f = buildFiPde(s, 2);
    auto sol = solve(f);
    // nullspace size = unknowns - rank, cross-checked fraction-free
    std::vector<std::vector<Polynomial>> M;
    for (auto& row : f.rows) {
        std::vector<Polynomial> r;
        Polynomial common(Rational(1));
        for (auto& c : row) common = common * c.den();
        for (auto& c : row) {
            Polynomial q;
            common.tryDivideExact(c.den(), q);
            r.push_back(c.num() * q);
        }
        M.push_back(std::move(r));
    }
    CHECK(rankBareissPoly(M) == sol.rank);
    CHECK(sol.nullspaceBasis.size() == f.numUnknowns() - static_cast<std::size_t>(sol.rank));
    // every vector satisfies every equation (residual check)
    for (auto& v : sol.nullspaceBasis)
        for (auto& r : f.residuals(v)) CHECK(r.isZero());
}

TEST_CASE("restrict drops and searches") {
    TdSystem s = ex1_23();
    // phi depending on a forbidden variable is dropped
    FunctionalSystem f = buildFiTd(s, 2, 1);
    auto sol = solve(f);
    // inject an artificial vector violating restriction: (t1*x1, ...) not a
    // solution, so instead verify idempotence and monotonicity of restrict
    auto r1 = restrict(f, sol);
    auto r2 = restrict(f, r1);
    CHECK(r1.restrictedVectors.size() == r2.restrictedVectors.size());

    // zero system: full nullspace
    FunctionalSystem zero = buildFiPde(makePde({"x1", "x2"}, {{"0", "0"}}), 2);
    auto zsol = solve(zero);
    CHECK(zsol.nullspaceBasis.size() == 2);
}

TEST_CASE("independent family rank") {
    std::vector<std::vector<RatFun>> one{{RF("x1"), RF("x2")}};
    CHECK(independentFamily(one).q == 1);
    std::vector<std::vector<RatFun>> dup{{RF("x1"), RF("x2")}, {RF("x1"), RF("x2")}};
    CHECK(independentFamily(dup).q == 1);
    std::vector<std::vector<RatFun>> id3{
        {RF("1"), RF("0"), RF("0")}, {RF("0"), RF("1"), RF("0")}, {RF("0"), RF("0"), RF("1")}};
    auto cert = independentFamily(id3);
    CHECK(cert.q == 3);
    REQUIRE(cert.minor.has_value());
    CHECK_FALSE(cert.minor->value.isZero());
}
