#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "paper_systems.hpp"

using namespace integralis;
using namespace testsys;

namespace {
Expression E(const std::string& s) { return parseExpression(s); }
}

TEST_CASE("induced operators") {
    TdSystem s = ex1_23();
    auto ops = inducedOperators(s);
    REQUIRE(ops.size() == 2);
    CHECK(ops[0].unitTimeIndex.value() == 0);
    CHECK(ops[0].coeff(sym("x1")) == E("x1"));
    CHECK(ops[0].coeff(sym("x2")) == E("1 + x1 + 2*x2"));
    CHECK(ops[0].coeff(sym("t1")) == E("1"));
    CHECK(ops[0].coeff(sym("t2")).isZero());

    TdSystem z = makeTd({"t1", "t2"}, {"x1", "x2"}, {{"0", "0"}, {"0", "0"}});
    auto zops = inducedOperators(z);
    CHECK(zops[0].coefficients.empty());

    TdSystem r = ex3_25();
    auto rops = inducedOperators(r);
    CHECK(rops[0].coeff(sym("x2")) == E("x2*(t2 - 1)/(t1*(t2 - t1))"));
}

TEST_CASE("apply operator") {
    PdeSystem s18 = ex1_8();
    CHECK(applyOperator(s18.operators[0], E("x1^2 + x2^2")).isZero());
    CHECK(applyOperator(s18.operators[1], E("x1^2 + x2^2")).isZero());
    CHECK(applyOperator(s18.operators[0], E("1")).isZero());
    auto ops = inducedOperators(ex1_23());
    CHECK(applyOperator(ops[0], E("x1*exp(-(t1 + 3*t2))")).isZero());
    CHECK(applyOperator(ops[1], E("x1*exp(-(t1 + 3*t2))")).isZero());
}

TEST_CASE("poisson bracket") {
    auto ops = inducedOperators(ex1_23());
    LinearOperator br = poissonBracket(ops[0], ops[1]);
    CHECK(br.coeff(sym("x1")).isZero());
    CHECK(br.coeff(sym("x2")) == E("3 - x1"));
    CHECK(br.coeff(sym("t1")).isZero());
    CHECK(poissonBracket(ops[0], ops[0]).isNull());

    PdeSystem s313 = ex3_13();
    LinearOperator b2 = poissonBracket(s313.operators[0], s313.operators[1]);
    CHECK(b2.coeff(sym("x4")) == E("x4^2"));
    CHECK(b2.coeff(sym("x5")) == E("x5^2"));
    CHECK(b2.coeff(sym("x1")).isZero());
}

TEST_CASE("divergence") {
    PdeSystem s = ex2_8();
    CHECK(divergence(s.operators[0]) == E("x2"));
    CHECK(divergence(s.operators[1]) == E("x3"));
    PdeSystem c = makePde({"x1", "x2"}, {{"1", "2"}});
    CHECK(divergence(c.operators[0]).isZero());
}

TEST_CASE("frobenius solvability") {
    CHECK(isFrobeniusSolvable(ex1_14()).solvable);
    CHECK(isFrobeniusSolvable(ex1_14()).bracketRouteAgrees);
    CHECK_FALSE(isFrobeniusSolvable(ex1_23()).solvable);
    CHECK(isFrobeniusSolvable(ex1_23()).bracketRouteAgrees);
    CHECK_FALSE(isFrobeniusSolvable(ex3_25()).solvable);
    CHECK(isFrobeniusSolvable(ex3_25()).bracketRouteAgrees);
    CHECK(isFrobeniusSolvable(ex3_23()).solvable);
    CHECK(isFrobeniusSolvable(ex3_23()).bracketRouteAgrees);
}

TEST_CASE("completeness") {
    CHECK_FALSE(isComplete(ex1_8()).complete);
    CHECK_FALSE(isComplete(ex3_13()).complete);
    PdeSystem single = makePde({"x1", "x2"}, {{"x1", "x2"}});
    CHECK(isComplete(single).complete);
}

TEST_CASE("jacobian") {
    PdeSystem single = makePde({"x1", "x2"}, {{"x1", "x2"}});
    CHECK(isJacobian(single));
    CHECK_FALSE(isJacobian(ex1_8()));
    PdeSystem commuting = makePde({"x1", "x2"}, {{"1", "0"}, {"0", "1"}});
    CHECK(isJacobian(commuting));
}

TEST_CASE("closure and defect") {
    auto d123 = closureAndDefect(associatedSystem(ex1_23()), 8);
    CHECK(d123.closed);
    CHECK(d123.defect == 1);
    CHECK(integralBasisDimension(ex1_23(), d123) == 1);

    auto d313 = closureAndDefect(ex3_13(), 8);
    CHECK(d313.closed);
    CHECK(d313.defect == 1);
    CHECK(integralBasisDimension(ex3_13(), d313) == 2);

    auto d325 = closureAndDefect(associatedSystem(ex3_25()), 8);
    CHECK(d325.closed);
    CHECK(d325.defect == 1);
    CHECK(integralBasisDimension(ex3_25(), d325) == 2);

    PdeSystem commuting = makePde({"x1", "x2"}, {{"1", "0"}, {"0", "1"}});
    auto dj = closureAndDefect(commuting, 8);
    CHECK(dj.closed);
    CHECK(dj.defect == 0);
}

TEST_CASE("autonomous first-integral count") {
    auto rep = autonomousFiCount(ex1_14(), 0);
    CHECK(rep.rank == 2);
    CHECK(rep.count == 1);
    CHECK(rep.completelySolvable);

    // full-rank X: no autonomous integrals
    TdSystem full = makeTd({"t1", "t2"}, {"x1", "x2"}, {{"1", "0"}, {"0", "1"}});
    auto rep2 = autonomousFiCount(full, 0);
    CHECK(rep2.rank == 2);
    CHECK(rep2.count == 0);

    TdSystem zero = makeTd({"t1", "t2"}, {"x1", "x2"}, {{"0", "0"}, {"0", "0"}});
    CHECK(autonomousFiCount(zero, 0).count == 2);

    // s-nonautonomy violation names the entry
    TdSystem bad = makeTd({"t1", "t2"}, {"x1"}, {{"t2", "1"}});
    CHECK_THROWS_AS(autonomousFiCount(bad, 1), UnsupportedOperation);
}

TEST_CASE("bracket properties on random polynomial operators") {
    std::mt19937 rng(11);
    std::vector<std::string> xs{"x1", "x2", "x3"};
    auto rndOp = [&](const VariableSpace& space) {
        LinearOperator op;
        op.space = space;
        for (int v = 0; v < 3; ++v) {
            Polynomial p;
            for (int t = 0; t < 2; ++t) {
                Monomial m;
                for (int w = 0; w < 3; ++w) {
                    int e = static_cast<int>(rng() % 2);
                    if (e) m.vars.emplace_back(space.dependent[static_cast<std::size_t>(w)], e);
                }
                p.addTerm(Rational(static_cast<long>(rng() % 5) - 2), m);
            }
            if (!p.isZero()) op.coefficients.emplace(space.dependent[static_cast<std::size_t>(v)], Expression(p));
        }
        return op;
    };
    VariableSpace space;
    for (auto& x : xs) space.dependent.push_back(sym(x));
    auto opSub = [](const LinearOperator& a, const LinearOperator& b) {
        LinearOperator r = a;
        for (auto& [v, c] : b.coefficients) {
            auto it = r.coefficients.find(v);
            if (it == r.coefficients.end())
                r.coefficients.emplace(v, -c);
            else
                it->second = it->second - c;
        }
        return r;
    };
    for (int trial = 0; trial < 40; ++trial) {
        LinearOperator A = rndOp(space), B = rndOp(space), C = rndOp(space);
        // antisymmetry
        LinearOperator ab = poissonBracket(A, B);
        LinearOperator ba = poissonBracket(B, A);
        for (int v : space.dependent) CHECK((ab.coeff(v) + ba.coeff(v)).isZero());
        // Jacobi identity
        LinearOperator j1 = poissonBracket(A, poissonBracket(B, C));
        LinearOperator j2 = poissonBracket(B, poissonBracket(C, A));
        LinearOperator j3 = poissonBracket(C, poissonBracket(A, B));
        for (int v : space.dependent)
            CHECK((j1.coeff(v) + j2.coeff(v) + j3.coeff(v)).isZero());
        // Leibniz rule
        Expression e1 = Expression(Polynomial::variable(space.dependent[0])) + Expression(1L);
        Expression e2 = Expression(Polynomial::variable(space.dependent[1]));
        Expression lhs = applyOperator(A, e1 * e2);
        Expression rhs = applyOperator(A, e1) * e2 + e1 * applyOperator(A, e2);
        CHECK((lhs - rhs).isZero());
        (void)opSub;
    }
}
