#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "integralis/pfaffian.hpp"
#include "paper_systems.hpp"

using namespace integralis;
using namespace testsys;

namespace {
Expression E(const std::string& s) { return parseExpression(s); }

PfaffForm form(const std::vector<std::string>& vars, const std::vector<std::string>& coeffs) {
    PfaffForm f;
    for (auto& v : vars) f.variables.push_back(sym(v));
    for (auto& c : coeffs) f.coefficients.push_back(E(c));
    return f;
}
} // namespace

TEST_CASE("closedness") {
    CHECK(isClosed(form({"x1", "x2"}, {"x1", "x2"})).closed);
    CHECK(isClosed(form({"x1", "x2"}, {"1", "1"})).closed);
    CHECK_FALSE(isClosed(form({"t1", "t2", "x1"}, {"x1", "3*x1", "-1"})).closed);
}

TEST_CASE("potential of exact forms") {
    CHECK(potential(form({"x1", "x2"}, {"x1", "x2"})) == E("1/2*x1^2 + 1/2*x2^2"));
    CHECK(potential(form({"x1"}, {"1"})) == E("x1"));
    Expression F = potential(form({"t1", "t2", "x1"},
                                  {"-x1*exp(-t1 - 3*t2)", "-3*x1*exp(-t1 - 3*t2)", "exp(-t1 - 3*t2)"}));
    CHECK(F == E("x1*exp(-t1 - 3*t2)"));
    // rational with higher-order pole but no log part
    CHECK(potential(form({"x1", "x2"}, {"-x2/x1^2", "1/x1"})) == E("x2/x1"));
    // log part is rejected
    CHECK_THROWS_AS(potential(form({"x1"}, {"1/x1"})), UnsupportedOperation);
}

TEST_CASE("exp multiplier search") {
    auto g = findExpMultiplier(form({"t1", "t2", "x1"}, {"x1", "3*x1", "-1"}), 1);
    REQUIRE(g.has_value());
    CHECK(*g == E("-t1 - 3*t2").asRatFun()->num());
}

TEST_CASE("exp multiplier on closed form is zero") {
    auto g = findExpMultiplier(form({"x1", "x2"}, {"x1", "x2"}), 2);
    REQUIRE(g.has_value());
    CHECK(g->isZero());
}

TEST_CASE("exp multiplier absent") {
    auto g = findExpMultiplier(form({"x1", "x2"}, {"x2", "-x1"}), 2);
    CHECK_FALSE(g.has_value());
}

TEST_CASE("exp of integral") {
    Expression mu = expOfIntegral(form({"x1"}, {"-1/x1"}));
    CHECK(mu == E("1/x1"));
    CHECK(expOfIntegral(form({"x1", "x2"}, {"0", "0"})) == E("1"));
    CHECK(expOfIntegral(form({"x1"}, {"2"})) == E("exp(2*x1)"));
    // product rule across forms
    Expression m1 = expOfIntegral(form({"x1", "x2"}, {"-1/x1", "0"}));
    Expression m2 = expOfIntegral(form({"x1", "x2"}, {"0", "3"}));
    Expression m12 = expOfIntegral(form({"x1", "x2"}, {"-1/x1", "3"}));
    CHECK((m1 * m2 - m12).isZero());
    // higher-order pole: exp-integral leaves the class
    CHECK_THROWS_AS(expOfIntegral(form({"x1"}, {"1/x1^2"})), UnsupportedOperation);
    // non-constant residue
    CHECK_THROWS_AS(expOfIntegral(form({"x1"}, {"x2/x1"})), UnsupportedOperation);
}

TEST_CASE("general integral pipeline") {
    auto r1 = generalIntegral(form({"x1", "x2"}, {"x1", "x2"}), 2);
    REQUIRE(r1.has_value());
    CHECK(r1->kind == IntegrationKind::Exact);
    CHECK(r1->potential == E("1/2*x1^2 + 1/2*x2^2"));

    auto r2 = generalIntegral(form({"t1", "t2", "x1"}, {"x1", "3*x1", "-1"}), 2);
    REQUIRE(r2.has_value());
    CHECK(r2->kind == IntegrationKind::ExpMultiplier);
    CHECK((r2->potential + E("x1*exp(-t1 - 3*t2)")).isZero());

    auto r3 = generalIntegral(form({"x1", "x2"}, {"1", "1"}), 2);
    REQUIRE(r3.has_value());
    CHECK(r3->potential == E("x1 + x2"));

    // all strategies fail
    auto r4 = generalIntegral(form({"x1", "x2"}, {"x2", "-x1"}), 2);
    CHECK_FALSE(r4.has_value());
}

TEST_CASE("round trip: d(potential) = multiplier * form") {
    std::vector<PfaffForm> forms = {
        form({"x1", "x2"}, {"x1", "x2"}),
        form({"t1", "t2", "x1"}, {"x1", "3*x1", "-1"}),
        form({"x1", "x2"}, {"1", "1"}),
        form({"x1", "x2", "x3"}, {"x2*x3", "x1*x3", "x1*x2"}),
    };
    for (auto& f : forms) {
        auto r = generalIntegral(f, 2);
        REQUIRE(r.has_value());
        for (std::size_t i = 0; i < f.variables.size(); ++i) {
            Expression lhs = r->potential.differentiate(f.variables[i]);
            Expression rhs = r->multiplier * f.coefficients[i];
            CHECK((lhs - rhs).isZero());
        }
    }
}

TEST_CASE("gradient forms are closed and potentials recover the function") {
    std::mt19937 rng(17);
    std::vector<int> xs{sym("x1"), sym("x2"), sym("x3")};
    for (int trial = 0; trial < 30; ++trial) {
        Polynomial F;
        for (int t = 0; t < 4; ++t) {
            Monomial m;
            for (auto x : xs) {
                int e = static_cast<int>(rng() % 3);
                if (e) m.vars.emplace_back(x, e);
            }
            F.addTerm(Rational(static_cast<long>(rng() % 9) - 4), m);
        }
        Expression Fe(F);
        PfaffForm grad;
        grad.variables = xs;
        for (auto x : xs) grad.coefficients.push_back(Fe.differentiate(x));
        CHECK(isClosed(grad).closed);
        Expression P = potential(grad);
        Expression diff = P - Fe;
        for (auto x : xs) CHECK(diff.differentiate(x).isZero());
    }
}
