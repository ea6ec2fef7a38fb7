#pragma once

// Shared constructions of the worked systems used across the test suites.

#include <string>
#include <vector>

#include "integralis/system.hpp"

namespace testsys {

using namespace integralis;

inline PdeSystem makePde(const std::vector<std::string>& xs,
                         const std::vector<std::vector<std::string>>& coeffRows) {
    PdeSystem s;
    for (auto& x : xs) s.space.dependent.push_back(sym(x));
    for (auto& row : coeffRows) {
        LinearOperator op;
        op.space = s.space;
        for (std::size_t i = 0; i < row.size(); ++i) {
            Expression c = parseExpression(row[i]);
            if (!c.isZero()) op.coefficients.emplace(s.space.dependent[i], c);
        }
        s.operators.push_back(std::move(op));
    }
    return s;
}

inline TdSystem makeTd(const std::vector<std::string>& ts, const std::vector<std::string>& xs,
                       const std::vector<std::vector<std::string>>& matrixRows) {
    TdSystem s;
    for (auto& t : ts) s.space.independent.push_back(sym(t));
    for (auto& x : xs) s.space.dependent.push_back(sym(x));
    for (auto& row : matrixRows) {
        std::vector<Expression> r;
        for (auto& e : row) r.push_back(parseExpression(e));
        s.X.push_back(std::move(r));
    }
    return s;
}

// two operators on K^4 with the 2-cylindrical integral x1^2 + x2^2
inline PdeSystem ex1_8() {
    return makePde({"x1", "x2", "x3", "x4"},
                   {{"x1*x2", "-x1^2", "x1 + x2^2 + x3^2 - x4^2", "x3^2 + x4^2"},
                    {"x2^2", "-x1*x2", "x3^2 + x4^2", "x1 + x2^2 + x3^2 + x4^2"}});
}

// completely solvable system with one autonomous integral, g = x1*x2
inline TdSystem ex1_14() {
    return makeTd({"t1", "t2"}, {"x1", "x2", "x3"},
                  {{"1", "0"}, {"0", "1"}, {"x2", "x1"}});
}

// non-solvable autonomous system with the 1-cylindrical integral x1*exp(-(t1+3t2))
inline TdSystem ex1_23() {
    return makeTd({"t1", "t2"}, {"x1", "x2"},
                  {{"x1", "3*x1"}, {"1 + x1 + 2*x2", "x1 + 3*x2"}});
}

// system with the 3-cylindrical last multiplier -1/x1
inline PdeSystem ex2_8() {
    return makePde({"x1", "x2", "x3", "x4"},
                   {{"x1*x2", "x1*x3", "x1*x4", "x2^2"},
                    {"x1*x3", "x1*x4", "x1^2", "x2^2"}});
}

// system with the 2-cylindrical partial integral x1 + x2
inline PdeSystem ex3_10() {
    return makePde({"x1", "x2", "x3", "x4"},
                   {{"x1*(x2 + x3)", "x2*(x2 + x3)", "x1^2 + x2^2 + x3^2 + x4^2",
                     "x1^2 - x2^2 + x3^2 - x4^2"},
                    {"x1*(x3 + x4)", "x2*(x3 + x4)", "x1^2 - x2^2 + x3^2 - x4^2",
                     "x1^2 + x2^2 + x3^2 + x4^2"}});
}

// radial operators on K^5 with partial integrals x1, x2, x3
inline PdeSystem ex3_13() {
    return makePde({"x1", "x2", "x3", "x4", "x5"},
                   {{"x1", "x2", "x3", "x4", "x5"},
                    {"x1", "x2", "x3", "x4^2", "x5^2"}});
}

// solvable system with the autonomous 2-cylindrical partial integral x1^2 + x2^2
inline TdSystem ex3_23() {
    const std::string rho = "(x1^2 + x2^2 + x3^2)";
    return makeTd({"t1", "t2"}, {"x1", "x2", "x3"},
                  {{"-(x2 + x1*" + rho + ")", "-x1*" + rho},
                   {"x1 - x2*" + rho, "-x2*" + rho},
                   {"x3*" + rho, "x3*" + rho}});
}

// non-solvable system with rational time dependence; partial integrals x_i
inline TdSystem ex3_25() {
    const std::string a = "(t2 - 1)/(t1*(t2 - t1))";
    const std::string b = "-(t1 - 1)/(t2*(t2 - t1))";
    return makeTd({"t1", "t2"}, {"x1", "x2", "x3"},
                  {{"x1*" + a, "x1*" + b}, {"x2*" + a, "x2*" + b}, {"x3*" + a, "x3*" + b}});
}

} // namespace testsys
