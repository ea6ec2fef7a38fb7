#pragma once

#include <stdexcept>
#include <string>

namespace integralis {

struct SyntaxError : std::runtime_error {
    std::size_t position;
    SyntaxError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

struct UnknownSymbolError : std::runtime_error {
    explicit UnknownSymbolError(const std::string& name)
        : std::runtime_error("unknown symbol: " + name) {}
};

struct DivisionByZero : std::runtime_error {
    DivisionByZero() : std::runtime_error("division by zero") {}
};

// Quotients whose result would leave the closed expression class.
struct UnsupportedQuotient : std::runtime_error {
    UnsupportedQuotient() : std::runtime_error("unsupported quotient") {}
};

struct EvaluationSingularity : std::runtime_error {
    explicit EvaluationSingularity(const std::string& what)
        : std::runtime_error("evaluation singularity: " + what) {}
};

struct UnsupportedOperation : std::runtime_error {
    explicit UnsupportedOperation(const std::string& what) : std::runtime_error(what) {}
};

} // namespace integralis
