#include <cctype>

#include "integralis/expression.hpp"

namespace integralis {

namespace {

class Parser {
public:
    Parser(const std::string& text, const std::set<int>* strict)
        : text_(text), strict_(strict) {}

    Expression parse() {
        Expression e = parseSum();
        skipWs();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, pos_); }

    void skipWs() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skipWs();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skipWs();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Expression parseSum() {
        Expression e = parseProduct();
        while (true) {
            if (eat('+'))
                e = e + parseProduct();
            else if (eat('-'))
                e = e - parseProduct();
            else
                return e;
        }
    }

    Expression parseProduct() {
        Expression e = parseUnary();
        while (true) {
            if (eat('*')) {
                e = e * parseUnary();
            } else if (eat('/')) {
                Expression d = parseUnary();
                if (d.isZero()) throw DivisionByZero();
                e = e / d;
            } else {
                return e;
            }
        }
    }

    Expression parseUnary() {
        if (eat('-')) return -parseUnary();
        return parsePower();
    }

    Expression parsePower() {
        Expression base = parseAtom();
        if (!eat('^')) return base;
        Rational e = parseExponent();
        return applyPower(base, e);
    }

    Rational parseExponent() {
        skipWs();
        bool parens = eat('(');
        bool neg = eat('-');
        Rational num = parseIntegerLiteral();
        Rational result = neg ? Rational(-num) : num;
        if (parens) {
            if (eat('/')) {
                Rational den = parseIntegerLiteral();
                if (den == 0) throw DivisionByZero();
                result /= den;
            }
            if (!eat(')')) fail("expected ')' in exponent");
        }
        return result;
    }

    Rational parseIntegerLiteral() {
        skipWs();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected integer");
        return ratFromString(text_.substr(start, pos_ - start));
    }

    Expression applyPower(const Expression& base, const Rational& e) {
        if (isInteger(e)) {
            long n = e.get_num().get_si();
            if (n == 0) return Expression(Rational(1));
            Expression r(Rational(1));
            Expression b = base;
            long a = n < 0 ? -n : n;
            for (long i = 0; i < a; ++i) r = r * b;
            if (n < 0) r = Expression(Rational(1)) / r;
            return r;
        }
        // rational exponent: base must be a single term
        if (base.terms().size() != 1)
            throw UnsupportedOperation("rational power of a sum is outside the expression class");
        const ExTerm& t = base.terms()[0];
        ExTerm out;
        out.coeff = RatFun(Rational(1));
        auto pushPoly = [&](const Polynomial& p, const Rational& ex) {
            if (p.isConstant()) {
                if (p.constantValue() == 1) return;
                throw UnsupportedOperation("rational power of a constant is outside the class");
            }
            if (p.content() != 1)
                throw UnsupportedOperation("rational power of a non-primitive polynomial");
            out.rads.push_back({p, ex});
        };
        pushPoly(t.coeff.num(), e);
        pushPoly(t.coeff.den(), Rational(-e));
        for (auto& rf : t.rads) out.rads.push_back({rf.base, Rational(rf.exponent * e)});
        Polynomial scaledArg;
        for (auto& [m, c] : t.expArg.terms()) scaledArg.addTerm(c * e, m);
        out.expArg = scaledArg;
        return Expression::fromTerms({out});
    }

    Expression parseAtom() {
        skipWs();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return Expression(parseIntegerLiteral());
        if (c == '(') {
            ++pos_;
            Expression e = parseSum();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name = text_.substr(start, pos_ - start);
            if (name == "exp") {
                if (!eat('(')) fail("expected '(' after exp");
                Expression arg = parseSum();
                if (!eat(')')) fail("expected ')' after exp argument");
                auto rf = arg.asRatFun();
                if (!rf || !rf->isPolynomial())
                    throw UnsupportedOperation("exp argument must be a polynomial");
                return Expression::expOf(rf->num());
            }
            int id = sym(name);
            if (strict_ && !strict_->count(id)) throw UnknownSymbolError(name);
            return Expression::variable(id);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& text_;
    const std::set<int>* strict_;
    std::size_t pos_ = 0;
};

} // namespace

Expression parseExpression(const std::string& text, const std::set<int>* strictSymbols) {
    return Parser(text, strictSymbols).parse();
}

} // namespace integralis
