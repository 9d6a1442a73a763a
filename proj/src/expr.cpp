#include "dilation/expr.hpp"

#include <cctype>
#include <cmath>
#include <memory>
#include <vector>

#include "dilation/errors.hpp"

namespace dilation::expr {

namespace {

using Fn = std::function<double(double)>;

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw DomainError("expr: " + what + " at position " +
                          std::to_string(pos) + " in '" + s + "'");
    }

    Fn parse() {
        Fn e = sum();
        skip();
        if (pos != s.size()) fail("trailing input");
        return e;
    }

    Fn sum() {
        Fn lhs = term();
        for (;;) {
            if (eat('+')) {
                Fn rhs = term();
                lhs = [lhs, rhs](double x) { return lhs(x) + rhs(x); };
            } else if (eat('-')) {
                Fn rhs = term();
                lhs = [lhs, rhs](double x) { return lhs(x) - rhs(x); };
            } else {
                return lhs;
            }
        }
    }

    Fn term() {
        Fn lhs = unary();
        for (;;) {
            if (eat('*')) {
                Fn rhs = unary();
                lhs = [lhs, rhs](double x) { return lhs(x) * rhs(x); };
            } else if (eat('/')) {
                Fn rhs = unary();
                lhs = [lhs, rhs](double x) { return lhs(x) / rhs(x); };
            } else {
                return lhs;
            }
        }
    }

    // unary minus binds looser than '^': -x^2 is -(x^2)
    Fn unary() {
        if (eat('-')) {
            Fn a = unary();
            return [a](double x) { return -a(x); };
        }
        if (eat('+')) return unary();
        return power();
    }

    Fn power() { // right-associative; the exponent may carry its own sign
        Fn base = atom();
        if (eat('^')) {
            Fn expo = unary();
            return [base, expo](double x) { return std::pow(base(x), expo(x)); };
        }
        return base;
    }

    Fn atom() {
        skip();
        if (pos >= s.size()) fail("unexpected end");
        if (eat('(')) {
            Fn e = sum();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        const char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            const double v = std::stod(s.substr(pos), &used);
            pos += used;
            return [v](double) { return v; };
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos;
            while (end < s.size() &&
                   std::isalpha(static_cast<unsigned char>(s[end])))
                ++end;
            const std::string name = s.substr(pos, end - pos);
            pos = end;
            if (name == "x") return [](double x) { return x; };
            if (name == "pi") return [](double) { return M_PI; };
            Fn arg;
            if (!eat('(')) fail("expected '(' after " + name);
            arg = sum();
            if (!eat(')')) fail("expected ')'");
            if (name == "exp") return [arg](double x) { return std::exp(arg(x)); };
            if (name == "log") return [arg](double x) { return std::log(arg(x)); };
            if (name == "sin") return [arg](double x) { return std::sin(arg(x)); };
            if (name == "cos") return [arg](double x) { return std::cos(arg(x)); };
            if (name == "sinh") return [arg](double x) { return std::sinh(arg(x)); };
            if (name == "cosh") return [arg](double x) { return std::cosh(arg(x)); };
            if (name == "abs") return [arg](double x) { return std::abs(arg(x)); };
            fail("unknown function '" + name + "'");
        }
        fail("unexpected character");
    }
};

} // namespace

std::function<double(double)> compile(const std::string& text) {
    Parser p(text);
    return p.parse();
}

} // namespace dilation::expr
