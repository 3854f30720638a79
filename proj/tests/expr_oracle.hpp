#pragma once

// Independent reference for the expression grammar: random expression text
// and a shunting-yard evaluator that computes its value at a rational point
// with plain Rational arithmetic, sharing no code with the recursive-descent
// parser.

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include <wmpinv/wmpinv.hpp>

namespace wmp::testing {

/// Value of `text` at x = t, or nullopt when evaluation divides by zero.
/// Text must be well formed per the grammar.
inline std::optional<Rational> shunting_yard_eval(const std::string& text, const Rational& t)
{
    std::vector<Rational> vals;
    std::vector<char> ops;
    auto prec = [](char op) { return op == '^' ? 3 : (op == '*' || op == '/') ? 2 : 1; };
    bool failed = false;
    auto apply = [&](char op) {
        const Rational b = vals.back();
        vals.pop_back();
        Rational& a = vals.back();
        switch (op) {
        case '+': a += b; break;
        case '-': a -= b; break;
        case '*': a *= b; break;
        case '/':
            if (b.is_zero()) failed = true;
            else a /= b;
            break;
        case '^': {
            Rational r(1);
            for (long e = b.numerator().get_si(); e > 0; --e) r *= a;
            a = r;
            break;
        }
        }
    };
    bool expect_operand = true;
    for (std::size_t i = 0; i < text.size() && !failed; ++i) {
        const char c = text[i];
        if (c == ' ' || c == '\t') continue;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            vals.emplace_back(mpz_class(text.substr(i, j - i), 10), mpz_class(1));
            i = j - 1;
            expect_operand = false;
        } else if (c == 'x') {
            vals.push_back(t);
            expect_operand = false;
        } else if (c == '(') {
            ops.push_back('(');
            expect_operand = true;
        } else if (c == ')') {
            while (ops.back() != '(') {
                apply(ops.back());
                ops.pop_back();
            }
            ops.pop_back();
            expect_operand = false;
        } else {
            if (c == '-' && expect_operand) vals.emplace_back(0); // unary minus as 0 - term
            // '^' is bound to a base only, so it never associates over another '^'.
            while (!ops.empty() && ops.back() != '(' && prec(ops.back()) >= prec(c)) {
                apply(ops.back());
                ops.pop_back();
            }
            ops.push_back(c);
            expect_operand = true;
        }
    }
    while (!ops.empty() && !failed) {
        apply(ops.back());
        ops.pop_back();
    }
    if (failed) return std::nullopt;
    return vals.back();
}

/// Random well-formed expression text with random blanks.
class ExprGen {
public:
    explicit ExprGen(std::uint64_t seed) : rng_(seed) {}

    std::string expr(int depth)
    {
        std::string s;
        if (rng_.uniform_int(0, 3) == 0) s += "-" + blank();
        s += term(depth);
        const long extra = depth > 0 ? rng_.uniform_int(0, 2) : 0;
        for (long i = 0; i < extra; ++i) s += blank() + (rng_.uniform_int(0, 1) ? "+" : "-") + blank() + term(depth);
        return s;
    }

private:
    std::string blank() { return rng_.uniform_int(0, 4) == 0 ? " " : ""; }

    std::string term(int depth)
    {
        std::string s = factor(depth);
        const long extra = depth > 0 ? rng_.uniform_int(0, 2) : 0;
        for (long i = 0; i < extra; ++i) s += blank() + (rng_.uniform_int(0, 2) ? "*" : "/") + blank() + factor(depth);
        return s;
    }

    std::string factor(int depth)
    {
        std::string s = base(depth);
        if (rng_.uniform_int(0, 4) == 0) s += blank() + "^" + blank() + std::to_string(rng_.uniform_int(0, 3));
        return s;
    }

    std::string base(int depth)
    {
        const long pick = rng_.uniform_int(0, depth > 0 ? 2 : 1);
        if (pick == 0) return std::to_string(rng_.uniform_int(0, 12));
        if (pick == 1) return "x";
        return "(" + blank() + expr(depth - 1) + blank() + ")";
    }

    Rng rng_;
};

} // namespace wmp::testing
