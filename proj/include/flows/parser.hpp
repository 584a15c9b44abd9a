#pragma once

#include "errors.hpp"
#include "flow.hpp"
#include "ratfn.hpp"

#include <cctype>
#include <string>
#include <string_view>
#include <utility>

namespace flows {

// Grammar:
//   flow   := "u" "=" expr ";" "v" "=" expr [";"]
//   field  := "(" expr "," expr ")"
//   expr   := term (("+" | "-") term)*
//   term   := unary (("*" | "/") unary)*
//   unary  := "-" unary | "+" unary | power
//   power  := atom ["^" unary]        exponent must be an integer constant
//   atom   := integer | "x" | "y" | "(" expr ")"
class ExprParser {
public:
    explicit ExprParser(std::string_view src) : src_(src) {}

    RatFn parse_expression()
    {
        RatFn e = expr();
        expect_end();
        return e;
    }

    Flow parse_flow()
    {
        expect_name("u");
        expect('=');
        RatFn u = expr();
        expect(';');
        expect_name("v");
        expect('=');
        RatFn v = expr();
        if (peek() == ';')
            advance();
        expect_end();
        return {u, v};
    }

    VectorField parse_field()
    {
        expect('(');
        RatFn w = expr();
        expect(',');
        RatFn r = expr();
        expect(')');
        expect_end();
        return {w, r};
    }

    // Heuristic used by the CLI: flows contain '=', fields start with '('.
    static bool looks_like_flow(std::string_view s) { return s.find('=') != std::string_view::npos; }

private:
    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

    void skip_ws()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }
    char peek()
    {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }
    void advance()
    {
        ++pos_;
        ++col_;
    }
    void expect(char c)
    {
        if (peek() != c)
            fail(std::string("expected '") + c + "'" + found());
        advance();
    }
    void expect_name(const char* n)
    {
        if (peek() != n[0])
            fail(std::string("expected '") + n + "'" + found());
        advance();
    }
    void expect_end()
    {
        if (peek() != '\0')
            fail("unexpected trailing input" + found());
    }
    std::string found()
    {
        char c = peek();
        return c == '\0' ? ", found end of input" : std::string(", found '") + c + "'";
    }

    RatFn expr()
    {
        RatFn acc = term();
        while (true) {
            char c = peek();
            if (c != '+' && c != '-')
                return acc;
            advance();
            RatFn rhs = term();
            acc = c == '+' ? acc + rhs : acc - rhs;
        }
    }

    RatFn term()
    {
        RatFn acc = unary();
        while (true) {
            char c = peek();
            if (c != '*' && c != '/')
                return acc;
            int l = line_, cl = col_;
            advance();
            RatFn rhs = unary();
            if (c == '*') {
                acc = acc * rhs;
            } else {
                if (rhs.is_zero())
                    throw ParseError("division by zero", l, cl);
                acc = acc / rhs;
            }
        }
    }

    RatFn unary()
    {
        char c = peek();
        if (c == '-') {
            advance();
            return -unary();
        }
        if (c == '+') {
            advance();
            return unary();
        }
        return power();
    }

    RatFn power()
    {
        RatFn base = atom();
        if (peek() != '^')
            return base;
        advance();
        int l = line_, c = col_;
        RatFn e = unary();
        if (!e.is_constant() || !is_integer(e.constant_value()))
            throw ParseError("exponent must be an integer constant", l, c);
        Scalar ev = e.constant_value();
        if (abs(ev) > 10000)
            throw ParseError("exponent too large", l, c);
        int k = static_cast<int>(ev.get_num().get_si());
        if (k < 0 && base.is_zero())
            throw ParseError("division by zero", l, c);
        return pow(base, k);
    }

    RatFn atom()
    {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                advance();
            if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E'))
                fail("decimal literals are not allowed; write fractions such as 3/4");
            return RatFn(Scalar(Integer(std::string(src_.substr(start, pos_ - start)))));
        }
        if (c == '.')
            fail("decimal literals are not allowed; write fractions such as 3/4");
        if (c == 'x' || c == 'y') {
            advance();
            if (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                fail("unknown identifier");
            return RatFn(c == 'x' ? Poly::x() : Poly::y());
        }
        if (c == '(') {
            advance();
            RatFn e = expr();
            expect(')');
            return e;
        }
        if (c == '\0')
            fail("unexpected end of input");
        if (std::isalpha(static_cast<unsigned char>(c)))
            fail(std::string("unknown identifier starting with '") + c + "'");
        fail(std::string("unexpected character '") + c + "'");
    }
};

inline RatFn parse_expr(std::string_view s) { return ExprParser(s).parse_expression(); }
inline Flow parse_flow(std::string_view s) { return ExprParser(s).parse_flow(); }
inline VectorField parse_field(std::string_view s) { return ExprParser(s).parse_field(); }

inline std::string print_flow(const Flow& f) { return f.to_string(); }
inline std::string print_field(const VectorField& vf) { return vf.to_string(); }

} // namespace flows
