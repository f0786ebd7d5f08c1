#pragma once

// Small recursive-descent parser for infix expressions such as
// "2*x^2*y - 1/3" or "(x+1)*xi1*xi2". The value type is supplied by the
// caller through callbacks, so the same grammar serves polynomials and
// superfunctions.
//
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := power (('*'|'/') power)*
//   power   := atom ['^' integer]
//   atom    := number | identifier | '(' expr ')'

#include <cctype>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace nqforge {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t column)
        : std::runtime_error(msg + " (column " + std::to_string(column) + ")"), column_(column) {}
    // 1-based column inside the parsed string
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

template <class T>
struct ExprOps {
    std::function<T(const mpq_class&)> constant;
    std::function<T(std::string_view, std::size_t)> identifier;
    std::function<std::optional<mpq_class>(const T&)> as_constant;
    std::function<T(const T&, const mpq_class&)> scale;
};

template <class T>
class ExprParser {
public:
    ExprParser(std::string_view text, const ExprOps<T>& ops) : s_(text), ops_(ops) {}

    T parse() {
        skip();
        if (pos_ >= s_.size()) fail("empty expression");
        T v = expr();
        skip();
        if (pos_ < s_.size()) fail(std::string("unexpected character '") + s_[pos_] + "'");
        return v;
    }

private:
    std::string_view s_;
    const ExprOps<T>& ops_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_ + 1); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    T expr() {
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        T v = term();
        if (neg) v = ops_.scale(v, mpq_class(-1));
        for (;;) {
            if (eat('+')) v = v + term();
            else if (eat('-')) v = v - term();
            else break;
        }
        return v;
    }

    T term() {
        T v = power();
        for (;;) {
            if (eat('*')) {
                v = v * power();
            } else if (eat('/')) {
                std::size_t at = pos_;
                T d = power();
                auto c = ops_.as_constant(d);
                if (!c) { pos_ = at; fail("division by a non-constant"); }
                if (*c == 0) { pos_ = at; fail("division by zero"); }
                v = ops_.scale(v, 1 / *c);
            } else {
                break;
            }
        }
        return v;
    }

    T power() {
        T base = atom();
        if (eat('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected a non-negative integer exponent");
            unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
            T r = ops_.constant(mpq_class(1));
            for (unsigned long i = 0; i < e; ++i) r = r * base;
            return r;
        }
        return base;
    }

    T atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            T v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            mpq_class q(std::string(s_.substr(start, pos_ - start)), 10);
            return ops_.constant(q);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
                ++pos_;
            return ops_.identifier(s_.substr(start, pos_ - start), start + 1);
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace nqforge
