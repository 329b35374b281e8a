// Text grammar for polynomials and Nash expressions.
//
// Variables x1..x9, rationals p/q, operators + - * / ^, function sqrt(...).
// Whitespace-insensitive. This grammar is the input format for all CLI
// commands.
#ifndef NASHATLAS_PARSE_HPP
#define NASHATLAS_PARSE_HPP

#include <cctype>
#include <stdexcept>
#include <string>

#include "nashatlas/expr.hpp"

namespace nashatlas {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

class ExprParser {
  public:
    ExprParser(const std::string& text, int arity) : text_(text), arity_(arity) {}

    NashExpr parse() {
        NashExpr e = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("trailing input at position " + std::to_string(pos_));
        return e;
    }

    int max_var() const { return max_var_; }

  private:
    NashExpr expr() {
        skip_ws();
        bool neg = false;
        while (peek() == '+' || peek() == '-') {
            if (get() == '-') neg = !neg;
            skip_ws();
        }
        NashExpr acc = term();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+') {
                get();
                acc = acc + term();
            } else if (c == '-') {
                get();
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    NashExpr term() {
        NashExpr acc = factor();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '*') {
                get();
                acc = acc * factor();
            } else if (c == '/') {
                get();
                acc = acc / factor();
            } else {
                return acc;
            }
        }
    }

    NashExpr factor() {
        skip_ws();
        bool neg = false;
        while (peek() == '+' || peek() == '-') {
            if (get() == '-') neg = !neg;
            skip_ws();
        }
        NashExpr base = atom();
        skip_ws();
        if (peek() == '^') {
            get();
            skip_ws();
            bool eneg = false;
            if (peek() == '-') {
                get();
                eneg = true;
            }
            unsigned n = integer();
            NashExpr p = NashExpr::constant(arity_, 1);
            for (unsigned k = 0; k < n; ++k) p = p * base;
            if (eneg) p = NashExpr::constant(arity_, 1) / p;
            base = p;
        }
        return neg ? -base : base;
    }

    NashExpr atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            NashExpr e = expr();
            skip_ws();
            if (get() != ')') throw ParseError("expected ')'");
            return e;
        }
        if (c == 's') {
            expect_word("sqrt");
            skip_ws();
            if (get() != '(') throw ParseError("expected '(' after sqrt");
            NashExpr e = expr();
            skip_ws();
            if (get() != ')') throw ParseError("expected ')'");
            return sqrt(e);
        }
        if (c == 'x') {
            get();
            if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("expected digit after 'x'");
            int idx = get() - '0';
            if (idx < 1 || idx > 9) throw ParseError("variables are x1..x9");
            if (idx > arity_) throw ParseError("variable x" + std::to_string(idx) + " exceeds arity");
            if (idx > max_var_) max_var_ = idx;
            return NashExpr::variable(arity_, idx - 1);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return NashExpr::constant(arity_, Rat(boost::multiprecision::cpp_int(digits())));
        }
        throw ParseError(std::string("unexpected character '") + (c ? std::string(1, c) : "<end>") + "'");
    }

    unsigned integer() {
        std::string d = digits();
        return static_cast<unsigned>(std::stoul(d));
    }

    std::string digits() {
        skip_ws();
        std::string out;
        while (std::isdigit(static_cast<unsigned char>(peek()))) out.push_back(get());
        if (out.empty()) throw ParseError("expected number");
        return out;
    }

    void expect_word(const std::string& w) {
        for (char c : w)
            if (get() != c) throw ParseError("expected '" + w + "'");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char get() {
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input");
        return text_[pos_++];
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int arity_;
    int max_var_ = 0;
};

inline int scan_arity(const std::string& text) {
    int arity = 1;
    for (std::size_t i = 0; i + 1 < text.size(); ++i)
        if (text[i] == 'x' && std::isdigit(static_cast<unsigned char>(text[i + 1])))
            arity = std::max(arity, text[i + 1] - '0');
    return arity;
}

}  // namespace detail

// Parses an expression; arity defaults to the highest variable mentioned.
inline NashExpr parse_expr(const std::string& text, int arity = 0) {
    if (arity <= 0) arity = detail::scan_arity(text);
    detail::ExprParser p(text, arity);
    return p.parse();
}

namespace detail {

class PolyParser {
  public:
    PolyParser(const std::string& text, int arity) : text_(text), arity_(arity) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("trailing input at position " + std::to_string(pos_));
        return p;
    }

  private:
    Polynomial expr() {
        skip_ws();
        bool neg = false;
        while (peek() == '+' || peek() == '-') {
            if (get() == '-') neg = !neg;
            skip_ws();
        }
        Polynomial acc = term();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+') {
                get();
                acc = acc + term();
            } else if (c == '-') {
                get();
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    Polynomial term() {
        Polynomial acc = factor();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '*') {
                get();
                acc = acc * factor();
            } else if (c == '/') {
                get();
                Polynomial den = factor();
                if (!den.is_constant() || den.constant_value() == 0)
                    throw ParseError("polynomial division must be by a nonzero constant");
                acc = acc * (Rat(1) / den.constant_value());
            } else {
                return acc;
            }
        }
    }

    Polynomial factor() {
        skip_ws();
        bool neg = false;
        while (peek() == '+' || peek() == '-') {
            if (get() == '-') neg = !neg;
            skip_ws();
        }
        Polynomial base = atom();
        skip_ws();
        if (peek() == '^') {
            get();
            skip_ws();
            std::string d;
            while (std::isdigit(static_cast<unsigned char>(peek()))) d.push_back(get());
            if (d.empty()) throw ParseError("expected exponent");
            base = base.pow(static_cast<unsigned>(std::stoul(d)));
        }
        return neg ? -base : base;
    }

    Polynomial atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            Polynomial e = expr();
            skip_ws();
            if (get() != ')') throw ParseError("expected ')'");
            return e;
        }
        if (c == 'x') {
            get();
            if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("expected digit after 'x'");
            int idx = get() - '0';
            if (idx < 1 || idx > 9) throw ParseError("variables are x1..x9");
            if (idx > arity_) throw ParseError("variable x" + std::to_string(idx) + " exceeds arity");
            return Polynomial::variable(arity_, idx - 1);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string d;
            while (std::isdigit(static_cast<unsigned char>(peek()))) d.push_back(get());
            return Polynomial::constant(arity_, Rat(boost::multiprecision::cpp_int(d)));
        }
        throw ParseError(std::string("unexpected character '") + (c ? std::string(1, c) : "<end>") + "'");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char get() {
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input");
        return text_[pos_++];
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int arity_;
};

}  // namespace detail

// Parses a polynomial with the same grammar; division must be by a nonzero
// constant and sqrt is rejected.
inline Polynomial parse_polynomial(const std::string& text, int arity = 0) {
    if (arity <= 0) arity = detail::scan_arity(text);
    detail::PolyParser p(text, arity);
    return p.parse();
}

}  // namespace nashatlas

#endif
