#pragma once

/*
 * Polynomial text parser.
 *
 *   expr   := term (('+' | '-') term)*
 *   term   := factor ('*' factor)*
 *   factor := base ('^' natural)?
 *   base   := number | variable | '(' expr ')' | '-' base
 *   number := natural ('/' natural)?
 *
 * Variables come from the ring (s0,s1,s2 / s0,s1,t0,t1 / X0..X3). Whitespace
 * is ignored. There is no implicit multiplication, and '/' only joins two
 * integer literals. Note one grammar corner: unary minus is part of the
 * base, so "-s0^2" is (-s0)^2; write -(s0^2) for the other reading.
 *
 * Homogeneity is not checked here; callers validate it where it matters.
 */

#include "fibratrix/poly.hpp"

#include <cctype>
#include <string>
#include <string_view>

namespace fibratrix {

struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(std::size_t at, const std::string& what)
        : std::runtime_error("parse error at position " + std::to_string(at) + ": " +
                             what),
          pos(at) {}
};

namespace detail {

class PolyParser {
  public:
    PolyParser(const RingSpec& ring, const Field& field, std::string_view text)
        : ring_(ring), field_(field), s_(text) {}

    MultiPoly run() {
        skip_ws();
        if (at_end()) throw ParseError(pos_, "empty polynomial");
        MultiPoly p = expr();
        skip_ws();
        if (!at_end()) throw ParseError(pos_, std::string("unexpected '") + peek() + "'");
        return p;
    }

  private:
    MultiPoly expr() {
        MultiPoly acc = term();
        for (;;) {
            skip_ws();
            if (accept('+')) acc = acc + term();
            else if (accept('-')) acc = acc - term();
            else return acc;
        }
    }

    MultiPoly term() {
        MultiPoly acc = factor();
        for (;;) {
            skip_ws();
            if (accept('*')) acc = acc * factor();
            else return acc;
        }
    }

    MultiPoly factor() {
        MultiPoly b = base();
        skip_ws();
        if (!accept('^')) return b;
        skip_ws();
        long e = natural("exponent");
        if (e > 512) throw ParseError(pos_, "exponent too large");
        MultiPoly acc = MultiPoly::constant(ring_, field_, FieldElem::one(field_));
        for (long i = 0; i < e; ++i) acc = acc * b;
        return acc;
    }

    MultiPoly base() {
        skip_ws();
        if (at_end()) throw ParseError(pos_, "expected a value");
        char c = peek();
        if (c == '-') {
            ++pos_;
            return -base();
        }
        if (c == '(') {
            ++pos_;
            MultiPoly p = expr();
            skip_ws();
            if (!accept(')')) throw ParseError(pos_, "expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return variable();
        throw ParseError(pos_, std::string("unexpected '") + c + "'");
    }

    MultiPoly number() {
        Int num = digits("number");
        skip_ws();
        if (accept('/')) {
            skip_ws();
            std::size_t at = pos_;
            Int den = digits("denominator");
            if (den == 0) throw ParseError(at, "zero denominator");
            return MultiPoly::constant(ring_, field_,
                                       FieldElem::of(field_, Rat(num) / Rat(den)));
        }
        return MultiPoly::constant(ring_, field_, FieldElem::of(field_, num));
    }

    MultiPoly variable() {
        std::size_t at = pos_;
        std::string name;
        name += s_[pos_++];
        while (!at_end() && std::isalnum(static_cast<unsigned char>(peek())))
            name += s_[pos_++];
        int i = ring_.var_index(name);
        if (i < 0)
            throw ParseError(at, "unknown variable '" + name + "' in " + ring_.str() +
                                     " ring");
        return MultiPoly::variable(ring_, field_, i);
    }

    long natural(const char* what) {
        Int n = digits(what);
        if (n > 100000) throw ParseError(pos_, std::string(what) + " too large");
        return n.convert_to<long>();
    }

    Int digits(const char* what) {
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError(pos_, std::string("expected ") + what);
        std::string d;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
            d += s_[pos_++];
        return Int(d);
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    bool accept(char c) {
        if (!at_end() && peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RingSpec ring_;
    Field field_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline MultiPoly parse_poly(const RingSpec& ring, const Field& field,
                            std::string_view text) {
    return detail::PolyParser(ring, field, text).run();
}

}  // namespace fibratrix
