#pragma once

#include "psc/rational.hpp"

#include <cctype>
#include <string>
#include <string_view>

namespace psc::detail {

// Minimal shared lexer for the exact text formats.
struct Cursor {
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool try_eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!try_eat(c)) fail(std::string("expected '") + c + "'");
    }
    bool try_word(std::string_view w) {
        skip_ws();
        if (s.substr(pos, w.size()) == w) {
            pos += w.size();
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("parse error at offset " + std::to_string(pos) + ": " + msg +
                                    " in '" + std::string(s) + "'");
    }

    bool looks_like_number() {
        skip_ws();
        if (pos >= s.size()) return false;
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) return true;
        if ((c == '+' || c == '-') && pos + 1 < s.size() &&
            std::isdigit(static_cast<unsigned char>(s[pos + 1])))
            return true;
        return false;
    }

    Int parse_int() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        std::size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits) fail("expected integer");
        return Int(std::string(s.substr(start, pos - start)));
    }

    Rat parse_rational() {
        Int num = parse_int();
        if (try_eat('/')) {
            Int den = parse_int();
            return make_rat(num, den);
        }
        return Rat(num);
    }
};

}  // namespace psc::detail
