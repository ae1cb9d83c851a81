#include "psc/scalar.hpp"

#include "text_cursor.hpp"

#include <sstream>

namespace psc {

ExactScalar ExactScalar::of(const QuadRat& c) {
    ExactScalar r;
    r.add_term(Rat(0), c);
    return r;
}

ExactScalar ExactScalar::phase(const Rat& theta) {
    ExactScalar r;
    r.add_term(theta, QuadRat::one());
    return r;
}

ExactScalar ExactScalar::star() const {
    ExactScalar r;
    for (const auto& [theta, c] : terms) r.terms.emplace(-theta, c.conj());
    return r;
}

bool ExactScalar::is_rational(Rat* out) const {
    if (terms.empty()) {
        if (out) *out = 0;
        return true;
    }
    if (terms.size() != 1) return false;
    const auto& [theta, c] = *terms.begin();
    if (theta != 0) return false;
    return c.is_rational(out);
}

bool ExactScalar::is_positive_rational(Rat* out) const {
    Rat v;
    if (!is_rational(&v) || v <= 0) return false;
    if (out) *out = v;
    return true;
}

void ExactScalar::add_term(const Rat& theta, const QuadRat& c) {
    if (c.is_zero()) return;
    auto it = terms.find(theta);
    if (it == terms.end()) {
        terms.emplace(theta, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
    ExactScalar r = a;
    for (const auto& [theta, c] : b.terms) r.add_term(theta, c);
    return r;
}

ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
    ExactScalar r = a;
    for (const auto& [theta, c] : b.terms) r.add_term(theta, -c);
    return r;
}

ExactScalar operator-(const ExactScalar& a) {
    ExactScalar r;
    for (const auto& [theta, c] : a.terms) r.terms.emplace(theta, -c);
    return r;
}

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    ExactScalar r;
    for (const auto& [t1, c1] : a.terms)
        for (const auto& [t2, c2] : b.terms) r.add_term(t1 + t2, c1 * c2);
    return r;
}

namespace {

std::string gauss_text(const GaussRat& g) {
    if (g.im == 0) return to_string(g.re);
    std::string im = to_string(abs(g.im)) + "*i";
    if (g.re == 0) return (g.im < 0 ? "-" : "") + im;
    return to_string(g.re) + (g.im < 0 ? "-" : "+") + im;
}

}  // namespace

std::string to_text(const ExactScalar& s) {
    if (s.is_zero()) return "(0)";
    std::ostringstream out;
    bool first = true;
    for (const auto& [theta, coeff] : s.terms) {
        for (const auto& [rad, g] : coeff.parts) {
            if (!first) out << " + ";
            first = false;
            out << "(" << gauss_text(g) << ")";
            if (rad != 1) out << "*sqrt(" << to_string(rad) << ")";
            if (theta != 0) out << "*ph(" << to_string(theta) << ")";
        }
    }
    return out.str();
}

namespace {

using detail::Cursor;

ExactScalar parse_scalar_sum(Cursor& c);

// factor := rational | i | ph(q) | sqrt(q) | ( sum )
ExactScalar parse_scalar_factor(Cursor& c) {
    if (c.try_word("ph(")) {
        Rat theta = c.parse_rational();
        c.expect(')');
        return ExactScalar::phase(theta);
    }
    if (c.try_word("sqrt(")) {
        Rat x = c.parse_rational();
        c.expect(')');
        return ExactScalar::of(sqrt_positive(x));
    }
    if (c.try_eat('(')) {
        ExactScalar inner = parse_scalar_sum(c);
        c.expect(')');
        return inner;
    }
    if (c.try_word("i")) return ExactScalar::imaginary_unit();
    if (c.looks_like_number()) return ExactScalar::of(c.parse_rational());
    c.fail("expected scalar factor");
}

ExactScalar parse_scalar_term(Cursor& c) {
    ExactScalar r = parse_scalar_factor(c);
    while (c.try_eat('*')) r *= parse_scalar_factor(c);
    return r;
}

ExactScalar parse_scalar_sum(Cursor& c) {
    bool neg = false;
    if (c.try_eat('-'))
        neg = true;
    else
        c.try_eat('+');
    ExactScalar r = parse_scalar_term(c);
    if (neg) r = -r;
    while (true) {
        if (c.try_eat('+'))
            r += parse_scalar_term(c);
        else if (c.try_eat('-'))
            r -= parse_scalar_term(c);
        else
            break;
    }
    return r;
}

}  // namespace

ExactScalar parse_scalar(const std::string& text) {
    Cursor c{text};
    ExactScalar r = parse_scalar_sum(c);
    if (!c.done()) c.fail("trailing input");
    return r;
}

}  // namespace psc
