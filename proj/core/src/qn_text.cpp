#include "psc/qn.hpp"
#include "psc/scalar.hpp"

#include "text_cursor.hpp"

#include <sstream>

namespace psc::qn {

std::string to_text(const AlgebraElem& x) {
    if (x.terms.empty()) return "(0)";
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, c] : x.terms) {
        if (!first) out << " + ";
        first = false;
        std::size_t pieces = 0;
        for (const auto& [theta, q] : c.terms) pieces += q.parts.size();
        if (pieces > 1)
            out << "(" << psc::to_text(c) << ")";
        else
            out << psc::to_text(c);
        if (key.k != 0) out << "*u^" << to_string(key.k);
        if (!key.m.is_one()) out << "*s(" << to_string(key.m.value()) << ")";
        if (!key.n.is_one()) out << "*s*(" << to_string(key.n.value()) << ")";
        if (key.l != 0) out << "*u^-" << to_string(key.l);
    }
    return out.str();
}

namespace {

using detail::Cursor;

// One product term: scalar factors fold into the coefficient, generator
// letters fold through mul, so the term lands in normal form directly.
AlgebraElem parse_term(Cursor& c, const Bicharacter& xi) {
    ExactScalar coeff = ExactScalar::one();
    std::optional<Monomial> mono =
        make_monomial(ExactScalar::one(), 0, FactoredNat::one(), FactoredNat::one(), 0);
    auto absorb = [&](std::optional<Monomial> letter) {
        if (mono && letter)
            mono = mul(*mono, *letter, xi);
        else
            mono = std::nullopt;
    };
    bool any = false;
    do {
        if (c.try_word("ph(")) {
            Rat theta = c.parse_rational();
            c.expect(')');
            coeff *= ExactScalar::phase(theta);
        } else if (c.try_word("sqrt(")) {
            Rat v = c.parse_rational();
            c.expect(')');
            coeff *= ExactScalar::of(sqrt_positive(v));
        } else if (c.try_word("s*(")) {
            Int n = c.parse_int();
            c.expect(')');
            if (n < 1) c.fail("s*(n) needs n >= 1");
            absorb(make_monomial(ExactScalar::one(), 0, FactoredNat::one(), FactoredNat::of_value(n), 0));
        } else if (c.try_word("s(")) {
            Int m = c.parse_int();
            c.expect(')');
            if (m < 1) c.fail("s(m) needs m >= 1");
            absorb(make_monomial(ExactScalar::one(), 0, FactoredNat::of_value(m), FactoredNat::one(), 0));
        } else if (c.try_word("u^")) {
            Int k = c.parse_int();
            absorb(make_monomial(ExactScalar::one(), k, FactoredNat::one(), FactoredNat::one(), 0));
        } else if (c.try_word("u")) {
            absorb(make_monomial(ExactScalar::one(), 1, FactoredNat::one(), FactoredNat::one(), 0));
        } else if (c.try_eat('(')) {
            std::size_t depth = 1, start = c.pos;
            while (c.pos < c.s.size() && depth) {
                if (c.s[c.pos] == '(') ++depth;
                if (c.s[c.pos] == ')') --depth;
                ++c.pos;
            }
            if (depth) c.fail("unbalanced parenthesis");
            coeff *= parse_scalar(std::string(c.s.substr(start, c.pos - 1 - start)));
        } else if (c.try_word("i")) {
            coeff *= ExactScalar::imaginary_unit();
        } else if (c.looks_like_number()) {
            coeff *= ExactScalar::of(c.parse_rational());
        } else {
            c.fail("expected factor");
        }
        any = true;
    } while (c.try_eat('*'));
    if (!any) c.fail("empty term");
    AlgebraElem out;
    if (mono) {
        ExactScalar total = coeff * mono->c;
        if (!total.is_zero()) out.add_term(mono->key, total);
    }
    return out;
}

}  // namespace

AlgebraElem parse_element(const std::string& text, const Bicharacter& xi) {
    Cursor c{text};
    AlgebraElem result;
    bool first = true;
    while (true) {
        int sign = 1;
        if (c.try_eat('-'))
            sign = -1;
        else if (!c.try_eat('+') && !first)
            break;
        if (c.done()) {
            if (first) c.fail("empty element");
            c.fail("dangling sign");
        }
        first = false;
        AlgebraElem term = parse_term(c, xi);
        result = (sign < 0) ? result - term : result + term;
    }
    if (!c.done()) c.fail("trailing input");
    return result;
}

}  // namespace psc::qn
