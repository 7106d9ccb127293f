#include "drinfeld/textio.hpp"

#include <cctype>
#include <sstream>

#include "drinfeld/errors.hpp"

namespace drinfeld {
namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool eat(char c) {
        if (peek() != c) return false;
        ++i;
        return true;
    }
    void expect(char c, const char* what) {
        if (!eat(c))
            throw usage_error(std::string("expected '") + c + "' in " + what + ": " + s);
    }

    std::int64_t integer(const char* what, bool allow_sign) {
        skip_ws();
        bool negative = false;
        if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) negative = s[i++] == '-';
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start)
            throw usage_error(std::string("expected an integer as ") + what + ": " + s);
        if (i - start > 18) throw resource_error(std::string(what) + " has too many digits");
        std::int64_t v = std::stoll(s.substr(start, i - start));
        return negative ? -v : v;
    }
};

FqElem generator_power(const FqPtr& F, Cursor& c) {
    ++c.i;  // past 'g'
    std::int64_t j = 1;
    if (c.eat('^')) j = c.integer("generator exponent", false);
    if (F->k() == 1)
        throw usage_error("generator notation g^j needs an extension coefficient field");
    return F->pow_i64(F->generator(), j);
}

}  // namespace

std::string coeff_to_text(const FqPtr& F, FqElem c) {
    if (F->k() == 1) return std::to_string(c);
    if (c == F->one()) return "1";
    return "g^" + std::to_string(F->dlog(c));
}

std::string poly_to_text(const PolyT& f) {
    if (f.is_zero()) return "0";
    const FqPtr& F = f.field();
    std::ostringstream out;
    bool first = true;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        if (!first) out << " + ";
        first = false;
        if (e == 0) {
            out << coeff_to_text(F, c);
            continue;
        }
        if (c != F->one()) out << coeff_to_text(F, c) << "*";
        out << "T";
        if (e != 1) out << "^" << e;
    }
    return out.str();
}

std::string ratfunc_to_text(const RatFunc& x) {
    if (x.is_poly()) return poly_to_text(x.num());
    auto wrap = [](const PolyT& f) {
        std::string s = poly_to_text(f);
        return f.term_count() > 1 ? "(" + s + ")" : s;
    };
    return wrap(x.num()) + " / " + wrap(x.den());
}

PolyT poly_parse(const FqPtr& F, const std::string& text) {
    Cursor c{text};
    if (c.done()) throw usage_error("empty polynomial text");
    std::vector<PolyT::Term> terms;
    bool negate = c.eat('-');
    if (!negate) c.eat('+');
    for (;;) {
        FqElem coeff = F->one();
        std::int64_t exp = 0;
        bool any = false;
        for (;;) {
            char ch = c.peek();
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                coeff = F->mul(coeff, F->from_int(c.integer("a coefficient", false)));
            } else if (ch == 'g') {
                coeff = F->mul(coeff, generator_power(F, c));
            } else if (ch == 'T') {
                ++c.i;
                std::int64_t e = 1;
                if (c.eat('^')) e = c.integer("a T exponent", true);
                if (e < 0) throw usage_error("negative T exponent in a polynomial: " + text);
                exp = checked_add_exp(exp, e);
            } else {
                throw usage_error("unexpected character in polynomial text: " + text);
            }
            any = true;
            if (!c.eat('*')) break;
        }
        if (!any) throw usage_error("empty term in polynomial text: " + text);
        terms.emplace_back(exp, negate ? F->neg(coeff) : coeff);
        if (c.done()) break;
        if (c.eat('+'))
            negate = false;
        else if (c.eat('-'))
            negate = true;
        else
            throw usage_error("expected '+' between polynomial terms: " + text);
    }
    return PolyT::from_terms(F, std::move(terms));
}

LocalElem localelem_parse(const LFPtr& lf, const std::string& text) {
    const FqPtr& R = lf->residue();
    Cursor c{text};
    if (c.done()) throw usage_error("empty series text");
    std::map<std::int64_t, FqElem> supp;
    std::int64_t prec = LocalElem::EXACT;
    bool bounded = false;
    bool negate = c.eat('-');
    if (!negate) c.eat('+');
    for (;;) {
        if (c.peek() == '(') {
            c.expect('(', "the precision marker");
            if (!c.eat('O')) throw usage_error("expected O in the precision marker: " + text);
            c.expect('(', "the precision marker");
            if (!c.eat('u')) throw usage_error("expected u in the precision marker: " + text);
            c.expect('^', "the precision marker");
            prec = c.integer("the precision bound", true);
            c.expect(')', "the precision marker");
            c.expect(')', "the precision marker");
            bounded = true;
            if (!c.done()) throw usage_error("text continues after the precision marker: " + text);
            break;
        }
        FqElem coeff = R->one();
        std::int64_t exp = 0;
        bool any = false;
        for (;;) {
            char ch = c.peek();
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                coeff = R->mul(coeff, R->from_int(c.integer("a coefficient", false)));
            } else if (ch == 'g') {
                coeff = R->mul(coeff, generator_power(R, c));
            } else if (ch == 'u') {
                ++c.i;
                std::int64_t e = 1;
                if (c.eat('^')) e = c.integer("a u exponent", true);
                exp = checked_add_exp(exp, e);
            } else {
                throw usage_error("unexpected character in series text: " + text);
            }
            any = true;
            if (!c.eat('*')) break;
        }
        if (!any) throw usage_error("empty term in series text: " + text);
        if (negate) coeff = R->neg(coeff);
        auto [it, fresh] = supp.emplace(exp, coeff);
        if (!fresh) it->second = R->add(it->second, coeff);
        if (c.done()) break;
        if (c.eat('+'))
            negate = false;
        else if (c.eat('-'))
            negate = true;
        else
            throw usage_error("expected '+' between series terms: " + text);
    }
    for (auto it = supp.begin(); it != supp.end();)
        it = it->second == 0 ? supp.erase(it) : std::next(it);
    if (bounded && !supp.empty() && supp.rbegin()->first >= prec)
        throw usage_error("series term at or past its precision bound: " + text);
    return LocalElem{lf, std::move(supp), prec};
}

}  // namespace drinfeld
