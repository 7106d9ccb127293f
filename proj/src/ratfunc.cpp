#include "drinfeld/ratfunc.hpp"

namespace drinfeld {

RatFunc::RatFunc(PolyT num, PolyT den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw domain_error("rational function with zero denominator");
    reduce();
}

void RatFunc::reduce() {
    if (num_.is_zero()) {
        den_ = PolyT::constant(num_.field(), 1);
        return;
    }
    PolyT g = gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = PolyT::exact_div(num_, g);
        den_ = PolyT::exact_div(den_, g);
    }
    FqElem lc = den_.lead_coeff();
    if (lc != 1) {
        FqElem inv = num_.field()->inv(lc);
        num_ = num_.scale(inv);
        den_ = den_.scale(inv);
    }
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inv(); }

RatFunc RatFunc::inv() const {
    if (num_.is_zero()) throw domain_error("inverse of the zero rational function");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow_nat(const mpz_class& e) const {
    RatFunc r;
    r.num_ = num_.pow_nat(e);
    r.den_ = den_.pow_nat(e);
    return r;  // powers of a reduced fraction stay reduced
}

RatFunc RatFunc::frob_q(std::int64_t j) const {
    RatFunc r;
    r.num_ = num_.frob_q(j);
    r.den_ = den_.frob_q(j);
    return r;
}

Frac RatFunc::valuation() const {
    if (num_.is_zero()) throw domain_error("valuation of zero");
    return Frac(den_.degree() - num_.degree());
}

}  // namespace drinfeld
