#include "drinfeld/factored.hpp"

namespace drinfeld {

FactoredFrac::FactoredFrac(PolyT num, const FactorList& den) : num_(std::move(num)) {
    for (auto& [f, e] : den) push_factor(f, e);
}

void FactoredFrac::push_factor(PolyT f, std::int64_t e) {
    if (e < 0) throw domain_error("negative denominator exponent");
    if (e == 0) return;
    if (f.is_zero()) throw domain_error("zero denominator factor");
    if (f.is_constant()) {
        // absorb the constant into the numerator
        num_ = num_.scale(field()->inv(field()->pow_i64(f.lead_coeff(), e)));
        return;
    }
    FqElem lc = f.lead_coeff();
    if (lc != 1) {
        f = f.monic();
        num_ = num_.scale(field()->inv(field()->pow_i64(lc, e)));
    }
    auto [it, fresh] = den_.emplace(std::move(f), e);
    if (!fresh) it->second = checked_add_exp(it->second, e);
}

FactoredFrac FactoredFrac::from_rat(const RatFunc& r) {
    FactoredFrac x(r.num());
    if (!r.den().is_one()) x.push_factor(r.den(), 1);
    return x;
}

FactoredFrac operator+(const FactoredFrac& a, const FactoredFrac& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    // Common denominator by factor-wise max exponents.
    PolyT na = a.num_, nb = b.num_;
    FactoredFrac r(PolyT::zero(a.field()));
    auto ia = a.den_.begin();
    auto ib = b.den_.begin();
    auto scale_up = [](PolyT& n, const PolyT& f, std::int64_t by) {
        if (by > 0) n = n * f.pow_nat(by);
    };
    while (ia != a.den_.end() || ib != b.den_.end()) {
        if (ib == b.den_.end() || (ia != a.den_.end() && PolyCmp()(ia->first, ib->first))) {
            scale_up(nb, ia->first, ia->second);
            r.den_.emplace(ia->first, ia->second);
            ++ia;
        } else if (ia == a.den_.end() || PolyCmp()(ib->first, ia->first)) {
            scale_up(na, ib->first, ib->second);
            r.den_.emplace(ib->first, ib->second);
            ++ib;
        } else {
            std::int64_t e = std::max(ia->second, ib->second);
            scale_up(na, ia->first, e - ia->second);
            scale_up(nb, ib->first, e - ib->second);
            r.den_.emplace(ia->first, e);
            ++ia;
            ++ib;
        }
    }
    r.num_ = na + nb;
    if (r.num_.is_zero()) r.den_.clear();
    return r;
}

FactoredFrac operator-(const FactoredFrac& a, const FactoredFrac& b) { return a + (-b); }

FactoredFrac FactoredFrac::operator-() const {
    FactoredFrac r = *this;
    r.num_ = -r.num_;
    return r;
}

FactoredFrac operator*(const FactoredFrac& a, const FactoredFrac& b) {
    FactoredFrac r(a.num_ * b.num_);
    if (r.num_.is_zero()) return r;
    r.den_ = a.den_;
    for (auto& [f, e] : b.den_) {
        auto [it, fresh] = r.den_.emplace(f, e);
        if (!fresh) it->second = checked_add_exp(it->second, e);
    }
    return r;
}

FactoredFrac FactoredFrac::mul_poly(const PolyT& f) const {
    FactoredFrac r = *this;
    r.num_ = r.num_ * f;
    if (r.num_.is_zero()) r.den_.clear();
    return r;
}

FactoredFrac FactoredFrac::div_factored(const FactorList& factors) const {
    FactoredFrac r = *this;
    if (r.is_zero()) return r;
    for (auto& [f, e] : factors) r.push_factor(f, e);
    return r;
}

FactoredFrac FactoredFrac::inv() const {
    if (is_zero()) throw domain_error("inverse of zero");
    FactoredFrac r(den_expanded());
    FqElem lc = num_.lead_coeff();
    PolyT n = num_;
    if (lc != 1) {
        n = n.monic();
        r.num_ = r.num_.scale(field()->inv(lc));
    }
    if (!n.is_constant()) r.den_.emplace(std::move(n), 1);
    return r;
}

FactoredFrac FactoredFrac::frob_q(std::int64_t j) const {
    FactoredFrac r(num_.frob_q(j));
    for (auto& [f, e] : den_) r.den_.emplace(f.frob_q(j), e);
    return r;
}

FactoredFrac FactoredFrac::pow_nat(const mpz_class& e) const {
    if (e == 0) return one(field());
    if (is_zero()) return *this;
    FactoredFrac r(num_.pow_nat(e));
    if (!den_.empty()) {
        if (e > ResourceLimits::current().max_exponent())
            throw resource_error("denominator exponent exceeds cap");
        std::int64_t ei = std::int64_t(e.get_si());
        for (auto& [f, d] : den_) r.den_.emplace(f, checked_mul_exp(d, ei));
    }
    return r;
}

std::int64_t FactoredFrac::den_degree() const {
    std::int64_t d = 0;
    for (auto& [f, e] : den_) d = checked_add_exp(d, checked_mul_exp(f.degree(), e));
    return d;
}

Frac FactoredFrac::valuation() const {
    if (is_zero()) throw domain_error("valuation of zero");
    return Frac(den_degree() - num_.degree());
}

PolyT FactoredFrac::den_expanded() const {
    PolyT d = PolyT::constant(field(), 1);
    for (auto& [f, e] : den_) d = d * f.pow_nat(e);
    return d;
}

bool FactoredFrac::eq(const FactoredFrac& a, const FactoredFrac& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
    // Cancel shared factors, then cross-multiply the leftovers.
    PolyT left = a.num_, right = b.num_;
    auto ia = a.den_.begin();
    auto ib = b.den_.begin();
    auto scale = [](PolyT& n, const PolyT& f, std::int64_t by) {
        if (by > 0) n = n * f.pow_nat(by);
    };
    while (ia != a.den_.end() || ib != b.den_.end()) {
        if (ib == b.den_.end() || (ia != a.den_.end() && PolyCmp()(ia->first, ib->first))) {
            scale(right, ia->first, ia->second);
            ++ia;
        } else if (ia == a.den_.end() || PolyCmp()(ib->first, ia->first)) {
            scale(left, ib->first, ib->second);
            ++ib;
        } else {
            if (ia->second > ib->second) scale(right, ia->first, ia->second - ib->second);
            if (ib->second > ia->second) scale(left, ib->first, ib->second - ia->second);
            ++ia;
            ++ib;
        }
    }
    return left == right;
}

RatFunc FactoredFrac::to_ratfunc() const {
    if (is_zero()) return RatFunc::zero(field());
    // Peel factors that divide the numerator exactly before expanding.
    PolyT n = num_;
    PolyT d = PolyT::constant(field(), 1);
    for (auto& [f, e] : den_) {
        std::int64_t left = e;
        while (left > 0) {
            auto [q, rem] = PolyT::divmod(n, f);
            if (!rem.is_zero()) break;
            n = q;
            --left;
        }
        if (left > 0) d = d * f.pow_nat(left);
    }
    return RatFunc(n, d);
}

}  // namespace drinfeld
