#pragma once

#include "drinfeld/poly.hpp"

namespace drinfeld {

// Rational function in T, always reduced with monic denominator, so
// structural equality is semantic equality.  Zero is 0/1.
class RatFunc {
public:
    RatFunc() = default;
    explicit RatFunc(PolyT num) : num_(std::move(num)) {
        den_ = PolyT::constant(num_.field(), 1);
    }
    RatFunc(PolyT num, PolyT den);

    static RatFunc zero(const FqPtr& F) { return RatFunc(PolyT::zero(F)); }
    static RatFunc one(const FqPtr& F) { return RatFunc(PolyT::constant(F, 1)); }
    static RatFunc var(const FqPtr& F) { return RatFunc(PolyT::var(F)); }

    const PolyT& num() const { return num_; }
    const PolyT& den() const { return den_; }
    const FqPtr& field() const { return num_.field(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_poly() const { return den_.is_one(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc operator-() const;
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc inv() const;
    RatFunc pow_nat(const mpz_class& e) const;
    RatFunc frob_q(std::int64_t j) const;  // f^{q^j}; reducedness is preserved

    // v(f) = deg den - deg num, so v(T) = -1; zero has no valuation.
    Frac valuation() const;

private:
    void reduce();

    PolyT num_;
    PolyT den_;
};

}  // namespace drinfeld
