#pragma once

#include <map>

#include "drinfeld/ratfunc.hpp"

namespace drinfeld {

using FactorList = std::vector<std::pair<PolyT, std::int64_t>>;

// Fraction num / prod f_i^{e_i} over F_q(T) with the denominator kept in
// factored form.  Not necessarily reduced; equality cross-multiplies and
// valuations read off degrees, so no big gcds are ever required.  Factors
// are monic and nonconstant with positive exponents.
class FactoredFrac {
public:
    FactoredFrac() = default;
    explicit FactoredFrac(PolyT num) : num_(std::move(num)) {}
    FactoredFrac(PolyT num, const FactorList& den);

    static FactoredFrac zero(const FqPtr& F) { return FactoredFrac(PolyT::zero(F)); }
    static FactoredFrac one(const FqPtr& F) { return FactoredFrac(PolyT::constant(F, 1)); }
    static FactoredFrac from_rat(const RatFunc& r);

    const PolyT& num() const { return num_; }
    const std::map<PolyT, std::int64_t, PolyCmp>& den() const { return den_; }
    const FqPtr& field() const { return num_.field(); }
    bool is_zero() const { return num_.is_zero(); }

    friend FactoredFrac operator+(const FactoredFrac& a, const FactoredFrac& b);
    friend FactoredFrac operator-(const FactoredFrac& a, const FactoredFrac& b);
    friend FactoredFrac operator*(const FactoredFrac& a, const FactoredFrac& b);
    FactoredFrac operator-() const;

    FactoredFrac mul_poly(const PolyT& f) const;
    FactoredFrac div_factored(const FactorList& factors) const;
    FactoredFrac inv() const;   // expands the denominator into the numerator
    FactoredFrac frob_q(std::int64_t j) const;
    FactoredFrac pow_nat(const mpz_class& e) const;

    Frac valuation() const;     // deg(den) - deg(num)
    std::int64_t den_degree() const;

    // Semantic equality by cross-multiplication against the common factors.
    static bool eq(const FactoredFrac& a, const FactoredFrac& b);

    PolyT den_expanded() const;
    RatFunc to_ratfunc() const;  // reduced form; intended for small operands

private:
    void push_factor(PolyT f, std::int64_t e);

    PolyT num_;
    std::map<PolyT, std::int64_t, PolyCmp> den_;
};

}  // namespace drinfeld
