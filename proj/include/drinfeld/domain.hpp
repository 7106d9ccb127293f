#pragma once

#include <concepts>

#include "drinfeld/factored.hpp"
#include "drinfeld/residue.hpp"

namespace drinfeld {

// A coefficient domain is an F_q[T]-algebra the series machinery can run in.
// It supplies ring operations, the structure map from_poly : F_q[T] -> L,
// Frobenius powers x -> x^{q^j}, powers by arbitrary naturals, and division
// by a factored product of polynomials (the only division the formulas need,
// which lets fraction-like domains keep denominators factored).
template <class D>
concept CoefficientDomain = requires(const D& d, const typename D::Elem& x,
                                     const PolyT& f, const FactorList& fl,
                                     std::int64_t j, const mpz_class& e) {
    { d.zero() } -> std::same_as<typename D::Elem>;
    { d.one() } -> std::same_as<typename D::Elem>;
    { d.from_poly(f) } -> std::same_as<typename D::Elem>;
    { d.add(x, x) } -> std::same_as<typename D::Elem>;
    { d.sub(x, x) } -> std::same_as<typename D::Elem>;
    { d.neg(x) } -> std::same_as<typename D::Elem>;
    { d.mul(x, x) } -> std::same_as<typename D::Elem>;
    { d.div_factored(x, fl) } -> std::same_as<typename D::Elem>;
    { d.frob(x, j) } -> std::same_as<typename D::Elem>;
    { d.pow_nat(x, e) } -> std::same_as<typename D::Elem>;
    { d.is_zero(x) } -> std::same_as<bool>;
    { d.eq(x, x) } -> std::same_as<bool>;
    { d.q() } -> std::same_as<std::int64_t>;
};

// The fraction field F_q(T) itself, with factored denominators.
struct KDomain {
    using Elem = FactoredFrac;
    FqPtr F;

    explicit KDomain(FqPtr f) : F(std::move(f)) {}

    Elem zero() const { return FactoredFrac::zero(F); }
    Elem one() const { return FactoredFrac::one(F); }
    Elem from_poly(const PolyT& f) const { return FactoredFrac(f); }
    Elem from_rat(const RatFunc& r) const { return FactoredFrac::from_rat(r); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem div(const Elem& a, const Elem& b) const { return a * b.inv(); }
    Elem div_factored(const Elem& a, const FactorList& fl) const { return a.div_factored(fl); }
    Elem frob(const Elem& a, std::int64_t j) const { return a.frob_q(j); }
    Elem pow_nat(const Elem& a, const mpz_class& e) const { return a.pow_nat(e); }
    bool is_zero(const Elem& a) const { return a.is_zero(); }
    bool eq(const Elem& a, const Elem& b) const { return FactoredFrac::eq(a, b); }
    std::int64_t q() const { return F->size(); }
};

// A/p (and by extension any Drinfeld coefficient computation mod p).
// Division by a factor whose image vanishes is reported as such.
struct ResidueDomain {
    using Elem = PolyT;
    ResiduePtr R;

    explicit ResidueDomain(ResiduePtr r) : R(std::move(r)) {}

    Elem zero() const { return R->zero(); }
    Elem one() const { return R->one(); }
    Elem from_poly(const PolyT& f) const { return R->reduce(f); }
    Elem add(const Elem& a, const Elem& b) const { return R->add(a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return R->sub(a, b); }
    Elem neg(const Elem& a) const { return R->neg(a); }
    Elem mul(const Elem& a, const Elem& b) const { return R->mul(a, b); }
    Elem div(const Elem& a, const Elem& b) const { return R->div(a, b); }
    Elem div_factored(const Elem& a, const FactorList& fl) const {
        Elem acc = a;
        for (auto& [f, e] : fl) {
            Elem fe = R->pow_nat(R->reduce(f), mpz_class(static_cast<long>(e)));
            if (fe.is_zero())
                throw domain_error(
                    "division impossible in residue domain: a factor vanishes mod the prime");
            acc = R->div(acc, fe);
        }
        return acc;
    }
    Elem frob(const Elem& a, std::int64_t j) const { return R->frob(a, j); }
    Elem pow_nat(const Elem& a, const mpz_class& e) const { return R->pow_nat(a, e); }
    bool is_zero(const Elem& a) const { return a.is_zero(); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    std::int64_t q() const { return R->base()->size(); }
};

static_assert(CoefficientDomain<KDomain>);
static_assert(CoefficientDomain<ResidueDomain>);

}  // namespace drinfeld
