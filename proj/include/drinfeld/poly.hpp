#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "drinfeld/fq.hpp"
#include "drinfeld/rational.hpp"

namespace drinfeld {

// Univariate polynomial in T over a finite field, stored as sorted
// (exponent, coefficient) terms with nonzero coefficients.  Exponents are
// 64-bit and capped; term counts are capped.  Heavy operations switch to a
// dense coefficient vector when the degree span makes that cheaper.
class PolyT {
public:
    using Term = std::pair<std::int64_t, FqElem>;

    PolyT() = default;
    explicit PolyT(FqPtr F) : F_(std::move(F)) {}

    static PolyT zero(FqPtr F) { return PolyT(std::move(F)); }
    static PolyT constant(FqPtr F, FqElem c);
    static PolyT monomial(FqPtr F, std::int64_t exp, FqElem c);
    static PolyT var(FqPtr F) { return monomial(std::move(F), 1, 1); }
    // Terms need not be sorted or combined; zero coefficients are dropped.
    static PolyT from_terms(FqPtr F, std::vector<Term> terms);

    const FqPtr& field() const { return F_; }
    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_one() const { return t_.size() == 1 && t_[0].first == 0 && t_[0].second == 1; }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first == 0); }

    std::int64_t degree() const { return t_.empty() ? -1 : t_.back().first; }
    std::int64_t order() const;  // multiplicity of T; zero polynomial rejected
    FqElem lead_coeff() const { return t_.empty() ? 0 : t_.back().second; }
    FqElem coeff(std::int64_t exp) const;
    std::size_t term_count() const { return t_.size(); }

    PolyT operator-() const;
    friend PolyT operator+(const PolyT& a, const PolyT& b);
    friend PolyT operator-(const PolyT& a, const PolyT& b);
    friend PolyT operator*(const PolyT& a, const PolyT& b);
    friend bool operator==(const PolyT& a, const PolyT& b) { return a.t_ == b.t_; }
    friend bool operator!=(const PolyT& a, const PolyT& b) { return !(a == b); }

    PolyT mul_term(std::int64_t exp, FqElem c) const;
    PolyT scale(FqElem c) const { return mul_term(0, c); }

    // Quotient and remainder; divisor must be nonzero.
    static std::pair<PolyT, PolyT> divmod(const PolyT& a, const PolyT& b);
    // Division that must leave no remainder.
    static PolyT exact_div(const PolyT& a, const PolyT& b);

    // a^e in characteristic p via the base-p expansion of e, which keeps
    // sparse inputs sparse: a^{p^j} only rescales exponents.
    PolyT pow_nat(const mpz_class& e) const;
    // a^{p^j}: coefficients to the p^j, exponents times p^j.
    PolyT frob_p(std::int64_t j) const;
    // a^{q^j} where q = |coefficient field|; coefficients are fixed by q.
    PolyT frob_q(std::int64_t j) const { return frob_p(checked_mul_exp(j, F_->k())); }

    PolyT monic() const;
    FqElem eval(FqElem x) const;

    // Strict total order (by term list) for use as a map key.
    static int cmp(const PolyT& a, const PolyT& b);

    bool divides(const PolyT& a) const;  // this | a

private:
    void normalize_sorted();

    FqPtr F_;
    std::vector<Term> t_;  // ascending exponents, nonzero coefficients
};

struct PolyCmp {
    bool operator()(const PolyT& a, const PolyT& b) const { return PolyT::cmp(a, b) < 0; }
};

PolyT gcd(PolyT a, PolyT b);  // monic gcd; gcd(0,0) = 0

// base^e modulo m.
PolyT powmod(const PolyT& base, const mpz_class& e, const PolyT& m);

// Irreducibility over the coefficient field F_q.
bool is_irreducible(const PolyT& f);

// [n] = T^{q^n} - T for n >= 1.
PolyT bracket(const FqPtr& F, int n);
// D_n: D_0 = 1, D_n = [n] * D_{n-1}^q.
PolyT carlitz_d(const FqPtr& F, int n);
// L_n: L_0 = 1, L_n = -[n] * L_{n-1}.
PolyT carlitz_l(const FqPtr& F, int n);

// All monic irreducibles of the given degree, in index order of their
// coefficient tuples.
std::vector<PolyT> monic_irreducibles(const FqPtr& F, int degree);

}  // namespace drinfeld
