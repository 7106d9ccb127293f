#pragma once

#include <memory>

#include "drinfeld/poly.hpp"

namespace drinfeld {

// Residue field A/p for a monic prime p of F_q[T], with elements represented
// as polynomials of degree < deg(p).  The image of T generates the field, and
// its Frobenius orbit T^{q^i} mod p is precomputed once.
class ResidueField : public std::enable_shared_from_this<ResidueField> {
public:
    static std::shared_ptr<const ResidueField> make(PolyT prime);

    const PolyT& prime() const { return prime_; }
    std::int64_t degree() const { return d_; }
    const FqPtr& base() const { return prime_.field(); }
    std::int64_t size_log_q() const { return d_; }  // |A/p| = q^d

    // mu_i in p = sum mu_i T^i (mu_d = 1).
    FqElem mu(std::int64_t i) const { return prime_.coeff(i); }

    PolyT reduce(const PolyT& a) const { return PolyT::divmod(a, prime_).second; }
    PolyT zero() const { return PolyT::zero(base()); }
    PolyT one() const { return PolyT::constant(base(), 1); }
    PolyT t_class() const { return reduce(PolyT::var(base())); }

    PolyT add(const PolyT& a, const PolyT& b) const { return a + b; }
    PolyT sub(const PolyT& a, const PolyT& b) const { return a - b; }
    PolyT neg(const PolyT& a) const { return -a; }
    PolyT mul(const PolyT& a, const PolyT& b) const { return reduce(a * b); }
    PolyT inv(const PolyT& a) const;
    PolyT div(const PolyT& a, const PolyT& b) const { return mul(a, inv(b)); }

    // x^{q^j} via substitution of the precomputed orbit of T.
    PolyT frob(const PolyT& a, std::int64_t j) const;
    const PolyT& frob_t(std::int64_t i) const;  // T^{q^i} mod p, 0 <= i < d

    PolyT pow_nat(const PolyT& a, const mpz_class& e) const;

    // Elements indexed 0..q^d-1 by base-q digit vectors of coefficients.
    std::int64_t element_count() const;
    PolyT element(std::int64_t index) const;

private:
    explicit ResidueField(PolyT prime) : prime_(std::move(prime)) {}

    PolyT prime_;
    std::int64_t d_ = 0;
    std::vector<PolyT> frob_t_;
};

using ResiduePtr = std::shared_ptr<const ResidueField>;

}  // namespace drinfeld
