#include "drinfeld/residue.hpp"

#include <cmath>

namespace drinfeld {

std::shared_ptr<const ResidueField> ResidueField::make(PolyT prime) {
    if (prime.degree() < 1) throw domain_error("prime must be nonconstant");
    if (prime.lead_coeff() != 1) throw domain_error("prime must be monic");
    if (!is_irreducible(prime)) throw domain_error("modulus is not irreducible");
    auto R = std::shared_ptr<ResidueField>(new ResidueField(std::move(prime)));
    R->d_ = R->prime_.degree();
    R->frob_t_.reserve(std::size_t(R->d_));
    PolyT t = R->t_class();
    mpz_class q(R->base()->size());
    for (std::int64_t i = 0; i < R->d_; ++i) {
        R->frob_t_.push_back(t);
        t = powmod(t, q, R->prime_);
    }
    return R;
}

PolyT ResidueField::inv(const PolyT& a) const {
    PolyT r = reduce(a);
    if (r.is_zero()) throw domain_error("inverse of zero in residue field");
    // extended Euclid: s*r + t*prime = gcd
    PolyT old_r = r, cur_r = prime_;
    PolyT old_s = one(), cur_s = zero();
    while (!cur_r.is_zero()) {
        auto [q, rem] = PolyT::divmod(old_r, cur_r);
        PolyT next_s = old_s - q * cur_s;
        old_r = std::move(cur_r);
        cur_r = std::move(rem);
        old_s = std::move(cur_s);
        cur_s = std::move(next_s);
    }
    // old_r is a nonzero constant gcd
    if (old_r.degree() != 0) throw domain_error("inverse does not exist");
    return reduce(old_s.scale(base()->inv(old_r.lead_coeff())));
}

const PolyT& ResidueField::frob_t(std::int64_t i) const {
    if (i < 0 || i >= d_) throw domain_error("Frobenius orbit index out of range");
    return frob_t_[std::size_t(i)];
}

PolyT ResidueField::frob(const PolyT& a, std::int64_t j) const {
    std::int64_t jj = d_ == 0 ? 0 : j % d_;
    if (jj == 0) return reduce(a);
    // (sum c_i T^i)^{q^j} = sum c_i (T^{q^j})^i since coefficients lie in F_q.
    const PolyT& tq = frob_t_[std::size_t(jj)];
    PolyT acc = zero();
    PolyT r = reduce(a);
    std::int64_t prev = -1;
    const auto& terms = r.terms();
    for (std::size_t idx = terms.size(); idx-- > 0;) {
        auto& [e, c] = terms[idx];
        if (prev >= 0) acc = mul(acc, pow_nat(tq, prev - e));
        acc = add(acc, PolyT::constant(base(), c));
        prev = e;
    }
    if (prev > 0) acc = mul(acc, pow_nat(tq, prev));
    return acc;
}

PolyT ResidueField::pow_nat(const PolyT& a, const mpz_class& e) const {
    if (e < 0) throw domain_error("negative exponent");
    PolyT r = reduce(a);
    if (r.is_zero()) return e == 0 ? one() : zero();
    mpz_class order;
    mpz_pow_ui(order.get_mpz_t(), mpz_class(base()->size()).get_mpz_t(),
               static_cast<unsigned long>(d_));
    order -= 1;
    return powmod(r, e % order, prime_);
}

std::int64_t ResidueField::element_count() const {
    double total = std::pow(double(base()->size()), double(d_));
    if (total > double(ResourceLimits::current().max_enumeration))
        throw resource_error("residue field too large to enumerate");
    std::int64_t n = 1;
    for (std::int64_t i = 0; i < d_; ++i) n *= base()->size();
    return n;
}

PolyT ResidueField::element(std::int64_t index) const {
    std::vector<PolyT::Term> terms;
    std::int64_t q = base()->size();
    for (std::int64_t i = 0; i < d_ && index > 0; ++i) {
        FqElem c = FqElem(index % q);
        index /= q;
        if (c != 0) terms.push_back({i, c});
    }
    return PolyT::from_terms(base(), std::move(terms));
}

}  // namespace drinfeld
