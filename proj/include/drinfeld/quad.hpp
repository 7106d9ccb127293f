#pragma once

#include "drinfeld/domain.hpp"
#include "drinfeld/localfield.hpp"

namespace drinfeld {

// a + b y with a, b in F_q(T) and y^2 = s for a fixed nonsquare polynomial s.
struct QuadElem {
    FactoredFrac a, b;
};

// The quadratic extension K(y), y^2 = s, as a coefficient domain.  Frobenius
// uses y^{q^j} = y s^{(q^j-1)/2}, so odd characteristic is required (in
// characteristic 2 the extension is inseparable and rejected).  Division is
// only by factored polynomial lists, which act on each component; no general
// norm inversion is needed by the series machinery.
class QuadDomain {
public:
    using Elem = QuadElem;

    QuadDomain(FqPtr F, PolyT s) : k(std::move(F)), s_(std::move(s)) {
        if (k.F->p() == 2)
            throw domain_error("quadratic surd in characteristic 2: inseparable extension");
        if (s_.is_zero()) throw domain_error("surd polynomial must be nonzero");
    }

    KDomain k;
    const PolyT& surd() const { return s_; }

    Elem zero() const { return {k.zero(), k.zero()}; }
    Elem one() const { return {k.one(), k.zero()}; }
    Elem from_poly(const PolyT& f) const { return {k.from_poly(f), k.zero()}; }
    Elem from_k(const FactoredFrac& a) const { return {a, k.zero()}; }
    Elem y_elem() const { return {k.zero(), k.one()}; }

    Elem add(const Elem& x, const Elem& z) const { return {x.a + z.a, x.b + z.b}; }
    Elem sub(const Elem& x, const Elem& z) const { return {x.a - z.a, x.b - z.b}; }
    Elem neg(const Elem& x) const { return {-x.a, -x.b}; }
    Elem mul(const Elem& x, const Elem& z) const {
        return {x.a * z.a + (x.b * z.b).mul_poly(s_), x.a * z.b + x.b * z.a};
    }
    Elem div_factored(const Elem& x, const FactorList& fl) const {
        return {x.a.div_factored(fl), x.b.div_factored(fl)};
    }
    Elem frob(const Elem& x, std::int64_t j) const {
        if (j < 0) throw domain_error("negative Frobenius power");
        if (j == 0) return x;
        mpz_class qj;
        mpz_ui_pow_ui(qj.get_mpz_t(), static_cast<unsigned long>(k.q()),
                      static_cast<unsigned long>(j));
        FactoredFrac ys = FactoredFrac(s_).pow_nat((qj - 1) / 2);
        return {x.a.frob_q(j), x.b.frob_q(j) * ys};
    }
    Elem pow_nat(const Elem& x, const mpz_class& n) const {
        if (n < 0) throw domain_error("negative exponent");
        Elem acc = one();
        for (std::size_t bit = mpz_sizeinbase(n.get_mpz_t(), 2); bit-- > 0;) {
            acc = mul(acc, acc);
            if (mpz_tstbit(n.get_mpz_t(), bit)) acc = mul(acc, x);
        }
        if (n == 0) return one();
        return acc;
    }
    bool is_zero(const Elem& x) const { return x.a.is_zero() && x.b.is_zero(); }
    bool eq(const Elem& x, const Elem& z) const {
        return FactoredFrac::eq(x.a, z.a) && FactoredFrac::eq(x.b, z.b);
    }
    std::int64_t q() const { return k.q(); }

    // Exact valuation at the infinite place: min of the component valuations,
    // where v(y) = v(s)/2.  When v(s) is odd the two candidates live in
    // disjoint parity classes and the minimum is provably exact; a collision
    // (possible only for even v(s)) is ambiguous and refused.
    Frac valuation(const Elem& x) const {
        bool ha = !x.a.is_zero(), hb = !x.b.is_zero();
        if (!ha && !hb) throw domain_error("valuation of zero");
        Frac vs = Frac(-s_.degree());
        if (!hb) return x.a.valuation();
        Frac vb = x.b.valuation() + vs / Frac(2);
        if (!ha) return vb;
        Frac va = x.a.valuation();
        if (va == vb)
            throw domain_error("ambiguous valuation: components of the surd element tie");
        return va < vb ? va : vb;
    }

private:
    PolyT s_;
};

static_assert(CoefficientDomain<QuadDomain>);

// Image in a ramified series field, with y sent to the canonical square root
// of the embedded surd.  The target must split v(s) (e.g. e = 2 for odd-degree
// surds), otherwise the root extraction reports which extension is missing.
inline LocalElem embed_quad(const LFPtr& lf, const QuadDomain& dom, const QuadElem& x) {
    LocalElem r = embed_factored(lf, x.a);
    if (x.b.is_zero()) return r;
    LocalElem y = sqrt_local(lf->embed_poly(dom.surd()));
    return lf->add(r, lf->mul(embed_factored(lf, x.b), y));
}

}  // namespace drinfeld
