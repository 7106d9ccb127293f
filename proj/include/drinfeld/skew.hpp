#pragma once

#include "drinfeld/domain.hpp"

namespace drinfeld {

// Twisted polynomials sum c_i tau^i over a coefficient domain, with the
// commutation rule tau * c = c^q * tau.  Zero is the empty vector; the top
// coefficient of a nonzero element is nonzero.
template <class D>
struct SkewPoly {
    std::vector<typename D::Elem> c;  // c[i] multiplies tau^i

    std::int64_t tau_degree() const { return std::int64_t(c.size()) - 1; }
};

template <class D>
SkewPoly<D> skew_normalize(const D& dom, SkewPoly<D> a) {
    while (!a.c.empty() && dom.is_zero(a.c.back())) a.c.pop_back();
    return a;
}

template <class D>
SkewPoly<D> skew_zero(const D&) {
    return {};
}

template <class D>
SkewPoly<D> skew_constant(const D& dom, typename D::Elem x) {
    SkewPoly<D> r;
    r.c.push_back(std::move(x));
    return skew_normalize(dom, std::move(r));
}

template <class D>
SkewPoly<D> skew_add(const D& dom, const SkewPoly<D>& a, const SkewPoly<D>& b) {
    SkewPoly<D> r;
    std::size_t n = std::max(a.c.size(), b.c.size());
    r.c.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= a.c.size())
            r.c.push_back(b.c[i]);
        else if (i >= b.c.size())
            r.c.push_back(a.c[i]);
        else
            r.c.push_back(dom.add(a.c[i], b.c[i]));
    }
    return skew_normalize(dom, std::move(r));
}

// (a tau^i)(b tau^j) = a b^{q^i} tau^{i+j}.
template <class D>
SkewPoly<D> skew_mul(const D& dom, const SkewPoly<D>& a, const SkewPoly<D>& b) {
    SkewPoly<D> r;
    if (a.c.empty() || b.c.empty()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, dom.zero());
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (dom.is_zero(a.c[i])) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            auto prod = dom.mul(a.c[i], dom.frob(b.c[j], std::int64_t(i)));
            r.c[i + j] = dom.add(r.c[i + j], prod);
        }
    }
    return skew_normalize(dom, std::move(r));
}

// Value of the associated additive polynomial: sum c_i x^{q^i}.
template <class D>
typename D::Elem skew_apply(const D& dom, const SkewPoly<D>& f, const typename D::Elem& x) {
    auto acc = dom.zero();
    for (std::size_t i = 0; i < f.c.size(); ++i)
        acc = dom.add(acc, dom.mul(f.c[i], dom.frob(x, std::int64_t(i))));
    return acc;
}

// Drinfeld module of rank r: phi_T = T + A_1 tau + ... + A_r tau^r.
template <class D>
struct DrinfeldModule {
    D dom;
    FqPtr base;  // constant field of A = F_q[T]
    std::vector<typename D::Elem> a;  // a[i] = A_{i+1}; a.back() nonzero

    int rank() const { return int(a.size()); }

    SkewPoly<D> phi_t() const {
        SkewPoly<D> r;
        r.c.push_back(dom.from_poly(PolyT::var(base)));
        for (auto& x : a) r.c.push_back(x);
        return r;
    }

    static DrinfeldModule make(D dom, FqPtr field, std::vector<typename D::Elem> coeff) {
        if (coeff.empty()) throw domain_error("rank must be positive");
        if (dom.is_zero(coeff.back())) throw domain_error("top coefficient A_r must be nonzero");
        return DrinfeldModule{std::move(dom), std::move(field), std::move(coeff)};
    }
};

// phi_a for a in F_q[T] by Horner: phi is F_q-linear and multiplicative in T.
template <class D>
SkewPoly<D> drinfeld_action(const DrinfeldModule<D>& m, const PolyT& a) {
    const D& dom = m.dom;
    SkewPoly<D> phi_t = m.phi_t();
    SkewPoly<D> acc = skew_zero(dom);
    std::int64_t prev = -1;
    const auto& terms = a.terms();
    auto scalar = [&](FqElem c) {
        return skew_constant(dom, dom.from_poly(PolyT::constant(a.field(), c)));
    };
    for (std::size_t idx = terms.size(); idx-- > 0;) {
        auto& [e, c] = terms[idx];
        if (prev >= 0)
            for (std::int64_t t = 0; t < prev - e; ++t) acc = skew_mul(dom, acc, phi_t);
        acc = skew_add(dom, acc, scalar(c));
        prev = e;
    }
    if (prev > 0)
        for (std::int64_t t = 0; t < prev; ++t) acc = skew_mul(dom, acc, phi_t);
    return acc;
}

}  // namespace drinfeld
