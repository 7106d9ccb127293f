#include "drinfeld/multinomial.hpp"

#include <algorithm>
#include <map>

namespace drinfeld {

namespace {

std::int64_t checked_pow_exp(std::int64_t base, std::int64_t e) {
    __int128 acc = 1;
    for (std::int64_t i = 0; i < e; ++i) {
        acc *= base;
        if (acc > ResourceLimits::current().max_exponent())
            throw resource_error("monomial exponent exceeds the configured bit cap");
    }
    return std::int64_t(acc);
}

std::int64_t checked_weighted_sum(const std::vector<std::int64_t>& k,
                                  const std::vector<std::int64_t>& w) {
    __int128 acc = 0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        acc += __int128(k[i]) * w[i];
        if (acc > ResourceLimits::current().max_exponent())
            throw resource_error("monomial exponent exceeds the configured bit cap");
    }
    return std::int64_t(acc);
}

}  // namespace

mpz_class h_count(std::int64_t n, std::size_t set_size) {
    if (n < 0) return 0;
    if (set_size == 0) return n == 0 ? 1 : 0;
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n + std::int64_t(set_size) - 1),
                 static_cast<unsigned long>(n));
    return c;
}

PolyT h_poly(std::int64_t n, const std::vector<int>& S, const FqPtr& F) {
    if (n < 0) return PolyT::zero(F);
    if (n == 0) return PolyT::constant(F, 1);
    if (S.empty()) return PolyT::zero(F);
    if (h_count(n, S.size()) > ResourceLimits::current().max_enumeration)
        throw resource_error("composition enumeration exceeds the resource cap");

    std::vector<std::int64_t> w(S.size());
    for (std::size_t i = 0; i < S.size(); ++i)
        w[i] = checked_pow_exp(F->size(), S[i]);

    // odometer over all tuples with sum n, starting from (n, 0, ..., 0):
    // empty the first nonzero cell into position 0 minus one unit, carry one
    // unit right; stops once everything has drained into the last cell.
    std::map<std::int64_t, FqElem> terms;
    auto emit = [&](const std::vector<std::int64_t>& k) {
        std::int64_t e = checked_weighted_sum(k, w);
        auto [it, fresh] = terms.emplace(e, F->one());
        if (!fresh) it->second = F->add(it->second, F->one());
    };
    std::vector<std::int64_t> k(S.size(), 0);
    k[0] = n;
    emit(k);
    while (k.back() != n) {
        std::size_t i = 0;
        while (k[i] == 0) ++i;
        std::int64_t t = k[i];
        k[i] = 0;
        k[0] = t - 1;
        k[i + 1] += 1;
        emit(k);
    }

    std::vector<std::pair<std::int64_t, FqElem>> out;
    for (auto& [e, c] : terms)
        if (c != 0) out.emplace_back(e, c);
    return PolyT::from_terms(F, out);
}

bool supersingular_test(const DrinfeldModule<ResidueDomain>& phi) {
    if (phi.rank() != 2) throw domain_error("supersingularity criterion needs rank 2");
    const ResidueDomain& dom = phi.dom;
    const ResidueField& R = *dom.R;
    std::int64_t d = R.degree();
    auto table = c_recursive(phi, d);
    PolyT acc = dom.zero();
    for (std::int64_t i = (d + 1) / 2; i <= d; ++i) {
        const auto& row = table.rows[std::size_t(i)];
        if (d >= std::int64_t(row.size())) continue;
        PolyT mu = PolyT::constant(R.base(), R.mu(i));
        acc = dom.add(acc, dom.mul(dom.from_poly(mu), row[std::size_t(d)]));
    }
    return acc.is_zero();
}

bool supersingular_direct(const DrinfeldModule<ResidueDomain>& phi) {
    if (phi.rank() != 2) throw domain_error("supersingularity criterion needs rank 2");
    const ResidueField& R = *phi.dom.R;
    auto action = drinfeld_action(phi, R.prime());
    std::int64_t d = R.degree();
    if (d >= std::int64_t(action.c.size())) return true;
    return action.c[std::size_t(d)].is_zero();
}

DrinfeldModule<ResidueDomain> module_with_j(const ResiduePtr& R, const PolyT& j) {
    ResidueDomain dom(R);
    PolyT jr = R->reduce(j);
    if (jr.is_zero())
        return DrinfeldModule<ResidueDomain>::make(dom, R->base(), {dom.zero(), dom.one()});
    return DrinfeldModule<ResidueDomain>::make(dom, R->base(), {jr, R->frob(jr, 1)});
}

namespace {

// Bivariate polynomials in indeterminates A, B with coefficients in A/p;
// just enough structure for c_formula: the exponent pair is the key, and
// Frobenius raises exponents q-fold while acting on the coefficient.
struct SymDomain {
    using Key = std::pair<std::int64_t, std::int64_t>;
    using Elem = std::map<Key, PolyT>;
    ResiduePtr R;

    explicit SymDomain(ResiduePtr r) : R(std::move(r)) {}

    Elem zero() const { return {}; }
    Elem one() const { return {{{0, 0}, R->one()}}; }
    Elem from_poly(const PolyT& f) const {
        PolyT r = R->reduce(f);
        if (r.is_zero()) return {};
        return {{{0, 0}, r}};
    }
    Elem add(const Elem& a, const Elem& b) const {
        Elem r = a;
        for (auto& [k, c] : b) {
            auto [it, fresh] = r.emplace(k, c);
            if (!fresh) {
                it->second = R->add(it->second, c);
                if (it->second.is_zero()) r.erase(it);
            }
        }
        return r;
    }
    Elem neg(const Elem& a) const {
        Elem r = a;
        for (auto& [k, c] : r) c = R->neg(c);
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
    Elem mul(const Elem& a, const Elem& b) const {
        Elem r;
        for (auto& [ka, ca] : a)
            for (auto& [kb, cb] : b) {
                Key k{checked_add_exp(ka.first, kb.first),
                      checked_add_exp(ka.second, kb.second)};
                PolyT c = R->mul(ca, cb);
                if (c.is_zero()) continue;
                auto [it, fresh] = r.emplace(k, c);
                if (!fresh) {
                    it->second = R->add(it->second, c);
                    if (it->second.is_zero()) r.erase(it);
                }
            }
        return r;
    }
    Elem frob(const Elem& a, std::int64_t j) const {
        std::int64_t s = checked_pow_exp(R->base()->size(), j);
        Elem r;
        for (auto& [k, c] : a) {
            __int128 ea = __int128(k.first) * s, eb = __int128(k.second) * s;
            if (ea > ResourceLimits::current().max_exponent() ||
                eb > ResourceLimits::current().max_exponent())
                throw resource_error("monomial exponent exceeds the configured bit cap");
            r.emplace(Key{std::int64_t(ea), std::int64_t(eb)}, R->frob(c, j));
        }
        return r;
    }
    bool is_zero(const Elem& a) const { return a.empty(); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    std::int64_t q() const { return R->base()->size(); }
};

}  // namespace

bool ss_degree4_reduction_check(const ResiduePtr& Rp) {
    const ResidueField& R = *Rp;
    if (R.degree() != 4) throw domain_error("the quartic reduction check needs a degree-4 prime");
    std::int64_t q = R.base()->size();

    // Vieta over the root orbit {T^{q^i}}: elementary symmetric sums match
    // the prime's coefficients up to alternating sign
    std::vector<PolyT> t(4);
    for (int i = 0; i < 4; ++i) t[std::size_t(i)] = R.frob_t(i);
    PolyT e1 = R.zero(), e2 = R.zero(), e3 = R.zero();
    PolyT e4 = R.one();
    for (int i = 0; i < 4; ++i) {
        e1 = R.add(e1, t[std::size_t(i)]);
        e4 = R.mul(e4, t[std::size_t(i)]);
        for (int j = i + 1; j < 4; ++j) {
            e2 = R.add(e2, R.mul(t[std::size_t(i)], t[std::size_t(j)]));
            for (int l = j + 1; l < 4; ++l)
                e3 = R.add(e3, R.mul(R.mul(t[std::size_t(i)], t[std::size_t(j)]), t[std::size_t(l)]));
        }
    }
    auto mu = [&](int i) { return PolyT::constant(R.base(), R.mu(i)); };
    bool vieta = R.reduce(mu(3)) == R.neg(e1) && R.reduce(mu(2)) == e2 &&
                 R.reduce(mu(1)) == R.neg(e3) && R.reduce(mu(0)) == e4;

    // the mu-weighted coefficient sum with A, B symbolic
    SymDomain dom(Rp);
    SymDomain::Elem A{{{1, 0}, R.one()}}, B{{{0, 1}, R.one()}};
    auto phi = DrinfeldModule<SymDomain>::make(dom, R.base(), {A, B});
    auto E = dom.zero();
    for (std::int64_t i = 2; i <= 4; ++i)
        E = dom.add(E, dom.mul(dom.from_poly(mu(int(i))), c_formula(phi, 4, i)));

    // the closed form: A^{(1+q)(1+q^2)} - [1] A^{q^2+q^3} B - [2] A^{1+q^3} B^q
    // - [3] A^{1+q} B^{q^2} + [1][3] B^{1+q^2}
    auto br = [&](int nn) { return R.sub(R.frob_t(nn), R.t_class()); };
    std::int64_t q2 = q * q, q3 = q2 * q;
    SymDomain::Elem C;
    C[{1 + q + q2 + q3, 0}] = R.one();
    C[{q2 + q3, 1}] = R.neg(br(1));
    C[{1 + q3, q}] = R.neg(br(2));
    C[{1 + q, q2}] = R.neg(br(3));
    C[{0, 1 + q2}] = R.mul(br(1), br(3));
    bool closed = dom.eq(E, C);

    // dividing by B^{1+q^2} must leave a polynomial in j = A^{q+1}/B alone:
    // every term B-exponent b pairs with A-exponent (q+1)(1+q^2-b)
    std::map<std::int64_t, PolyT> jpoly;
    bool pure_j = true;
    for (auto& [k, c] : E) {
        std::int64_t jdeg = 1 + q2 - k.second;
        if (jdeg < 0 || k.first != (q + 1) * jdeg) {
            pure_j = false;
            break;
        }
        jpoly[jdeg] = c;
    }
    std::map<std::int64_t, PolyT> jexpect;
    jexpect[q2 + 1] = R.one();
    jexpect[q2] = R.neg(br(1));
    jexpect[q2 - q + 1] = R.neg(br(2));
    jexpect[1] = R.neg(br(3));
    jexpect[0] = R.mul(br(1), br(3));
    bool jmatch = pure_j && jpoly == jexpect;

    return vieta && closed && jmatch;
}

}  // namespace drinfeld
