#pragma once

#include "drinfeld/partitions.hpp"
#include "drinfeld/skew.hpp"

namespace drinfeld {

enum class SeriesKind { exponential, logarithm };

// Coefficients c_0..c_N of an F_q-linear series sum c_n z^{q^n} attached to a
// Drinfeld module, together with the number of summands contributing to each
// coefficient in the closed form (one per shadowed partition).
template <class D>
struct LinearSeries {
    SeriesKind kind = SeriesKind::exponential;
    std::vector<typename D::Elem> c;
    std::vector<mpz_class> summands;

    std::int64_t n_max() const { return std::int64_t(c.size()) - 1; }
};

// prod_{i in S} [n-i]^{q^i}, with each factor kept as the two-term polynomial
// T^{q^n} - T^{q^i}.
template <class D>
typename D::Elem dn_factor(const D& dom, FqPtr F, std::int64_t n, const std::vector<int>& s) {
    auto acc = dom.one();
    for (int i : s) {
        if (i < 0 || i >= n) throw domain_error("dn_factor: index out of range");
        acc = dom.mul(acc, dom.from_poly(bracket(F, n - i).frob_q(i)));
    }
    return acc;
}

// prod_j prod_{i in S_j} (-[i+j]).
template <class D>
typename D::Elem lfactor(const D& dom, FqPtr F, const ShadowedPartition& part) {
    auto acc = dom.one();
    for (int j = 1; j <= part.r; ++j)
        for (int i : part.classes[std::size_t(j - 1)])
            acc = dom.mul(acc, dom.from_poly(bracket(F, i + j)));
    if (part.element_count() % 2 == 1) acc = dom.neg(acc);
    return acc;
}

namespace detail {

// Weight of every coefficient monomial is q^n - 1; checked during assembly.
inline void check_weight(std::int64_t q, std::int64_t n, const ShadowedPartition& part) {
    mpz_class expect;
    mpz_ui_pow_ui(expect.get_mpz_t(), unsigned(q), unsigned(n));
    expect -= 1;
    if (partition_weight(q, part) != expect)
        throw std::logic_error("partition weight invariant violated");
}

}  // namespace detail

// alpha_n = sum over shadowed partitions of A^S / prod_{i in union} [n-i]^{q^i},
// assembled over the common denominator prod_{i=0}^{n-1} [n-i]^{q^i} so that a
// single exact division finishes each coefficient.
template <class D>
LinearSeries<D> exp_coeffs_formula(const DrinfeldModule<D>& m, std::int64_t N) {
    const D& dom = m.dom;
    FqPtr F = m.base;
    const std::int64_t q = F->size();
    LinearSeries<D> out;
    out.kind = SeriesKind::exponential;
    out.c.push_back(dom.one());
    out.summands.push_back(1);
    for (std::int64_t n = 1; n <= N; ++n) {
        std::vector<PolyT> bn;  // bn[j] = [n-j]^{q^j} = T^{q^n} - T^{q^j}
        for (std::int64_t j = 0; j < n; ++j) bn.push_back(bracket(F, n - j).frob_q(j));
        auto parts = enumerate_partitions(m.rank(), int(n));
        auto sum = dom.zero();
        for (const auto& part : parts) {
            detail::check_weight(q, n, part);
            auto mono = partition_monomial(dom, m.a, part);
            std::vector<char> in_union(std::size_t(n), 0);
            for (int u : part.union_set()) in_union[std::size_t(u)] = 1;
            for (std::int64_t j = 0; j < n; ++j)
                if (!in_union[std::size_t(j)]) mono = dom.mul(mono, dom.from_poly(bn[std::size_t(j)]));
            sum = dom.add(sum, mono);
        }
        FactorList den;
        for (std::int64_t j = 0; j < n; ++j) den.emplace_back(bn[std::size_t(j)], 1);
        out.c.push_back(dom.div_factored(sum, den));
        out.summands.push_back(mpz_class(std::int64_t(parts.size())));
    }
    return out;
}

// [n] alpha_n = sum_{i=1}^{min(r,n)} A_i alpha_{n-i}^{q^i}.
template <class D>
LinearSeries<D> exp_coeffs_recursive(const DrinfeldModule<D>& m, std::int64_t N) {
    const D& dom = m.dom;
    LinearSeries<D> out;
    out.kind = SeriesKind::exponential;
    out.c.push_back(dom.one());
    out.summands.push_back(1);
    for (std::int64_t n = 1; n <= N; ++n) {
        auto num = dom.zero();
        for (std::int64_t i = 1; i <= std::min<std::int64_t>(m.rank(), n); ++i)
            num = dom.add(num, dom.mul(m.a[std::size_t(i - 1)], dom.frob(out.c[std::size_t(n - i)], i)));
        FactorList den{{bracket(m.base, n), 1}};
        out.c.push_back(dom.div_factored(num, den));
        out.summands.push_back(count_partitions(m.rank(), int(n)));
    }
    return out;
}

// beta_n = sum over shadowed partitions of A^S / L(S); every bracket index
// i+j is at most n and appears at most once, so prod_{k=1}^n [k] is a common
// denominator.
template <class D>
LinearSeries<D> log_coeffs_formula(const DrinfeldModule<D>& m, std::int64_t N) {
    const D& dom = m.dom;
    FqPtr F = m.base;
    const std::int64_t q = F->size();
    LinearSeries<D> out;
    out.kind = SeriesKind::logarithm;
    out.c.push_back(dom.one());
    out.summands.push_back(1);
    for (std::int64_t n = 1; n <= N; ++n) {
        std::vector<PolyT> bk;  // bk[k-1] = [k]
        for (std::int64_t k = 1; k <= n; ++k) bk.push_back(bracket(F, k));
        auto parts = enumerate_partitions(m.rank(), int(n));
        auto sum = dom.zero();
        for (const auto& part : parts) {
            detail::check_weight(q, n, part);
            std::vector<char> used(std::size_t(n) + 1, 0);
            for (int j = 1; j <= part.r; ++j)
                for (int i : part.classes[std::size_t(j - 1)]) {
                    std::int64_t k = i + j;
                    if (k < 1 || k > n || used[std::size_t(k)])
                        throw std::logic_error("bracket index invariant violated");
                    used[std::size_t(k)] = 1;
                }
            auto mono = partition_monomial(dom, m.a, part);
            for (std::int64_t k = 1; k <= n; ++k)
                if (!used[std::size_t(k)]) mono = dom.mul(mono, dom.from_poly(bk[std::size_t(k - 1)]));
            if (part.element_count() % 2 == 1) mono = dom.neg(mono);
            sum = dom.add(sum, mono);
        }
        FactorList den;
        for (std::int64_t k = 1; k <= n; ++k) den.emplace_back(bk[std::size_t(k - 1)], 1);
        out.c.push_back(dom.div_factored(sum, den));
        out.summands.push_back(mpz_class(std::int64_t(parts.size())));
    }
    return out;
}

// -[n] beta_n = sum_{i=1}^{min(r,n)} beta_{n-i} A_i^{q^{n-i}}.
template <class D>
LinearSeries<D> log_coeffs_recursive(const DrinfeldModule<D>& m, std::int64_t N) {
    const D& dom = m.dom;
    LinearSeries<D> out;
    out.kind = SeriesKind::logarithm;
    out.c.push_back(dom.one());
    out.summands.push_back(1);
    for (std::int64_t n = 1; n <= N; ++n) {
        auto num = dom.zero();
        for (std::int64_t i = 1; i <= std::min<std::int64_t>(m.rank(), n); ++i)
            num = dom.add(num, dom.mul(out.c[std::size_t(n - i)], dom.frob(m.a[std::size_t(i - 1)], n - i)));
        FactorList den{{bracket(m.base, n), 1}};
        out.c.push_back(dom.neg(dom.div_factored(num, den)));
        out.summands.push_back(count_partitions(m.rank(), int(n)));
    }
    return out;
}

// Coefficient of z^{q^k} in the composition sum_m beta_m (sum_n alpha_n
// z^{q^n})^{q^m} must be 1 at k = 0 and 0 for 1 <= k <= N.
template <class D>
bool compose_inverse_check(const D& dom, const LinearSeries<D>& alpha, const LinearSeries<D>& beta,
                           std::int64_t N) {
    if (alpha.n_max() < N || beta.n_max() < N)
        throw domain_error("compose_inverse_check: series truncated below N");
    for (std::int64_t k = 0; k <= N; ++k) {
        auto s = dom.zero();
        for (std::int64_t mdeg = 0; mdeg <= k; ++mdeg)
            s = dom.add(s, dom.mul(beta.c[std::size_t(mdeg)], dom.frob(alpha.c[std::size_t(k - mdeg)], mdeg)));
        if (k == 0 ? !dom.eq(s, dom.one()) : !dom.is_zero(s)) return false;
    }
    return true;
}

// Partial sum sum_{n<=N} c_n z^{q^n} in the coefficient domain itself (exact
// domains only; truncated-series evaluation with tail bounds lives with the
// local-field layer).
template <class D>
typename D::Elem eval_series_exact(const D& dom, const LinearSeries<D>& s, const typename D::Elem& z) {
    auto acc = dom.zero();
    for (std::size_t n = 0; n < s.c.size(); ++n)
        acc = dom.add(acc, dom.mul(s.c[n], dom.frob(z, std::int64_t(n))));
    return acc;
}

}  // namespace drinfeld
