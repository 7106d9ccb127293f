#pragma once

#include "drinfeld/partitions.hpp"
#include "drinfeld/residue.hpp"
#include "drinfeld/skew.hpp"

namespace drinfeld {

// h_n^S = sum over all tuples (k_i)_{i in S} of naturals with sum n of
// T^{sum k_i q^i}.  Zero for n < 0, one for n = 0 (even when S is empty).
// Distinct tuples can share an exponent, so coefficients accumulate mod p.
PolyT h_poly(std::int64_t n, const std::vector<int>& S, const FqPtr& F);

// |I_n(S)| = binomial(n + |S| - 1, n); the enumeration cost of h_poly.
mpz_class h_count(std::int64_t n, std::size_t set_size);

// Coefficient of tau^n in phi_{T^m}, by the closed form: a sum over
// shadowed partitions S of A^S h_{m-|S|}^{(union S union {n})}.
template <class D>
typename D::Elem c_formula(const DrinfeldModule<D>& mod, std::int64_t n, std::int64_t m) {
    const D& dom = mod.dom;
    if (n < 0 || m < 0 || n > std::int64_t(mod.rank()) * m) return dom.zero();
    auto acc = dom.zero();
    for (auto& part : enumerate_partitions(mod.rank(), int(n))) {
        std::int64_t remaining = m - std::int64_t(part.element_count());
        if (remaining < 0) continue;
        std::vector<int> s = part.union_set();  // inside {0..n-1}, so n is new
        s.push_back(int(n));
        PolyT h = h_poly(remaining, s, mod.base);
        if (h.is_zero()) continue;
        acc = dom.add(acc, dom.mul(partition_monomial(dom, mod.a, part), dom.from_poly(h)));
    }
    return acc;
}

// Rows m = 0..M of the tau-expansion of phi_{T^m}; rows[m][n] is the
// coefficient of tau^n, 0 <= n <= r m.
template <class D>
struct CoeffTable {
    std::vector<std::vector<typename D::Elem>> rows;
};

// Independent oracle for c_formula, built from
// c(n; m+1) = T c(n; m) + sum_i A_i c(n-i; m)^{q^i}.
template <class D>
CoeffTable<D> c_recursive(const DrinfeldModule<D>& mod, std::int64_t M) {
    const D& dom = mod.dom;
    std::int64_t r = mod.rank();
    auto T = dom.from_poly(PolyT::var(mod.base));
    CoeffTable<D> table;
    table.rows.push_back({dom.one()});
    for (std::int64_t m = 0; m < M; ++m) {
        const auto& prev = table.rows.back();
        std::vector<typename D::Elem> row(std::size_t(r * (m + 1) + 1), dom.zero());
        for (std::int64_t n = 0; n < std::int64_t(row.size()); ++n) {
            auto acc = dom.zero();
            if (n < std::int64_t(prev.size())) acc = dom.mul(T, prev[std::size_t(n)]);
            for (std::int64_t i = 1; i <= r; ++i)
                if (n - i >= 0 && n - i < std::int64_t(prev.size()))
                    acc = dom.add(acc, dom.mul(mod.a[std::size_t(i - 1)],
                                               dom.frob(prev[std::size_t(n - i)], i)));
            row[std::size_t(n)] = acc;
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

// Rank-2 supersingularity at the prime of the module's residue field:
// sum_{i = ceil(d/2)}^{d} mu_i c(d; i) = 0, where p = sum mu_i T^i.
bool supersingular_test(const DrinfeldModule<ResidueDomain>& phi);

// The defining property, as an independent path: the coefficient of tau^d
// in phi_p vanishes (pure inseparability of phi_p).
bool supersingular_direct(const DrinfeldModule<ResidueDomain>& phi);

// A rank-2 module over A/p with the given j-invariant: (A, B) = (j, j^q),
// or (0, 1) when j = 0.
DrinfeldModule<ResidueDomain> module_with_j(const ResiduePtr& R, const PolyT& j);

// Mechanical re-derivation of the degree-4 criterion: expands the mu-weighted
// coefficient sum with symbolic A, B over A/p, substitutes the Vieta values
// of mu_2, mu_3 and T^{q^4} = T, and compares against the closed polynomial
// in the j-invariant (both as an (A, B)-polynomial identity and term by term
// after dividing out B^{1+q^2}).  Also checks the Vieta congruences
// themselves against the Frobenius orbit of T.
bool ss_degree4_reduction_check(const ResiduePtr& R);

}  // namespace drinfeld
