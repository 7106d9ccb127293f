#pragma once

#include <map>

#include "drinfeld/domain.hpp"

namespace drinfeld {

// Sparse multivariate monomial sums in the module coefficients A_1..A_r with
// scalars drawn from an underlying coefficient domain.  Only the operations a
// coefficient computation needs exist: +, x, Frobenius (which multiplies all
// exponents by q^j and maps the scalar), and division by scalar factor lists.
template <class SD>
class SymbolicDomain {
public:
    struct Elem {
        // exponent vector (one slot per indeterminate) -> nonzero scalar
        std::map<std::vector<std::int64_t>, typename SD::Elem> terms;
    };

    SymbolicDomain(SD scalars, int nvars) : sd_(std::move(scalars)), nvars_(nvars) {
        if (nvars < 0) throw domain_error("negative indeterminate count");
    }

    const SD& scalars() const { return sd_; }
    int nvars() const { return nvars_; }
    std::int64_t q() const { return sd_.q(); }

    Elem zero() const { return {}; }
    Elem one() const { return from_scalar(sd_.one()); }

    Elem from_scalar(typename SD::Elem s) const {
        Elem e;
        if (!sd_.is_zero(s)) e.terms.emplace(std::vector<std::int64_t>(std::size_t(nvars_), 0), std::move(s));
        return e;
    }

    Elem from_poly(const PolyT& p) const { return from_scalar(sd_.from_poly(p)); }

    Elem indeterminate(int i) const {
        if (i < 0 || i >= nvars_) throw domain_error("indeterminate index out of range");
        Elem e;
        std::vector<std::int64_t> exps(std::size_t(nvars_), 0);
        exps[std::size_t(i)] = 1;
        e.terms.emplace(std::move(exps), sd_.one());
        return e;
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r = a;
        for (const auto& [e, s] : b.terms) {
            auto it = r.terms.find(e);
            if (it == r.terms.end()) {
                r.terms.emplace(e, s);
            } else {
                it->second = sd_.add(it->second, s);
                if (sd_.is_zero(it->second)) r.terms.erase(it);
            }
        }
        return r;
    }

    Elem neg(const Elem& a) const {
        Elem r = a;
        for (auto& [e, s] : r.terms) s = sd_.neg(s);
        return r;
    }

    Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

    Elem mul(const Elem& a, const Elem& b) const {
        Elem r;
        for (const auto& [ea, sa] : a.terms)
            for (const auto& [eb, sb] : b.terms) {
                std::vector<std::int64_t> e(std::size_t(nvars_), 0);
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_add_exp(ea[i], eb[i]);
                auto prod = sd_.mul(sa, sb);
                auto it = r.terms.find(e);
                if (it == r.terms.end()) {
                    if (!sd_.is_zero(prod)) r.terms.emplace(std::move(e), std::move(prod));
                } else {
                    it->second = sd_.add(it->second, prod);
                    if (sd_.is_zero(it->second)) r.terms.erase(it);
                }
            }
        return r;
    }

    Elem frob(const Elem& a, std::int64_t j) const {
        if (j == 0) return a;
        std::int64_t scale = 1;
        for (std::int64_t t = 0; t < j; ++t) scale = checked_mul_exp(scale, q());
        Elem r;
        for (const auto& [e, s] : a.terms) {
            std::vector<std::int64_t> e2(e.size());
            for (std::size_t i = 0; i < e.size(); ++i) e2[i] = checked_mul_exp(e[i], scale);
            r.terms.emplace(std::move(e2), sd_.frob(s, j));
        }
        return r;
    }

    Elem pow_nat(const Elem& a, const mpz_class& e) const {
        if (e < 0) throw domain_error("negative exponent");
        Elem acc = one();
        for (std::size_t bit = mpz_sizeinbase(e.get_mpz_t(), 2); bit-- > 0;) {
            acc = mul(acc, acc);
            if (mpz_tstbit(e.get_mpz_t(), bit)) acc = mul(acc, a);
        }
        return acc;
    }

    Elem div_factored(const Elem& a, const FactorList& den) const {
        Elem r = a;
        for (auto& [e, s] : r.terms) s = sd_.div_factored(s, den);
        return r;
    }

    bool is_zero(const Elem& a) const { return a.terms.empty(); }

    bool eq(const Elem& a, const Elem& b) const {
        if (a.terms.size() != b.terms.size()) return false;
        auto it = b.terms.begin();
        for (const auto& [e, s] : a.terms) {
            if (e != it->first || !sd_.eq(s, it->second)) return false;
            ++it;
        }
        return true;
    }

private:
    SD sd_;
    int nvars_;
};

static_assert(CoefficientDomain<SymbolicDomain<KDomain>>);
static_assert(CoefficientDomain<SymbolicDomain<ResidueDomain>>);

}  // namespace drinfeld
