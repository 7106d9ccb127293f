#include "drinfeld/poly.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace drinfeld {

namespace {

void check_terms(std::size_t n) {
    if (std::int64_t(n) > ResourceLimits::current().max_terms)
        throw resource_error("polynomial term count exceeds configured cap");
}

void require_field(const FqPtr& F) {
    if (!F) throw domain_error("polynomial without a coefficient field");
}

void require_same(const PolyT& a, const PolyT& b) {
    require_field(a.field());
    require_field(b.field());
    if (!a.field()->same_field(*b.field()))
        throw domain_error("mixed coefficient fields");
}

}  // namespace

PolyT PolyT::constant(FqPtr F, FqElem c) {
    PolyT r(std::move(F));
    if (c != 0) r.t_.push_back({0, c});
    return r;
}

PolyT PolyT::monomial(FqPtr F, std::int64_t exp, FqElem c) {
    if (exp < 0) throw domain_error("negative exponent in polynomial");
    checked_add_exp(exp, 0);
    PolyT r(std::move(F));
    if (c != 0) r.t_.push_back({exp, c});
    return r;
}

PolyT PolyT::from_terms(FqPtr F, std::vector<Term> terms) {
    PolyT r(std::move(F));
    r.t_ = std::move(terms);
    std::sort(r.t_.begin(), r.t_.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    r.normalize_sorted();
    return r;
}

void PolyT::normalize_sorted() {
    require_field(F_);
    std::size_t out = 0;
    for (std::size_t i = 0; i < t_.size();) {
        std::int64_t e = t_[i].first;
        if (e < 0) throw domain_error("negative exponent in polynomial");
        FqElem c = 0;
        while (i < t_.size() && t_[i].first == e) {
            c = F_->add(c, t_[i].second);
            ++i;
        }
        if (c != 0) t_[out++] = {e, c};
    }
    t_.resize(out);
    check_terms(t_.size());
}

std::int64_t PolyT::order() const {
    if (t_.empty()) throw domain_error("T-adic order of the zero polynomial");
    return t_.front().first;
}

FqElem PolyT::coeff(std::int64_t exp) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), exp,
                               [](const Term& t, std::int64_t e) { return t.first < e; });
    if (it != t_.end() && it->first == exp) return it->second;
    return 0;
}

PolyT PolyT::operator-() const {
    PolyT r(F_);
    r.t_.reserve(t_.size());
    for (auto& [e, c] : t_) r.t_.push_back({e, F_->neg(c)});
    return r;
}

PolyT operator+(const PolyT& a, const PolyT& b) {
    require_same(a, b);
    PolyT r(a.F_);
    r.t_.reserve(a.t_.size() + b.t_.size());
    std::size_t i = 0, j = 0;
    const auto& F = *a.F_;
    while (i < a.t_.size() || j < b.t_.size()) {
        if (j == b.t_.size() || (i < a.t_.size() && a.t_[i].first < b.t_[j].first)) {
            r.t_.push_back(a.t_[i++]);
        } else if (i == a.t_.size() || b.t_[j].first < a.t_[i].first) {
            r.t_.push_back(b.t_[j++]);
        } else {
            FqElem c = F.add(a.t_[i].second, b.t_[j].second);
            if (c != 0) r.t_.push_back({a.t_[i].first, c});
            ++i;
            ++j;
        }
    }
    check_terms(r.t_.size());
    return r;
}

PolyT operator-(const PolyT& a, const PolyT& b) { return a + (-b); }

PolyT operator*(const PolyT& a, const PolyT& b) {
    require_same(a, b);
    PolyT r(a.F_);
    if (a.t_.empty() || b.t_.empty()) return r;
    const auto& F = *a.F_;

    std::int64_t dr = checked_add_exp(a.degree(), b.degree());
    std::int64_t lo = a.t_.front().first + b.t_.front().first;
    std::int64_t span = dr - lo + 1;
    std::uint64_t pairs = std::uint64_t(a.t_.size()) * b.t_.size();

    if (span <= std::int64_t(ResourceLimits::current().max_terms) &&
        std::uint64_t(span) <= 8 * pairs) {
        // Dense accumulation over the exponent span.
        std::vector<FqElem> acc(std::size_t(span), 0);
        for (auto& [ea, ca] : a.t_)
            for (auto& [eb, cb] : b.t_) {
                std::size_t idx = std::size_t(ea + eb - lo);
                acc[idx] = F.add(acc[idx], F.mul(ca, cb));
            }
        r.t_.reserve(64);
        for (std::size_t i = 0; i < acc.size(); ++i)
            if (acc[i] != 0) r.t_.push_back({lo + std::int64_t(i), acc[i]});
        check_terms(r.t_.size());
        return r;
    }

    if (pairs > std::uint64_t(ResourceLimits::current().max_terms) * 8)
        throw resource_error("polynomial product too large");
    std::vector<PolyT::Term> prods;
    prods.reserve(std::size_t(pairs));
    for (auto& [ea, ca] : a.t_)
        for (auto& [eb, cb] : b.t_) prods.push_back({ea + eb, F.mul(ca, cb)});
    return PolyT::from_terms(a.F_, std::move(prods));
}

PolyT PolyT::mul_term(std::int64_t exp, FqElem c) const {
    PolyT r(F_);
    if (c == 0) return r;
    r.t_.reserve(t_.size());
    for (auto& [e, cc] : t_) {
        FqElem m = F_->mul(cc, c);
        if (m != 0) r.t_.push_back({checked_add_exp(e, exp), m});
    }
    return r;
}

std::pair<PolyT, PolyT> PolyT::divmod(const PolyT& a, const PolyT& b) {
    require_same(a, b);
    if (b.is_zero()) throw domain_error("polynomial division by zero");
    const auto& F = *a.F_;
    std::int64_t db = b.degree();
    FqElem lb_inv = F.inv(b.lead_coeff());

    // Working remainder as an exponent-keyed map, processed from the top.
    std::map<std::int64_t, FqElem, std::greater<std::int64_t>> rem;
    for (auto& [e, c] : a.t_) rem.emplace(e, c);
    std::vector<Term> quot;
    while (!rem.empty()) {
        auto top = *rem.begin();
        if (top.first < db) break;
        rem.erase(rem.begin());
        if (top.second == 0) continue;
        FqElem qc = F.mul(top.second, lb_inv);
        std::int64_t qe = top.first - db;
        quot.push_back({qe, qc});
        check_terms(quot.size());
        // subtract qc * T^qe * b, skipping b's leading term
        for (std::size_t i = 0; i + 1 < b.t_.size(); ++i) {
            auto& [e, c] = b.t_[i];
            FqElem sub = F.mul(qc, c);
            auto [it, fresh] = rem.emplace(e + qe, F.neg(sub));
            if (!fresh) {
                it->second = F.sub(it->second, sub);
                if (it->second == 0) rem.erase(it);
            }
            check_terms(rem.size());
        }
    }
    std::vector<Term> rest;
    rest.reserve(rem.size());
    for (auto& [e, c] : rem)
        if (c != 0) rest.push_back({e, c});
    std::reverse(rest.begin(), rest.end());
    std::reverse(quot.begin(), quot.end());
    PolyT q(a.F_), r(a.F_);
    q.t_ = std::move(quot);
    r.t_ = std::move(rest);
    return {q, r};
}

PolyT PolyT::exact_div(const PolyT& a, const PolyT& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw domain_error("division is not exact");
    return q;
}

bool PolyT::divides(const PolyT& a) const {
    if (is_zero()) return a.is_zero();
    return divmod(a, *this).second.is_zero();
}

PolyT PolyT::pow_nat(const mpz_class& e) const {
    require_field(F_);
    if (e < 0) throw domain_error("negative polynomial exponent");
    if (e == 0) return constant(F_, 1);
    if (is_zero()) return zero(F_);
    {
        mpz_class top = mpz_class(degree()) * e;
        if (top > ResourceLimits::current().max_exponent())
            throw resource_error("polynomial power exceeds exponent cap");
    }
    // e = sum d_i p^i with 0 <= d_i < p; a^e = prod (a^{p^i})^{d_i}.
    const std::uint32_t p = F_->p();
    mpz_class rest = e;
    PolyT result = constant(F_, 1);
    PolyT base = *this;
    while (rest > 0) {
        unsigned long d = mpz_fdiv_ui(rest.get_mpz_t(), p);
        for (unsigned long i = 0; i < d; ++i) result = result * base;
        rest /= p;
        if (rest > 0) base = base.frob_p(1);
    }
    return result;
}

PolyT PolyT::frob_p(std::int64_t j) const {
    require_field(F_);
    if (j < 0) throw domain_error("negative Frobenius power");
    if (j == 0) return *this;
    std::int64_t pj = 1;
    for (std::int64_t i = 0; i < j; ++i) pj = checked_mul_exp(pj, F_->p());
    PolyT r(F_);
    r.t_.reserve(t_.size());
    mpz_class pje(pj);
    for (auto& [e, c] : t_) r.t_.push_back({checked_mul_exp(e, pj), F_->pow(c, pje)});
    return r;
}

PolyT PolyT::monic() const {
    if (is_zero()) return *this;
    return scale(F_->inv(lead_coeff()));
}

FqElem PolyT::eval(FqElem x) const {
    require_field(F_);
    // Horner over the sparse gaps.
    FqElem acc = 0;
    std::int64_t prev = -1;
    for (std::size_t i = t_.size(); i-- > 0;) {
        auto& [e, c] = t_[i];
        if (prev >= 0) acc = F_->mul(acc, F_->pow_i64(x, prev - e));
        acc = F_->add(acc, c);
        prev = e;
    }
    if (prev > 0) acc = F_->mul(acc, F_->pow_i64(x, prev));
    return acc;
}

int PolyT::cmp(const PolyT& a, const PolyT& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    std::size_t i = a.t_.size(), j = b.t_.size();
    while (i > 0 && j > 0) {
        --i;
        --j;
        if (a.t_[i].first != b.t_[j].first) return a.t_[i].first < b.t_[j].first ? -1 : 1;
        if (a.t_[i].second != b.t_[j].second) return a.t_[i].second < b.t_[j].second ? -1 : 1;
    }
    if (i != j) return i < j ? -1 : 1;
    return 0;
}

PolyT gcd(PolyT a, PolyT b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    require_field(a.field());
    while (!b.is_zero()) {
        PolyT r = PolyT::divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

PolyT powmod(const PolyT& base, const mpz_class& e, const PolyT& m) {
    if (m.is_zero()) throw domain_error("zero modulus");
    if (e < 0) throw domain_error("negative exponent in powmod");
    PolyT r = PolyT::constant(base.field(), 1);
    PolyT b = PolyT::divmod(base, m).second;
    mpz_class rest = e;
    while (rest > 0) {
        if (mpz_odd_p(rest.get_mpz_t())) r = PolyT::divmod(r * b, m).second;
        b = PolyT::divmod(b * b, m).second;
        rest >>= 1;
    }
    return r;
}

bool is_irreducible(const PolyT& f) {
    std::int64_t d = f.degree();
    if (d <= 0) return false;
    if (d == 1) return true;
    const auto& F = f.field();
    mpz_class q(F->size());
    PolyT x = PolyT::var(F);
    mpz_class qd;
    mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d));
    if (!(powmod(x, qd, f) - x).is_zero()) return false;
    std::int64_t dd = d;
    for (std::int64_t t = 2; t <= dd; ++t) {
        if (dd % t) continue;
        while (dd % t == 0) dd /= t;
        mpz_class e;
        mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d / t));
        if (gcd(powmod(x, e, f) - x, f).degree() != 0) return false;
    }
    return true;
}

PolyT bracket(const FqPtr& F, int n) {
    if (n < 1) throw domain_error("bracket index must be positive");
    std::int64_t qn = 1;
    for (int i = 0; i < n; ++i) qn = checked_mul_exp(qn, F->size());
    return PolyT::from_terms(F, {{qn, 1}, {1, F->neg(1)}});
}

PolyT carlitz_d(const FqPtr& F, int n) {
    if (n < 0) throw domain_error("negative index");
    PolyT d = PolyT::constant(F, 1);
    for (int i = 1; i <= n; ++i) d = bracket(F, i) * d.frob_q(1);
    return d;
}

PolyT carlitz_l(const FqPtr& F, int n) {
    if (n < 0) throw domain_error("negative index");
    PolyT l = PolyT::constant(F, 1);
    for (int i = 1; i <= n; ++i) l = -(bracket(F, i) * l);
    return l;
}

std::vector<PolyT> monic_irreducibles(const FqPtr& F, int degree) {
    if (degree < 1) throw domain_error("degree must be positive");
    std::int64_t q = F->size();
    double total = std::pow(double(q), double(degree));
    if (total > double(ResourceLimits::current().max_enumeration))
        throw resource_error("too many candidate polynomials");
    std::vector<PolyT> out;
    std::vector<FqElem> c(std::size_t(degree), 0);
    for (;;) {
        std::vector<PolyT::Term> terms;
        terms.push_back({degree, 1});
        for (int i = 0; i < degree; ++i)
            if (c[std::size_t(i)] != 0) terms.push_back({i, c[std::size_t(i)]});
        PolyT f = PolyT::from_terms(F, std::move(terms));
        if (is_irreducible(f)) out.push_back(f);
        int pos = 0;
        while (pos < degree) {
            if (std::int64_t(++c[std::size_t(pos)]) < q) break;
            c[std::size_t(pos)] = 0;
            ++pos;
        }
        if (pos == degree) break;
    }
    return out;
}

}  // namespace drinfeld
