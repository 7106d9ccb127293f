#include "drinfeld/localfield.hpp"

#include <algorithm>
#include <sstream>

namespace drinfeld {

Frac LocalElem::valuation() const {
    if (known_zero()) throw domain_error("valuation of zero");
    if (supp.empty())
        throw precision_error("valuation of an element indistinguishable from zero at its precision");
    return Frac(supp.begin()->first, field->e());
}

std::string LocalElem::str() const {
    const auto& R = *field->residue();
    std::ostringstream out;
    bool first = true;
    for (const auto& [i, c] : supp) {
        if (!first) out << " + ";
        first = false;
        if (R.k() == 1) {
            out << c;
        } else if (c == R.one()) {
            out << "1";
        } else {
            out << "g^" << R.dlog(c);
        }
        out << "*u^" << i;
    }
    if (!is_exact()) {
        if (!first) out << " + ";
        out << "(O(u^" << prec << "))";
        return out.str();
    }
    if (first) return "0";
    return out.str();
}

LFPtr LocalField::make(FqPtr base, std::int64_t e, std::int64_t m, std::int64_t nprec) {
    if (e < 1 || m < 1) throw domain_error("ramification index and residue degree must be positive");
    if (e % base->p() == 0)
        throw domain_error("wild ramification requested (p divides e): unsupported extension");
    if (nprec < 2 * min_digits) throw domain_error("working precision too small");
    auto lf = std::shared_ptr<LocalField>(new LocalField());
    lf->base_ = base;
    lf->e_ = e;
    lf->m_ = m;
    lf->nprec_ = nprec;
    if (m == 1) {
        lf->res_ = base;
        lf->base_root_ = 0;  // unused: embedding is the identity
    } else {
        std::int64_t deg = checked_mul_exp(std::int64_t(base->k()), m);
        lf->res_ = make_field(base->p(), int(deg));
        lf->base_root_ = lf->res_->subfield_root(*base);
    }
    return lf;
}

FqElem LocalField::embed_base(FqElem c) const {
    if (m_ == 1) return c;
    return res_->embed_from(*base_, c, base_root_);
}

LocalElem LocalField::zero() const { return LocalElem{shared_from_this(), {}, LocalElem::EXACT}; }

LocalElem LocalField::monomial(FqElem c, std::int64_t i) const {
    LocalElem r{shared_from_this(), {}, LocalElem::EXACT};
    if (c != 0) r.supp.emplace(i, c);
    return r;
}

LocalElem LocalField::o_term(std::int64_t p) const { return LocalElem{shared_from_this(), {}, p}; }

LocalElem LocalField::embed_poly(const PolyT& f) const {
    if (f.field()->size() != base_->size() || f.field()->p() != base_->p())
        throw domain_error("polynomial field does not match local field base");
    LocalElem r{shared_from_this(), {}, LocalElem::EXACT};
    for (const auto& [deg, c] : f.terms())
        r.supp.emplace(checked_mul_exp(-deg, e_), embed_base(c));
    return r;
}

LocalElem LocalField::embed(const RatFunc& x, std::int64_t n) const {
    if (x.num().is_zero()) return zero();
    LocalElem num = embed_poly(x.num());
    if (x.den().is_one()) return num;
    if (x.den().term_count() == 1) {
        // monomial denominator: exact shift and residue division
        auto [deg, c] = x.den().terms()[0];
        LocalElem r = shift(num, checked_mul_exp(deg, e_));
        return mul_residue(r, res_->inv(embed_base(c)));
    }
    LocalElem den = embed_poly(x.den());
    // truncate so inv develops exactly n significant digits
    LocalElem dent = den;
    dent.prec = den.lo() + n;
    LocalElem numt = num;
    numt.prec = num.lo() + n;
    return mul(numt, inv(dent));
}

namespace {

std::int64_t min_prec(std::int64_t a, std::int64_t b) {
    return std::min(a, b) >= LocalElem::EXACT ? LocalElem::EXACT : std::min(a, b);
}

void drop_tail(LocalElem& x) {
    if (x.is_exact()) return;
    auto it = x.supp.lower_bound(x.prec);
    x.supp.erase(it, x.supp.end());
}

void check_field(const LocalElem& a, const LocalElem& b) {
    if (a.field != b.field) throw domain_error("local elements from different fields");
}

}  // namespace

LocalElem LocalField::add(const LocalElem& a, const LocalElem& b) const {
    check_field(a, b);
    LocalElem r{shared_from_this(), a.supp, min_prec(a.prec, b.prec)};
    for (const auto& [i, c] : b.supp) {
        auto it = r.supp.find(i);
        if (it == r.supp.end()) {
            r.supp.emplace(i, c);
        } else {
            FqElem s = res_->add(it->second, c);
            if (s == 0)
                r.supp.erase(it);
            else
                it->second = s;
        }
    }
    drop_tail(r);
    return r;
}

LocalElem LocalField::neg(const LocalElem& a) const {
    LocalElem r = a;
    for (auto& [i, c] : r.supp) c = res_->neg(c);
    return r;
}

LocalElem LocalField::sub(const LocalElem& a, const LocalElem& b) const { return add(a, neg(b)); }

LocalElem LocalField::mul(const LocalElem& a, const LocalElem& b) const {
    check_field(a, b);
    if (a.known_zero() || b.known_zero()) return zero();
    // O(u^pa)*b is O(u^{pa+lo(b)}) and symmetrically; take the worse bound
    std::int64_t p = LocalElem::EXACT;
    if (!a.is_exact()) p = std::min(p, checked_add_exp(a.prec, b.lo()));
    if (!b.is_exact()) p = std::min(p, checked_add_exp(b.prec, a.lo()));
    LocalElem r{shared_from_this(), {}, p};
    for (const auto& [i, c] : a.supp)
        for (const auto& [j, d] : b.supp) {
            std::int64_t k = checked_add_exp(i, j);
            if (k >= r.prec) continue;
            FqElem prod = res_->mul(c, d);
            auto it = r.supp.find(k);
            if (it == r.supp.end()) {
                if (prod != 0) r.supp.emplace(k, prod);
            } else {
                FqElem s = res_->add(it->second, prod);
                if (s == 0)
                    r.supp.erase(it);
                else
                    it->second = s;
            }
        }
    return r;
}

LocalElem LocalField::mul_residue(const LocalElem& a, FqElem c) const {
    if (c == 0) return a.is_exact() ? zero() : o_term(checked_add_exp(a.prec, a.lo()));
    LocalElem r = a;
    for (auto& [i, d] : r.supp) d = res_->mul(d, c);
    return r;
}

LocalElem LocalField::shift(const LocalElem& a, std::int64_t i) const {
    LocalElem r{shared_from_this(), {}, a.is_exact() ? LocalElem::EXACT : checked_add_exp(a.prec, i)};
    for (const auto& [j, c] : a.supp) r.supp.emplace(checked_add_exp(j, i), c);
    return r;
}

void LocalField::ensure_significant(const LocalElem& a) const {
    if (a.supp.empty())
        throw precision_error("operand indistinguishable from zero: cannot invert or extract roots");
    if (!a.is_exact() && a.significant() < min_digits)
        throw precision_error("operand has fewer than the minimum certified significant digits");
}

LocalElem LocalField::inv(const LocalElem& a) const {
    ensure_significant(a);
    std::int64_t va = a.lo();
    std::int64_t digits = a.is_exact() ? nprec_ : a.prec - va;
    // r accumulates the reciprocal; rho = 1 - a r is driven to O(u^{-va+digits})
    LocalElem r{shared_from_this(), {}, checked_add_exp(-va, digits)};
    LocalElem rho = one();
    rho.prec = digits;  // relative budget: compare against a u^{-va}
    FqElem lead = res_->inv(a.supp.begin()->second);
    // work on the shifted unit part: au = a u^{-va} has lo = 0
    LocalElem au = shift(a, -va);
    while (!rho.supp.empty()) {
        std::int64_t i = rho.supp.begin()->first;
        if (i >= digits) break;
        FqElem c = res_->mul(rho.supp.begin()->second, lead);
        r.supp.emplace(checked_add_exp(i, -va), c);
        LocalElem t = mul_residue(shift(au, i), c);
        rho = sub(rho, t);
    }
    return r;
}

LocalElem LocalField::frobenius_power(const LocalElem& a, std::int64_t j) const {
    if (j == 0) return a;
    if (j < 0) throw domain_error("negative Frobenius power");
    std::int64_t scale = 1;
    for (std::int64_t t = 0; t < j; ++t) scale = checked_mul_exp(scale, q());
    LocalElem r{shared_from_this(), {},
                a.is_exact() ? LocalElem::EXACT : checked_mul_exp(a.prec, scale)};
    std::int64_t kj = checked_mul_exp(j, base_->k());
    for (const auto& [i, c] : a.supp) r.supp.emplace(checked_mul_exp(i, scale), res_->frob_p(c, kj));
    return r;
}

LocalElem LocalField::pow_nat(const LocalElem& a, const mpz_class& n) const {
    if (n < 0) throw domain_error("negative exponent");
    LocalElem acc = one();
    for (std::size_t bit = mpz_sizeinbase(n.get_mpz_t(), 2); bit-- > 0;) {
        acc = mul(acc, acc);
        if (mpz_tstbit(n.get_mpz_t(), bit)) acc = mul(acc, a);
    }
    if (n == 0) return one();
    return acc;
}

LocalElem LocalField::truncate(const LocalElem& a, std::int64_t p) const {
    LocalElem r = a;
    r.prec = std::min(r.prec, p);
    drop_tail(r);
    return r;
}

bool LocalField::eq(const LocalElem& a, const LocalElem& b) const {
    check_field(a, b);
    std::int64_t p = min_prec(a.prec, b.prec);
    auto ta = truncate(a, p), tb = truncate(b, p);
    return ta.supp == tb.supp;
}

LocalElem embed_factored(const LFPtr& lf, const FactoredFrac& x) {
    if (x.is_zero()) return lf->zero();
    LocalElem r = lf->embed_poly(x.num());
    for (const auto& [f, e] : x.den())
        r = lf->mul(r, lf->pow_nat(lf->inv(lf->embed_poly(f)), mpz_class(static_cast<long>(e))));
    return r;
}

// ---- Newton polygon ----

NewtonPolygon newton_polygon(const std::vector<std::pair<std::int64_t, std::optional<Frac>>>& pts) {
    std::vector<std::pair<std::int64_t, Frac>> finite;
    for (const auto& [x, v] : pts)
        if (v) finite.emplace_back(x, *v);
    if (finite.size() < 2) throw domain_error("newton polygon needs at least two finite points");
    std::sort(finite.begin(), finite.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < finite.size(); ++i)
        if (finite[i].first == finite[i - 1].first)
            throw domain_error("newton polygon: duplicate exponent");
    // monotone-chain lower hull
    NewtonPolygon np;
    auto& h = np.vertices;
    for (const auto& pt : finite) {
        while (h.size() >= 2) {
            // replace last vertex if pt keeps the hull convex from below:
            // slope(h[-2], h[-1]) >= slope(h[-2], pt) means h[-1] is above
            const auto& a = h[h.size() - 2];
            const auto& b = h[h.size() - 1];
            Frac s1 = (b.second - a.second) / Frac(b.first - a.first);
            Frac s2 = (pt.second - a.second) / Frac(pt.first - a.first);
            if (s2 <= s1)
                h.pop_back();
            else
                break;
        }
        h.push_back(pt);
    }
    for (std::size_t i = 1; i < h.size(); ++i) {
        NewtonSegment seg;
        seg.width = h[i].first - h[i - 1].first;
        seg.slope = (h[i].second - h[i - 1].second) / Frac(seg.width);
        np.segments.push_back(seg);
    }
    return np;
}

// ---- root finding ----

namespace {

LocalElem eval_poly_at(const std::vector<LocalElem>& f, const LocalElem& x) {
    const LocalField& lf = *x.field;
    LocalElem acc = lf.zero();
    for (std::size_t i = f.size(); i-- > 0;) acc = lf.add(lf.mul(acc, x), f[i]);
    return acc;
}

std::vector<LocalElem> derivative(const std::vector<LocalElem>& f) {
    std::vector<LocalElem> d;
    if (f.empty()) return d;
    const LocalField& lf = *f[0].field;
    const auto& R = *lf.residue();
    for (std::size_t i = 1; i < f.size(); ++i) {
        FqElem scalar = R.from_int(std::int64_t(i % R.p()));
        d.push_back(lf.mul_residue(f[i], scalar));
    }
    return d;
}

}  // namespace

LocalElem hensel_root(const std::vector<LocalElem>& f, const LocalElem& x0) {
    if (f.size() < 2) throw domain_error("hensel_root needs a nonconstant polynomial");
    const LFPtr& lf = x0.field;
    auto df = derivative(f);
    LocalElem x = x0;
    LocalElem fx = eval_poly_at(f, x);
    LocalElem dfx = eval_poly_at(df, x);
    if (dfx.supp.empty()) throw domain_error("hensel_root: derivative indistinguishable from zero");
    if (!fx.supp.empty()) {
        // classical precondition v(f(x0)) > 2 v(f'(x0)) on certified bounds
        if (Frac(fx.lo(), lf->e()) <= Frac(2) * Frac(dfx.lo(), lf->e()))
            throw domain_error("hensel_root: precondition v(f(x0)) > 2 v(f'(x0)) fails");
    }
    std::int64_t last_lo = fx.lo();
    for (int iter = 0; iter < 200; ++iter) {
        if (fx.supp.empty()) return x;  // residual below precision: converged
        x = lf->sub(x, lf->div(fx, dfx));
        fx = eval_poly_at(f, x);
        dfx = eval_poly_at(df, x);
        if (dfx.supp.empty())
            throw domain_error("hensel_root: derivative indistinguishable from zero");
        if (fx.lo() <= last_lo) throw resource_error("hensel_root: residual valuation stalled");
        last_lo = fx.lo();
    }
    throw resource_error("hensel_root: iteration budget exhausted");
}

LocalElem artin_schreier_solve(const LocalElem& gamma) {
    const LFPtr& lf = gamma.field;
    if (gamma.known_zero()) return lf->zero();
    if (gamma.vanishes()) return lf->o_term(gamma.prec);
    if (gamma.lo() <= 0)
        throw domain_error(
            "artin-schreier series diverges: right-hand side has nonpositive valuation");
    std::int64_t budget = gamma.is_exact() ? lf->nprec() : gamma.prec;
    LocalElem acc = lf->o_term(budget);
    LocalElem term = lf->truncate(gamma, budget);
    while (!term.supp.empty() && term.lo() < budget) {
        acc = lf->sub(acc, term);
        term = lf->frobenius_power(term, 1);
    }
    return acc;
}

LocalElem nth_root_local(const LocalElem& x, std::int64_t n) {
    const LFPtr& lf = x.field;
    if (n <= 0) throw domain_error("root index must be positive");
    lf->ensure_significant(x);
    if (n % lf->base()->p() == 0)
        throw domain_error("root index divisible by the characteristic: unsupported extension");
    std::int64_t w = x.lo();
    if (w % n != 0)
        throw enlarge_ramification_error("root valuation not integral here: enlarge ramification index");
    const auto& R = *lf->residue();
    FqElem c = x.supp.begin()->second;
    auto c0 = R.nth_root(c, mpz_class(n));
    if (!c0)
        throw enlarge_residue_error("leading residue coefficient has no such root: enlarge residue field");
    // normalize to a 1-unit: xu = x / (c u^w) = 1 + eps, solve s^n = xu from s=1
    LocalElem xu = lf->mul_residue(lf->shift(x, -w), R.inv(c));
    std::vector<LocalElem> f(std::size_t(n) + 1, lf->zero());
    f[0] = lf->neg(xu);
    f[std::size_t(n)] = lf->one();
    LocalElem s = hensel_root(f, lf->one());
    return lf->mul_residue(lf->shift(s, w / n), *c0);
}

LocalElem sqrt_local(const LocalElem& x) {
    const LFPtr& lf = x.field;
    if (lf->base()->p() != 2) return nth_root_local(x, 2);
    if (x.known_zero()) return lf->zero();
    if (x.vanishes()) return lf->o_term(x.prec / 2);
    const auto& R = *lf->residue();
    LocalElem r{lf, {}, x.is_exact() ? LocalElem::EXACT : x.prec / 2 + (x.prec % 2)};
    for (const auto& [i, c] : x.supp) {
        if (i % 2 != 0)
            throw domain_error(
                "square root needs wild ramification in characteristic 2: unsupported extension");
        // c^{1/2} = c^{2^{d-1}} in F_{2^d}
        r.supp.emplace(i / 2, R.frob_p(c, std::int64_t(R.k()) - 1));
    }
    return r;
}

}  // namespace drinfeld
