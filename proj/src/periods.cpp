#include "drinfeld/periods.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "drinfeld/poly.hpp"

namespace drinfeld {

Rank2Analysis rank2_analyze(std::int64_t q, std::optional<Frac> vA, Frac vB) {
    if (q < 2) throw domain_error("base field size must be at least 2");
    Rank2Analysis an;
    an.q = q;
    an.vA = vA;
    an.vB = vB;
    an.rhoB = -(Frac(q) * Frac(q) + vB) / Frac(q * q - 1);
    if (vA) {
        an.vj = Frac(q + 1) * *vA - vB;
        an.rhoA = -(Frac(q) + *vA) / Frac(q - 1);
        an.rho = *an.rhoA < an.rhoB ? an.rhoB : *an.rhoA;
        Frac boundary(-q);
        an.jcase = *an.vj > boundary ? +1 : (*an.vj == boundary ? 0 : -1);
    } else {
        an.rho = an.rhoB;
        an.jcase = +1;
    }
    return an;
}

BetaValuation beta_valuation(std::int64_t n, const Rank2Analysis& an) {
    if (n < 0) throw domain_error("coefficient index must be nonnegative");
    if (n == 0) return {Frac(0), false};
    std::int64_t q = an.q;
    Frac qn1(pow_i64(q, int(n)) - 1);
    if (an.jcase <= 0)
        return {qn1 * ((*an.vA + Frac(q)) / Frac(q - 1)), an.jcase == 0};
    Frac base = qn1 * ((an.vB + Frac(q) * Frac(q)) / Frac(q * q - 1));
    if (n % 2 == 0) return {base, false};
    if (!an.vj) return {std::nullopt, false};  // A = 0: odd coefficients vanish
    return {base + (*an.vj + Frac(q)) / Frac(q + 1), false};
}

Rank2Spec rank2_spec(const DrinfeldModule<KDomain>& m) {
    if (m.rank() != 2) throw domain_error("rank-2 analysis needs a rank-2 module");
    Rank2Spec s;
    s.F = m.base;
    FactoredFrac A = m.a[0], B = m.a[1];
    if (!A.is_zero()) s.vA = A.valuation();
    s.vB = B.valuation();
    s.embedA = [A](const LFPtr& L) { return embed_factored(L, A); };
    s.embedB = [B](const LFPtr& L) { return embed_factored(L, B); };
    return s;
}

Rank2Spec rank2_spec(const DrinfeldModule<QuadDomain>& m) {
    if (m.rank() != 2) throw domain_error("rank-2 analysis needs a rank-2 module");
    Rank2Spec s;
    s.F = m.base;
    QuadDomain dom = m.dom;
    QuadElem A = m.a[0], B = m.a[1];
    if (!dom.is_zero(A)) s.vA = dom.valuation(A);
    s.vB = dom.valuation(B);
    bool surd_part = !A.b.is_zero() || !B.b.is_zero();
    if (surd_part && dom.surd().degree() % 2 != 0) s.e_needed = 2;
    s.embedA = [dom, A](const LFPtr& L) {
        return dom.is_zero(A) ? L->zero() : embed_quad(L, dom, A);
    };
    s.embedB = [dom, B](const LFPtr& L) { return embed_quad(L, dom, B); };
    return s;
}

namespace {

std::int64_t scaled_exact(const Frac& v, std::int64_t e, const char* what) {
    __int128 n = __int128(v.num()) * e;
    if (n % v.den() != 0)
        throw domain_error(std::string(what) +
                           ": valuation not representable at this ramification");
    return std::int64_t(n / v.den());
}

std::int64_t ceil_scaled(const Frac& v, std::int64_t e) {
    __int128 n = __int128(v.num()) * e;
    __int128 d = v.den();
    __int128 r = n / d;
    if (n % d != 0 && n > 0) ++r;
    return std::int64_t(r);
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {  // b > 0
    std::int64_t r = a / b;
    if (a % b != 0 && a > 0) ++r;
    return r;
}

// phi_T coefficients placed in a concrete field.
struct Placed {
    LFPtr L;
    LocalElem T, A, B;
};

Placed place(const Rank2Spec& spec, const LFPtr& L) {
    if (!spec.F || !spec.embedA || !spec.embedB)
        throw domain_error("module spec is missing its field or embedding callbacks");
    Placed P{L, L->embed_poly(PolyT::var(spec.F)), spec.embedA(L), spec.embedB(L)};
    if (spec.vA) {
        if (P.A.vanishes())
            throw precision_error("embedded A is indistinguishable from zero");
        if (!(P.A.valuation() == *spec.vA))
            throw domain_error("declared valuation of A disagrees with its embedding");
    } else if (!P.A.known_zero()) {
        throw domain_error("spec declares A = 0 but the embedding is nonzero");
    }
    if (P.B.vanishes())
        throw precision_error("embedded B is indistinguishable from zero");
    if (!(P.B.valuation() == spec.vB))
        throw domain_error("declared valuation of B disagrees with its embedding");
    return P;
}

// Terms of f_phi(x)/x as exponent -> placed coefficient.
std::vector<std::pair<std::int64_t, const LocalElem*>> unit_terms(const Placed& P) {
    std::int64_t q = P.L->q();
    std::vector<std::pair<std::int64_t, const LocalElem*>> t;
    t.push_back({0, &P.T});
    if (!P.A.known_zero()) t.push_back({q - 1, &P.A});
    t.push_back({q * q - 1, &P.B});
    return t;
}

// Leading residue coefficients of the terms minimizing lo + i w: the residue
// equation of the Newton segment of slope -w/e.
std::map<std::int64_t, FqElem> segment_residue(
    const std::vector<std::pair<std::int64_t, const LocalElem*>>& terms, std::int64_t w) {
    std::int64_t best = 0;
    bool first = true;
    for (auto& [i, cp] : terms) {
        std::int64_t lv = cp->lo() + i * w;
        if (first || lv < best) best = lv;
        first = false;
    }
    std::map<std::int64_t, FqElem> R;
    for (auto& [i, cp] : terms)
        if (cp->lo() + i * w == best) R[i] = cp->supp.begin()->second;
    return R;
}

std::optional<FqElem> smallest_residue_root(const FqPtr& R,
                                            const std::map<std::int64_t, FqElem>& f) {
    for (std::int64_t x = 1; x < R->size(); ++x) {
        FqElem v = 0;
        for (auto& [i, c] : f) v = R->add(v, R->mul(c, R->pow_i64(FqElem(x), i)));
        if (v == 0) return FqElem(x);
    }
    return std::nullopt;
}

// Lift a simple residue root X0 at slope w: substitute x = X0 u^w s, strip the
// common valuation so the residue equation sits at level 0 (then the simple
// root makes the classical Newton condition hold at s = 1), and undo the
// substitution.
LocalElem lift_segment_root(const Placed& P,
                            const std::vector<std::pair<std::int64_t, const LocalElem*>>& terms,
                            FqElem X0, std::int64_t w) {
    const LocalField& L = *P.L;
    const FqPtr& R = P.L->residue();
    std::int64_t deg = 0;
    for (auto& [i, cp] : terms) deg = std::max(deg, i);
    std::vector<LocalElem> g(std::size_t(deg) + 1, L.zero());
    std::int64_t lo_min = 0;
    bool first = true;
    for (auto& [i, cp] : terms) {
        LocalElem gi = L.shift(L.mul_residue(*cp, R->pow_i64(X0, i)), i * w);
        if (first || gi.lo() < lo_min) lo_min = gi.lo();
        first = false;
        g[std::size_t(i)] = std::move(gi);
    }
    for (auto& gi : g)
        if (!gi.known_zero()) gi = L.shift(gi, -lo_min);
    LocalElem s = hensel_root(g, L.one());
    return L.mul(s, L.monomial(X0, w));
}

// One root of x^q - a x = b, by successive corrections.  Each round looks at
// the residual r = b - (x^q - a x) and reads the next correction valuation
// off the Newton polygon of y^q - a y - r: below the kernel level lo(a)/(q-1)
// the Frobenius term dominates (correction at n/q, which must be integral --
// otherwise the root needs wildly ramified digits and is out of scope), above
// it the linear term does (correction at n - lo(a)), and on it the leading
// digit obeys an Artin-Schreier equation over the residue field, solved by
// scanning -- the level where the q roots of the cluster split.  An empty
// scan means the residue field is too small.
LocalElem solve_tau1(const Placed& P, const LocalElem& a, const LocalElem& b) {
    const LocalField& L = *P.L;
    const FqPtr& R = L.residue();
    std::int64_t k = L.base()->k();
    std::int64_t q = L.q();
    L.ensure_significant(a);
    if (b.known_zero()) return L.zero();
    std::int64_t lo_a = a.lo();
    FqElem a0 = a.supp.begin()->second;
    LocalElem x = L.zero();
    LocalElem r = b;
    std::int64_t last_j = std::numeric_limits<std::int64_t>::min();
    std::int64_t guard = 8 * (L.nprec() + 64);
    while (!r.supp.empty()) {
        if (--guard < 0) throw resource_error("digit solver exceeded its iteration budget");
        std::int64_t n = r.lo();
        FqElem rho = r.supp.begin()->second;
        std::int64_t j;
        FqElem xi;
        if ((q - 1) * n == q * lo_a) {
            // gcd(q-1, q) = 1 makes n/q integral on the kernel level
            j = n / q;
            std::optional<FqElem> found;
            for (std::int64_t t = 0; t < R->size(); ++t) {
                FqElem cand = FqElem(t);
                if (R->sub(R->frob_p(cand, k), R->mul(a0, cand)) == rho) {
                    found = cand;
                    break;
                }
            }
            if (!found)
                throw enlarge_residue_error(
                    "digit equation has no residue solution: enlarge residue field");
            xi = *found;
        } else if ((q - 1) * n < q * lo_a) {
            if (n % q != 0)
                throw domain_error(
                    "torsion digits need wild ramification: unsupported extension");
            j = n / q;
            xi = R->frob_p(rho, k * (L.m() - 1));
        } else {
            j = n - lo_a;
            xi = R->neg(R->div(rho, a0));
        }
        if (j <= last_j)
            throw domain_error("q-linear digit solve regressed: inconsistent input");
        last_j = j;
        LocalElem d = L.monomial(xi, j);
        x = L.add(x, d);
        r = L.sub(r, L.sub(L.frobenius_power(d, 1), L.mul(a, d)));
    }
    if (r.known_zero()) return x;
    return L.truncate(x, std::max(ceil_div(r.prec, q), r.prec - lo_a));
}

TorsionBasis build_basis(const Rank2Spec& spec, const Rank2Analysis& an, const LFPtr& Lp,
                         bool delta_low) {
    const LocalField& L = *Lp;
    const FqPtr& R = Lp->residue();
    std::int64_t q = L.q(), e = L.e(), k = L.base()->k();
    Placed P = place(spec, Lp);
    TorsionBasis out;
    out.L = Lp;
    out.T = P.T;
    out.A = P.A;
    out.B = P.B;
    out.an = an;
    auto terms = unit_terms(P);
    LocalElem rootTB = root_qminus1(L.div(P.T, P.B));
    if (an.jcase >= 0) {
        Frac vd = -(Frac(1) + an.vB) / Frac(q * q - 1);
        std::int64_t w = scaled_exact(vd, e, "one-slope torsion valuation");
        auto X0 = smallest_residue_root(R, segment_residue(terms, w));
        if (!X0)
            throw enlarge_residue_error(
                "segment residue equation has no root here: enlarge residue field");
        LocalElem delta = lift_segment_root(P, terms, *X0, w);
        LocalElem c = L.mul(L.inv(delta), rootTB);
        LocalElem gamma = L.mul(c, L.inv(L.frobenius_power(delta, 1)));
        if (gamma.lo() != 0)
            throw domain_error("internal: unit ratio expected in the one-slope construction");
        FqElem g0 = gamma.supp.begin()->second;
        std::optional<FqElem> x0;
        for (std::int64_t t = 0; t < R->size(); ++t) {
            FqElem cand = FqElem(t);
            if (R->sub(R->frob_p(cand, k), cand) == g0) {
                x0 = cand;
                break;
            }
        }
        if (!x0)
            throw enlarge_residue_error(
                "first torsion digit has no residue solution: enlarge residue field");
        LocalElem X =
            L.add(L.from_residue(*x0),
                  artin_schreier_solve(L.sub(gamma, L.from_residue(g0))));
        out.delta = delta;
        out.zeta = L.mul(delta, X);
        out.c = c;
        out.v_delta = vd;
        out.v_zeta = vd;
        out.delta_low = false;
    } else {
        // Two slopes.  The narrow-segment residue equation keeps its constant
        // term and is separable, so that root lifts first; the wide root then
        // solves x^q - eta^{q-1} x = y0 where B y^q + h0 y factors phi_T
        // through the narrow line (h0 = A + B eta^{q(q-1)}).
        Frac vh = -(Frac(1) + *an.vA) / Frac(q - 1);
        Frac vl = (*an.vA - an.vB) / Frac(q * q - q);
        std::int64_t wh = scaled_exact(vh, e, "narrow torsion valuation");
        auto X0 = smallest_residue_root(R, segment_residue(terms, wh));
        if (!X0)
            throw enlarge_residue_error(
                "segment residue equation has no root here: enlarge residue field");
        LocalElem eta = lift_segment_root(P, terms, *X0, wh);
        LocalElem ar = L.pow_nat(eta, mpz_class(long(q - 1)));
        LocalElem h0 = L.add(P.A, L.mul(P.B, L.frobenius_power(ar, 1)));
        LocalElem y0 = nth_root_local(L.div(L.neg(h0), P.B), q - 1);
        LocalElem wide = solve_tau1(P, ar, y0);
        if (!(wide.valuation() == vl))
            throw domain_error("internal: wide torsion root has unexpected valuation");
        out.delta = delta_low ? wide : eta;
        out.zeta = delta_low ? eta : wide;
        out.v_delta = delta_low ? vl : vh;
        out.v_zeta = delta_low ? vh : vl;
        out.delta_low = delta_low;
        out.c = L.mul(L.inv(out.delta), rootTB);
        // scale the second generator so that zeta^q - delta^{q-1} zeta = c
        LocalElem C = L.sub(L.frobenius_power(out.zeta, 1),
                            L.mul(L.pow_nat(out.delta, mpz_class(long(q - 1))), out.zeta));
        LocalElem s = L.div(out.c, C);
        if (s.vanishes() || s.lo() != 0)
            throw domain_error("internal: structure scalar is not a unit");
        FqElem s0 = s.supp.begin()->second;
        if (R->frob_p(s0, k) != s0)
            throw domain_error("internal: structure scalar falls outside the base field");
        if (!L.sub(s, L.from_residue(s0)).vanishes())
            throw domain_error("internal: structure scalar is not constant");
        out.zeta = L.mul_residue(out.zeta, s0);
    }
    // the defining relation of the pair, and kernel membership
    LocalElem rel = L.sub(L.sub(L.frobenius_power(out.zeta, 1),
                                L.mul(L.pow_nat(out.delta, mpz_class(long(q - 1))), out.zeta)),
                          out.c);
    if (!rel.vanishes())
        throw domain_error("internal: torsion pair fails its structure equation");
    if (!torsion_map(out, out.delta).vanishes() || !torsion_map(out, out.zeta).vanishes())
        throw domain_error("internal: torsion candidate fails the kernel equation");
    for (std::int64_t ai = 0; ai < q; ++ai)
        for (std::int64_t bi = (ai == 0 ? 1 : 0); bi < q; ++bi) {
            LocalElem comb = L.add(L.mul_residue(out.delta, L.embed_base(FqElem(ai))),
                                   L.mul_residue(out.zeta, L.embed_base(FqElem(bi))));
            if (comb.vanishes())
                throw domain_error("internal: torsion candidates are F_q-dependent");
        }
    return out;
}

}  // namespace

TorsionBasis torsion_basis(const Rank2Spec& spec, std::int64_t nprec, bool delta_low) {
    if (!spec.F) throw domain_error("module spec is missing its field");
    Rank2Analysis an = rank2_analyze(spec.F->size(), spec.vA, spec.vB);
    std::int64_t q = an.q, p = spec.F->p();
    std::vector<Frac> vals{an.vB, (Frac(1) + an.vB) / Frac(q - 1)};
    if (an.jcase >= 0) vals.push_back(-(Frac(1) + an.vB) / Frac(q * q - 1));
    if (an.vA) {
        vals.push_back(*an.vA);
        if (an.jcase < 0) {
            vals.push_back(-(Frac(1) + *an.vA) / Frac(q - 1));
            vals.push_back((*an.vA - an.vB) / Frac(q * q - q));
            vals.push_back((*an.vA - an.vB) / Frac(q - 1));
        }
    }
    std::int64_t e = spec.e_needed;
    for (auto& v : vals) e = std::lcm(e, v.den());
    if (e % p == 0)
        throw domain_error("torsion valuations need wild ramification: unsupported extension");
    const std::int64_t cap = ResourceLimits::current().max_field_size;
    std::int64_t size = q;
    for (std::int64_t m = 1;; ++m, size *= q) {
        if (size > cap)
            throw resource_error("torsion residue field exceeds the supported size");
        try {
            return build_basis(spec, an, LocalField::make(spec.F, e, m, nprec), delta_low);
        } catch (const enlarge_residue_error&) {
            continue;
        }
    }
}

LocalElem torsion_map(const TorsionBasis& b, const LocalElem& x) {
    const LocalField& L = *b.L;
    return L.add(L.add(L.mul(b.B, L.frobenius_power(x, 2)), L.mul(b.A, L.frobenius_power(x, 1))),
                 L.mul(b.T, x));
}

std::vector<LocalElem> torsion_product_coeffs(const TorsionBasis& b) {
    const LocalField& L = *b.L;
    std::vector<LocalElem> cs{L.one()};
    for (std::int64_t ai = 0; ai < L.q(); ++ai)
        for (std::int64_t bi = 0; bi < L.q(); ++bi) {
            LocalElem w = L.add(L.mul_residue(b.delta, L.embed_base(FqElem(ai))),
                                L.mul_residue(b.zeta, L.embed_base(FqElem(bi))));
            std::vector<LocalElem> nxt(cs.size() + 1, L.zero());
            for (std::size_t i = 0; i < cs.size(); ++i) {
                nxt[i + 1] = L.add(nxt[i + 1], cs[i]);
                nxt[i] = L.sub(nxt[i], L.mul(cs[i], w));
            }
            cs = std::move(nxt);
        }
    for (auto& c : cs) c = L.mul(c, b.B);
    return cs;
}

std::vector<LocalElem> log_coeffs_local(const LFPtr& Lp, const LocalElem& A, const LocalElem& B,
                                        std::int64_t N) {
    const LocalField& L = *Lp;
    std::vector<LocalElem> beta{L.one()};
    for (std::int64_t n = 1; n <= N; ++n) {
        LocalElem s = L.zero();
        if (!A.known_zero())
            s = L.add(s, L.mul(L.frobenius_power(A, n - 1), beta[std::size_t(n - 1)]));
        if (n >= 2)
            s = L.add(s, L.mul(L.frobenius_power(B, n - 2), beta[std::size_t(n - 2)]));
        beta.push_back(L.neg(L.div(s, L.embed_poly(bracket(L.base(), int(n))))));
    }
    return beta;
}

std::vector<LocalElem> exp_coeffs_local(const LFPtr& Lp, const LocalElem& A, const LocalElem& B,
                                        std::int64_t N) {
    const LocalField& L = *Lp;
    std::vector<LocalElem> alpha{L.one()};
    for (std::int64_t n = 1; n <= N; ++n) {
        LocalElem s = L.zero();
        if (!A.known_zero())
            s = L.add(s, L.mul(A, L.frobenius_power(alpha[std::size_t(n - 1)], 1)));
        if (n >= 2) s = L.add(s, L.mul(B, L.frobenius_power(alpha[std::size_t(n - 2)], 2)));
        alpha.push_back(L.div(s, L.embed_poly(bracket(L.base(), int(n)))));
    }
    return alpha;
}

namespace {

struct TailPlan {
    std::int64_t N;  // include coefficients 0..N; all others certified >= M
    Frac tmin;       // lower bound over the included term valuations
};

// Valuation bounds from the coefficient recursions: log-kind
// b_n >= q^n + min(q^{n-1} vA + b_{n-1}, q^{n-2} vB + b_{n-2}); exp-kind
// b_n >= q^n + min(vA + q b_{n-1}, vB + q^2 b_{n-2}).  Terms t_n = b_n +
// q^n v(z) are eventually monotone: for the log kind every step is an
// increase once v(z) clears the thresholds (checked by the caller); for the
// exp kind a window of two terms above M stays above M as soon as q^{n+1}
// beats a fixed threshold.  An absent entry means the coefficient vanishes.
TailPlan plan_truncation(const Rank2Analysis& an, const Frac& vz, const Frac& M, bool log_kind) {
    const std::int64_t q = an.q;
    std::vector<std::optional<Frac>> b{std::optional<Frac>(Frac(0))};
    Frac tmin = vz;
    bool okprev = !(vz < M);
    Frac thr(0);
    if (!log_kind) {
        Frac mb = an.vB + Frac(q) * Frac(q) * M;
        if (an.vA) {
            Frac c1 = *an.vA + Frac(q) * M;
            if (c1 < mb) mb = c1;
        }
        thr = M - mb;
    }
    for (std::int64_t n = 1;; ++n) {
        if (n > 400) throw resource_error("series truncation order exceeds the resource cap");
        Frac qn(pow_i64(q, int(n)));
        std::optional<Frac> best;
        auto feed = [&](const std::optional<Frac>& cv, const std::optional<Frac>& prev, int i) {
            if (!cv || !prev) return;
            Frac cand = log_kind ? Frac(pow_i64(q, int(n - i))) * *cv + *prev
                                 : *cv + Frac(pow_i64(q, i)) * *prev;
            if (!best || cand < *best) best = cand;
        };
        feed(an.vA, b[std::size_t(n - 1)], 1);
        if (n >= 2) feed(an.vB, b[std::size_t(n - 2)], 2);
        std::optional<Frac> bn;
        if (best) bn = qn + *best;
        b.push_back(bn);
        bool ok = true;
        if (bn) {
            Frac tn = *bn + qn * vz;
            if (tn < tmin) tmin = tn;
            ok = !(tn < M);
        }
        if (ok && okprev) {
            if (log_kind) return {n, tmin};
            if (!(Frac(pow_i64(q, int(n + 1))) < thr)) return {n, tmin};
        }
        okprev = ok;
    }
}

LocalElem eval_series_local(const TorsionBasis& bs, const LocalElem& z, bool log_kind) {
    const LocalField& L = *bs.L;
    if (z.known_zero()) return L.zero();
    bool formal = z.vanishes();  // indistinguishable from zero: bound-only result
    Frac vz = formal ? Frac(z.prec, L.e()) : (L.ensure_significant(z), z.valuation());
    if (log_kind && !(vz > bs.an.rho)) {
        if (formal)
            throw precision_error(
                "cannot certify log convergence for a value indistinguishable from zero");
        throw domain_error(
            "logarithm series diverges: valuation not above the convergence threshold");
    }
    std::int64_t spread = formal ? 1 : (z.is_exact() ? L.nprec() : z.significant());
    Frac M = vz + Frac(spread, L.e());
    TailPlan plan = plan_truncation(bs.an, vz, M, log_kind);
    if (formal) {
        Frac cap = plan.tmin < M ? plan.tmin : M;
        return L.o_term(ceil_scaled(cap, L.e()));
    }
    auto coeffs = log_kind ? log_coeffs_local(bs.L, bs.A, bs.B, plan.N)
                           : exp_coeffs_local(bs.L, bs.A, bs.B, plan.N);
    LocalElem acc = L.o_term(ceil_scaled(M, L.e()));
    for (std::int64_t n = 0; n <= plan.N; ++n) {
        const LocalElem& cn = coeffs[std::size_t(n)];
        if (cn.known_zero()) continue;
        acc = L.add(acc, L.mul(cn, L.frobenius_power(z, n)));
    }
    return acc;
}

}  // namespace

LocalElem eval_log_at(const TorsionBasis& b, const LocalElem& z) {
    return eval_series_local(b, z, true);
}

LocalElem eval_exp_at(const TorsionBasis& b, const LocalElem& z) {
    return eval_series_local(b, z, false);
}

PeriodPair periods(const Rank2Spec& spec, std::int64_t nprec) {
    PeriodPair out{torsion_basis(spec, nprec, true), {}, Frac(0), std::nullopt, std::nullopt, ""};
    const TorsionBasis& b = out.basis;
    const LocalField& L = *b.L;
    if (b.an.jcase >= 0) {
        out.lambda1 = L.mul(b.T, eval_log_at(b, b.delta));
        out.v_lambda1 = b.v_delta - Frac(1);
        out.lambda2 = L.mul(b.T, eval_log_at(b, b.zeta));
        out.v_lambda2 = b.v_zeta - Frac(1);
    } else {
        // zeta is the narrow line (delta_low layout): its log always converges
        out.lambda1 = L.mul(b.T, eval_log_at(b, b.zeta));
        out.v_lambda1 = b.v_zeta - Frac(1);
        if (*b.an.vj > Frac(-(b.an.q * b.an.q))) {
            out.lambda2 = L.mul(b.T, eval_log_at(b, b.delta));
            out.v_lambda2 = b.v_delta - Frac(1);
        } else {
            out.lambda2_note =
                "logarithm diverges on the wide torsion line: needs v(j) > -q^2";
        }
    }
    if (!(out.lambda1.valuation() == out.v_lambda1))
        throw domain_error("internal: period valuation mismatch");
    if (out.lambda2 && !(out.lambda2->valuation() == *out.v_lambda2))
        throw domain_error("internal: period valuation mismatch");
    return out;
}

LocalElem eta_series(const TorsionBasis& b) {
    if (b.an.jcase >= 0 || !b.delta_low)
        throw domain_error(
            "closed torsion series needs the two-slope case with the wide-segment delta");
    const LocalField& L = *b.L;
    std::int64_t q = b.an.q;
    LocalElem gamma = L.mul(b.c, L.inv(L.frobenius_power(b.delta, 1)));
    if (!(gamma.valuation() == -(*b.an.vj + Frac(q)) / Frac(q * q - q)))
        throw domain_error("internal: geometric ratio has unexpected valuation");
    return L.mul(b.delta, artin_schreier_solve(gamma));
}

static void require_wide_delta(const TorsionBasis& b) {
    if (b.an.jcase >= 0 || !b.delta_low)
        throw domain_error(
            "the summed-partial series needs the two-slope case with the wide-segment delta");
}

std::vector<LocalElem> frak_a_partial(const TorsionBasis& b, std::int64_t N) {
    require_wide_delta(b);
    const LocalField& L = *b.L;
    auto beta = log_coeffs_local(b.L, b.A, b.B, N);
    std::vector<LocalElem> out;
    LocalElem acc = L.zero();
    for (std::int64_t n = 0; n <= N; ++n) {
        acc = L.add(acc, L.mul(beta[std::size_t(n)], L.frobenius_power(b.delta, n)));
        out.push_back(L.mul(b.T, acc));
    }
    return out;
}

bool frak_a_identity_check(const TorsionBasis& b, std::int64_t N) {
    require_wide_delta(b);
    const LocalField& L = *b.L;
    auto as = frak_a_partial(b, N);
    auto beta = log_coeffs_local(b.L, b.A, b.B, N);
    LocalElem Td = L.mul(b.T, b.delta);
    LocalElem Bd = L.mul(b.B, L.frobenius_power(b.delta, 2));
    for (std::int64_t n = 1; n <= N; ++n) {
        LocalElem rhs = L.sub(L.mul(L.frobenius_power(Td, n), beta[std::size_t(n)]),
                              L.mul(L.frobenius_power(Bd, n - 1), beta[std::size_t(n - 1)]));
        if (!L.eq(as[std::size_t(n)], rhs)) return false;
    }
    return true;
}

FrakConvergence frak_f_convergence(const Rank2Analysis& an) {
    if (an.jcase >= 0) throw domain_error("the summed-partial series needs the two-slope case");
    std::int64_t q = an.q;
    Frac mq2(-(q * q));
    if (*an.vj > mq2) return {Frac(0), false};
    if (*an.vj == mq2) return {Frac(0), true};
    return {-(*an.vj + Frac(q * q)) / Frac(q * q - q), false};
}

LocalElem frak_f_eval(const TorsionBasis& b, const LocalElem& z) {
    require_wide_delta(b);
    const LocalField& L = *b.L;
    if (z.known_zero()) return L.zero();
    L.ensure_significant(z);
    Frac vz = z.valuation();
    FrakConvergence fc = frak_f_convergence(b.an);
    if (!(vz > fc.threshold))
        throw domain_error(
            "summed-partial series diverges: valuation not above its convergence threshold");
    std::int64_t q = b.an.q;
    // v(a_n z^{q^n}) >= v(delta) - 1 + q^n v(z) + min(0, (q^n - 1) slope),
    // nondecreasing in n on the convergent side
    Frac slope = (*b.an.vj + Frac(q * q)) / Frac(q * q - q);
    std::int64_t spread = z.is_exact() ? L.nprec() : z.significant();
    Frac M = b.v_delta - Frac(1) + vz + Frac(spread, L.e());
    std::int64_t N = 0;
    for (;; ++N) {
        if (N > 400) throw resource_error("series truncation order exceeds the resource cap");
        Frac qn(pow_i64(q, int(N)));
        Frac tn = b.v_delta - Frac(1) + qn * vz;
        if (slope < Frac(0)) tn = tn + (qn - Frac(1)) * slope;
        if (!(tn < M)) break;
    }
    auto as = frak_a_partial(b, N == 0 ? 0 : N - 1);
    LocalElem acc = L.o_term(ceil_scaled(M, L.e()));
    for (std::int64_t n = 0; n < N; ++n)
        acc = L.add(acc, L.mul(as[std::size_t(n)], L.frobenius_power(z, n)));
    return acc;
}

LocalElem frak_f_period(const TorsionBasis& b) {
    require_wide_delta(b);
    const LocalField& L = *b.L;
    return frak_f_eval(b, L.mul(b.c, L.inv(L.frobenius_power(b.delta, 1))));
}

}  // namespace drinfeld
