#pragma once

#include <limits>
#include <map>
#include <memory>
#include <optional>

#include "drinfeld/factored.hpp"
#include "drinfeld/ratfunc.hpp"

namespace drinfeld {

class LocalField;
using LFPtr = std::shared_ptr<const LocalField>;

// Truncated Laurent series sum c_i u^i over the residue field, where u^e = 1/T,
// so v(u) = 1/e and u-exponent i carries valuation i/e.  `prec` is a certified
// bound: terms with exponent >= prec are unknown.  EXACT marks elements whose
// support is complete (no unknown tail).  An element with empty support and
// finite precision is "indistinguishable from zero at that precision" -- a
// legitimate state (e.g. a converged residual), distinct from exact zero.
struct LocalElem {
    LFPtr field;
    std::map<std::int64_t, FqElem> supp;  // exponent -> nonzero residue coeff
    std::int64_t prec = 0;

    static constexpr std::int64_t EXACT = std::numeric_limits<std::int64_t>::max() / 4;

    bool is_exact() const { return prec >= EXACT; }
    bool known_zero() const { return supp.empty() && is_exact(); }
    bool vanishes() const { return supp.empty(); }  // zero to working precision

    // Lower bound for the u-exponent of the true value; EXACT for exact zero.
    std::int64_t lo() const { return supp.empty() ? prec : supp.begin()->first; }

    // Exact valuation; requires a visibly nonzero element.
    Frac valuation() const;

    // Number of certified u-digits past the leading one.
    std::int64_t significant() const { return supp.empty() ? 0 : prec - supp.begin()->first; }

    std::string str() const;
};

// Tame totally ramified extension of F_q((1/T)) with residue field F_{q^m} and
// uniformizer u, u^e = 1/T.  Residue arithmetic runs in one flattened field
// F_{p^{k m}} that stores an embedding of the base F_{p^k}.
class LocalField : public std::enable_shared_from_this<LocalField> {
public:
    static LFPtr make(FqPtr base, std::int64_t e, std::int64_t m, std::int64_t nprec = 200);

    const FqPtr& base() const { return base_; }       // F_q, q = p^k
    const FqPtr& residue() const { return res_; }     // F_{q^m}
    std::int64_t e() const { return e_; }
    std::int64_t m() const { return m_; }
    std::int64_t nprec() const { return nprec_; }
    std::int64_t q() const { return base_->size(); }

    FqElem embed_base(FqElem c) const;  // F_q -> F_{q^m}

    LocalElem zero() const;                        // exact
    LocalElem monomial(FqElem c, std::int64_t i) const;  // exact c u^i, c in residue field
    LocalElem from_residue(FqElem c) const { return monomial(c, 0); }
    LocalElem uniformizer() const { return monomial(res_->one(), 1); }
    LocalElem one() const { return from_residue(res_->one()); }
    LocalElem o_term(std::int64_t p) const;  // empty support, precision p

    // Laurent expansion of x at T = infinity, truncated at u-precision n.
    // Polynomials in T and monomial denominators embed exactly.
    LocalElem embed(const RatFunc& x, std::int64_t n) const;
    LocalElem embed(const RatFunc& x) const { return embed(x, nprec_); }
    LocalElem embed_poly(const PolyT& f) const;  // exact

    LocalElem add(const LocalElem& a, const LocalElem& b) const;
    LocalElem sub(const LocalElem& a, const LocalElem& b) const;
    LocalElem neg(const LocalElem& a) const;
    LocalElem mul(const LocalElem& a, const LocalElem& b) const;
    LocalElem mul_residue(const LocalElem& a, FqElem c) const;
    LocalElem shift(const LocalElem& a, std::int64_t i) const;  // times u^i

    // Reciprocal and quotient guard their inputs: fewer than `min_digits`
    // certified significant digits raises precision_error rather than
    // returning noise.  Inverting an exact element truncates its (generally
    // infinite) expansion to nprec significant digits.
    LocalElem inv(const LocalElem& a) const;
    LocalElem div(const LocalElem& a, const LocalElem& b) const { return mul(a, inv(b)); }

    LocalElem frobenius_power(const LocalElem& a, std::int64_t j) const;  // a^{q^j}
    LocalElem pow_nat(const LocalElem& a, const mpz_class& n) const;

    LocalElem truncate(const LocalElem& a, std::int64_t p) const;

    // Equality of all digits up to the common precision.
    bool eq(const LocalElem& a, const LocalElem& b) const;

    static constexpr std::int64_t min_digits = 10;
    void ensure_significant(const LocalElem& a) const;

private:
    LocalField() = default;
    FqPtr base_, res_;
    std::int64_t e_ = 1, m_ = 1, nprec_ = 200;
    FqElem base_root_ = 0;  // root of base modulus inside res_
};

// Factored fractions embed factorwise: the numerator exactly, every
// denominator factor by powered inversion at working precision.
LocalElem embed_factored(const LFPtr& lf, const FactoredFrac& x);

// ---- Newton polygons ----

struct NewtonSegment {
    Frac slope;
    std::int64_t width = 0;  // horizontal length
};

// Lower convex hull of (exponent, valuation) points; slopes strictly increase.
struct NewtonPolygon {
    std::vector<std::pair<std::int64_t, Frac>> vertices;
    std::vector<NewtonSegment> segments;
};

// Input: exponent with the coefficient's valuation, or nullopt for a zero
// coefficient.  At least two finite points required.
NewtonPolygon newton_polygon(const std::vector<std::pair<std::int64_t, std::optional<Frac>>>& pts);

// ---- root finding over a local field ----

// Newton iteration on f given by ascending coefficients f[0..d].  Requires the
// classical condition v(f(x0)) > 2 v(f'(x0)); the residual valuation must rise
// strictly every step until f(x) is indistinguishable from zero.
LocalElem hensel_root(const std::vector<LocalElem>& f, const LocalElem& x0);

// Solves X^q - X = gamma by X = -(gamma + gamma^q + gamma^{q^2} + ...);
// requires v(gamma) > 0.  The full solution set is X + F_q.
LocalElem artin_schreier_solve(const LocalElem& gamma);

// y with y^n = x for gcd(n, p) = 1: requires n | e*v(x) in u-units (else
// enlarge_ramification_error) and an n-th root of the leading residue
// coefficient (else enlarge_residue_error), so drivers can rebuild the field
// and retry.  Leading coefficient root chosen canonically (smallest).
LocalElem nth_root_local(const LocalElem& x, std::int64_t n);

inline LocalElem root_qminus1(const LocalElem& x) {
    return nth_root_local(x, x.field->q() - 1);
}

// Square root; in characteristic 2 computed digitwise (odd exponents would
// need wild ramification and are refused).
LocalElem sqrt_local(const LocalElem& x);

}  // namespace drinfeld
