#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "drinfeld/localfield.hpp"
#include "drinfeld/quad.hpp"
#include "drinfeld/skew.hpp"

namespace drinfeld {

// Valuation data of a rank-2 module phi_T = T + A tau + B tau^2 at the
// infinite place, organized around v(j) for j = A^{q+1}/B.  An absent vA
// means A = 0 (so j = 0, which counts as the large-j side).  jcase is the
// sign of v(j) + q: +1 when v(j) > -q (one Newton slope), 0 on the boundary,
// -1 when v(j) < -q (two slopes).  rho is the convergence threshold of the
// logarithm: log_phi(z) converges exactly for v(z) > rho.
struct Rank2Analysis {
    std::int64_t q = 0;
    std::optional<Frac> vA;
    Frac vB;
    std::optional<Frac> vj;    // (q+1) vA - vB; absent for A = 0
    std::optional<Frac> rhoA;  // -(q + vA)/(q - 1)
    Frac rhoB;                 // -(q^2 + vB)/(q^2 - 1)
    Frac rho;                  // max of the two thresholds
    int jcase = 0;
};

Rank2Analysis rank2_analyze(std::int64_t q, std::optional<Frac> vA, Frac vB);

// Exact valuation of the n-th logarithm coefficient beta_n, by case.  An
// absent value means beta_n = 0 (odd coefficients when A = 0).  On the
// boundary v(j) = -q only the lower bound is certified (it is attained
// infinitely often but not necessarily at each n), flagged by bound_only.
struct BetaValuation {
    std::optional<Frac> value;
    bool bound_only = false;
};

BetaValuation beta_valuation(std::int64_t n, const Rank2Analysis& an);

// A rank-2 module together with exact coefficient valuations and embedding
// callbacks, detached from the coefficient domain it came from.  The
// callbacks place A and B into whichever local field the torsion machinery
// ends up building.
struct Rank2Spec {
    FqPtr F;
    std::optional<Frac> vA;
    Frac vB;
    std::function<LocalElem(const LFPtr&)> embedA, embedB;
    // extra ramification the embeddings themselves need (e.g. 2 when the
    // coefficients involve a square root of an odd-degree polynomial)
    std::int64_t e_needed = 1;
};

Rank2Spec rank2_spec(const DrinfeldModule<KDomain>& m);
Rank2Spec rank2_spec(const DrinfeldModule<QuadDomain>& m);

// Basis of the T-torsion of phi inside a ramified series field: delta and
// zeta span the kernel of phi_T over F_q.  In the one-slope case both have
// valuation -(1+vB)/(q^2-1).  In the two-slope case the kernel splits into a
// narrow line of valuation -(1+vA)/(q-1) and a wide part of valuation
// (vA-vB)/(q^2-q); delta_low selects which of the two delta names.  c is the
// structure constant delta^{-1} (T/B)^{1/(q-1)} with the canonical root
// choice.
struct TorsionBasis {
    LFPtr L;
    LocalElem T, A, B;  // phi_T coefficients placed in L (A may be exact 0)
    Rank2Analysis an;
    LocalElem delta, zeta, c;
    Frac v_delta, v_zeta;
    bool delta_low = false;
};

// Builds the smallest tame field (e from the valuations involved, residue
// degree found by scanning) containing the torsion, then computes the basis.
// Wildly ramified cases (p divides the required e) are refused.
TorsionBasis torsion_basis(const Rank2Spec& spec, std::int64_t nprec = 200,
                           bool delta_low = true);

// B x^{q^2} + A x^q + T x, evaluated q-linearly.
LocalElem torsion_map(const TorsionBasis& b, const LocalElem& x);

// Coefficients (ascending in x) of B prod_{w} (x - w) over the full kernel
// span {a delta + b zeta}; equals T x + A x^q + B x^{q^2}.
std::vector<LocalElem> torsion_product_coeffs(const TorsionBasis& b);

// Logarithm/exponential coefficients computed directly in L by the bracket
// recursions beta_n = -(A^{q^{n-1}} beta_{n-1} + B^{q^{n-2}} beta_{n-2})/[n]
// and alpha_n = (A alpha_{n-1}^q + B alpha_{n-2}^{q^2})/[n]; index 0..N.
std::vector<LocalElem> log_coeffs_local(const LFPtr& L, const LocalElem& A,
                                        const LocalElem& B, std::int64_t N);
std::vector<LocalElem> exp_coeffs_local(const LFPtr& L, const LocalElem& A,
                                        const LocalElem& B, std::int64_t N);

// Series evaluation with certified truncation: the reported precision caps
// the contribution of every omitted term by an exact valuation bound from
// the coefficient recursion.  eval_log_at refuses v(z) <= rho (the series
// diverges there); eval_exp_at converges everywhere.
LocalElem eval_log_at(const TorsionBasis& b, const LocalElem& z);
LocalElem eval_exp_at(const TorsionBasis& b, const LocalElem& z);

// Period lattice generators lambda = T log_phi(w) for torsion w.  lambda1
// always exists and has maximal valuation among nonzero periods.  lambda2
// exists unless the log diverges on the wide torsion line, which happens
// exactly when v(j) <= -q^2; then lambda2_note names the obstruction.
struct PeriodPair {
    TorsionBasis basis;
    LocalElem lambda1;
    Frac v_lambda1;
    std::optional<LocalElem> lambda2;
    std::optional<Frac> v_lambda2;
    std::string lambda2_note;
};

PeriodPair periods(const Rank2Spec& spec, std::int64_t nprec = 200);

// Two-slope case with delta on the wide segment: the narrow-line generator
// as the closed geometric series delta * X, X = -sum_{i>=0} (c/delta^q)^{q^i}.
// Independent of the Newton lift of zeta, so their agreement is a real check.
LocalElem eta_series(const TorsionBasis& b);

// Partial sums a_n = T sum_{j<=n} beta_j delta^{q^j} (two-slope, wide delta);
// returns a_0..a_N.
std::vector<LocalElem> frak_a_partial(const TorsionBasis& b, std::int64_t N);

// a_n = (T delta)^{q^n} beta_n - (B delta^{q^2})^{q^{n-1}} beta_{n-1} for
// n = 1..N, checked to working precision.
bool frak_a_identity_check(const TorsionBasis& b, std::int64_t N);

// f(z) = sum_n a_n z^{q^n}; converges for v(z) above a threshold depending
// on v(j) (bound_only on the boundary v(j) = -q^2).
struct FrakConvergence {
    Frac threshold;
    bool bound_only = false;
};

FrakConvergence frak_f_convergence(const Rank2Analysis& an);

LocalElem frak_f_eval(const TorsionBasis& b, const LocalElem& z);

// f evaluated at z = delta^{-q} c: a period of maximal valuation
// -(q + vA)/(q - 1), reached through the partial sums a_n only (the
// two-logarithm form of f is not valid at this z).
LocalElem frak_f_period(const TorsionBasis& b);

}  // namespace drinfeld
