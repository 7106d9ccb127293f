#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "drinfeld/errors.hpp"

namespace drinfeld {

// Element of a finite field F_{p^k}, stored as the packed index
// sum c_i * p^i of its power-basis coordinates (c_0, ..., c_{k-1}).
// Index order on elements is the canonical total order used for
// deterministic tie-breaking everywhere in the library.
using FqElem = std::uint32_t;

// F_{p^k} with an explicit monic irreducible modulus over F_p.  Elements are
// packed indices; multiplication runs on log/antilog tables built from a
// fixed primitive generator (the smallest one in index order).
class Fq {
public:
    // modulus: coefficients c_0..c_k over F_p, ascending, monic; empty means
    // "use the default modulus", the first irreducible in index order.
    static std::shared_ptr<const Fq> make(std::uint32_t p, std::uint32_t k,
                                          std::vector<std::uint32_t> modulus = {});

    std::uint32_t p() const { return p_; }
    std::uint32_t k() const { return k_; }
    std::int64_t size() const { return q_; }  // p^k
    const std::vector<std::uint32_t>& modulus() const { return mod_; }
    FqElem generator() const { return gen_; }

    FqElem zero() const { return 0; }
    FqElem one() const { return 1; }
    FqElem from_int(std::int64_t c) const {  // prime-field scalar
        std::int64_t r = c % std::int64_t(p_);
        if (r < 0) r += p_;
        return FqElem(r);
    }

    FqElem add(FqElem a, FqElem b) const {
        if (k_ == 1) {
            std::uint32_t s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        if (p_ == 2) return a ^ b;
        return add_slow(a, b);
    }
    FqElem neg(FqElem a) const {
        if (k_ == 1) return a == 0 ? 0 : p_ - a;
        if (p_ == 2) return a;
        return neg_slow(a);
    }
    FqElem sub(FqElem a, FqElem b) const { return add(a, neg(b)); }
    FqElem mul(FqElem a, FqElem b) const {
        if (a == 0 || b == 0) return 0;
        std::int64_t s = dlog_[a] + dlog_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }
    FqElem inv(FqElem a) const {
        if (a == 0) throw domain_error("inverse of zero in finite field");
        return exp_[(q_ - 1 - dlog_[a]) % (q_ - 1)];
    }
    FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }

    // a^e for natural e; 0^0 = 1.
    FqElem pow(FqElem a, const mpz_class& e) const;
    FqElem pow_i64(FqElem a, std::int64_t e) const;

    // a^{p^j}: the j-th power of the absolute Frobenius (order k on this field).
    FqElem frob_p(FqElem a, std::int64_t j) const {
        if (a == 0 || a == 1 || q_ == 2) return a;
        std::int64_t ord = q_ - 1, e = 1;
        for (std::int64_t t = 0, jr = j % k_; t < jr; ++t) e = (e * p_) % ord;
        return exp_[std::size_t((dlog_[a] * e) % ord)];
    }

    // Discrete log base the fixed generator; a must be nonzero.
    std::int64_t dlog(FqElem a) const {
        if (a == 0) throw domain_error("discrete log of zero");
        return dlog_[a];
    }

    std::vector<std::uint32_t> digits(FqElem a) const;
    FqElem from_digits(const std::vector<std::uint32_t>& d) const;

    // Smallest root (index order) of a monic polynomial with F_p
    // coefficients, if one exists in this field.
    std::optional<FqElem> root_of_prime_poly(const std::vector<std::uint32_t>& poly) const;

    // Embedding of a subfield element: sub must have the same p and sub.k | k.
    // root is a root of sub.modulus() in this field (from subfield_root).
    FqElem subfield_root(const Fq& sub) const;
    FqElem embed_from(const Fq& sub, FqElem x, FqElem root) const;

    // All roots in this field of x^{q0} - x = rhs... solved by enumeration:
    // returns the smallest x with x^n == rhs when solve_power, used by root
    // searches; kept generic: smallest solution of x^n = rhs, n >= 1.
    std::optional<FqElem> nth_root(FqElem rhs, const mpz_class& n) const;

    bool same_field(const Fq& other) const {
        return p_ == other.p_ && k_ == other.k_ && mod_ == other.mod_;
    }

private:
    Fq() = default;
    FqElem add_slow(FqElem a, FqElem b) const;
    FqElem neg_slow(FqElem a) const;

    std::uint32_t p_ = 0, k_ = 0;
    std::int64_t q_ = 0;
    std::vector<std::uint32_t> mod_;
    FqElem gen_ = 0;
    std::vector<FqElem> exp_;          // exp_[i] = gen^i, i in [0, q-1)
    std::vector<std::int64_t> dlog_;   // inverse of exp_, dlog_[0] unused
};

using FqPtr = std::shared_ptr<const Fq>;

// Field of q = p^k elements with the default modulus.
FqPtr make_field(std::uint32_t p, std::uint32_t k);

}  // namespace drinfeld
