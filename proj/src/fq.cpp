#include "drinfeld/fq.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace drinfeld {

namespace {

// Dense polynomial arithmetic over F_p used only while constructing fields.
using PVec = std::vector<std::uint32_t>;

void ptrim(PVec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PVec pmulmod(const PVec& a, const PVec& b, const PVec& mod, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    PVec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + std::uint64_t(a[i]) * b[j]) % p;
    }
    // mod is monic of degree d: reduce from the top.
    std::size_t d = mod.size() - 1;
    for (std::size_t i = r.size(); i-- > d;) {
        std::uint32_t c = r[i];
        if (!c) continue;
        r[i] = 0;
        for (std::size_t j = 0; j < d; ++j) {
            std::uint64_t t = std::uint64_t(c) * mod[j] % p;
            r[i - d + j] = std::uint32_t((r[i - d + j] + p - t) % p);
        }
    }
    r.resize(d);
    ptrim(r);
    return r;
}

PVec ppowmod(PVec base, mpz_class e, const PVec& mod, std::uint32_t p) {
    PVec r = {1};
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = pmulmod(r, base, mod, p);
        base = pmulmod(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

PVec pgcd(PVec a, PVec b, std::uint32_t p) {
    auto inv_mod_p = [p](std::uint32_t x) {
        std::uint32_t r = 1;
        for (std::uint32_t e = p - 2; e; e >>= 1) {
            if (e & 1) r = std::uint32_t(std::uint64_t(r) * x % p);
            x = std::uint32_t(std::uint64_t(x) * x % p);
        }
        return r;
    };
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        // a mod b
        std::uint32_t lb = inv_mod_p(b.back());
        while (a.size() >= b.size()) {
            std::uint32_t c = std::uint32_t(std::uint64_t(a.back()) * lb % p);
            if (c) {
                std::size_t off = a.size() - b.size();
                for (std::size_t j = 0; j < b.size(); ++j) {
                    std::uint64_t t = std::uint64_t(c) * b[j] % p;
                    a[off + j] = std::uint32_t((a[off + j] + p - t) % p);
                }
            }
            a.pop_back();
            ptrim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

bool is_irreducible_fp(const PVec& f, std::uint32_t p) {
    std::size_t k = f.size() - 1;
    if (k == 0) return false;
    if (k == 1) return true;
    // x^{p^k} == x mod f, and gcd(x^{p^{k/t}} - x, f) == 1 for prime t | k.
    PVec x = {0, 1};
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(k));
    PVec xp = ppowmod(x, pk, f, p);
    ptrim(xp);
    PVec xv = x;
    if (xp != xv) return false;
    std::size_t kk = k;
    for (std::size_t t = 2; t <= kk; ++t) {
        if (kk % t) continue;
        while (kk % t == 0) kk /= t;
        mpz_class e;
        mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(k / t));
        PVec g = ppowmod(x, e, f, p);
        // g - x
        if (g.size() < 2) g.resize(2, 0);
        g[1] = (g[1] + p - 1) % p;
        ptrim(g);
        PVec d = pgcd(g, f, p);
        if (d.size() != 1) return false;
    }
    return true;
}

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; std::uint64_t(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> f;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            f.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) f.push_back(n);
    return f;
}

struct FqKey {
    std::uint32_t p, k;
    std::vector<std::uint32_t> mod;
    bool operator<(const FqKey& o) const {
        if (p != o.p) return p < o.p;
        if (k != o.k) return k < o.k;
        return mod < o.mod;
    }
};

}  // namespace

std::shared_ptr<const Fq> Fq::make(std::uint32_t p, std::uint32_t k,
                                   std::vector<std::uint32_t> modulus) {
    static std::map<FqKey, std::shared_ptr<const Fq>> cache;
    static std::mutex cache_mu;

    if (!is_prime_u32(p)) throw domain_error("field characteristic must be prime");
    if (k < 1) throw domain_error("field degree must be positive");
    double bits = k * std::log2(double(p));
    if (bits > 62) throw resource_error("finite field too large");
    std::int64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) q *= p;
    if (q > ResourceLimits::current().max_field_size)
        throw resource_error("finite field exceeds configured size cap");

    if (modulus.empty()) {
        if (k == 1) {
            modulus = {0, 1};  // formal x - 0; unused for k = 1
        } else {
            // First monic irreducible of degree k in index order of the
            // lower-coefficient tuple.
            std::int64_t count = q;  // p^k candidates
            PVec f(k + 1, 0);
            f[k] = 1;
            bool found = false;
            for (std::int64_t idx = 0; idx < count; ++idx) {
                std::int64_t v = idx;
                for (std::uint32_t i = 0; i < k; ++i) {
                    f[i] = std::uint32_t(v % p);
                    v /= p;
                }
                if (is_irreducible_fp(f, p)) {
                    modulus.assign(f.begin(), f.end());
                    found = true;
                    break;
                }
            }
            if (!found) throw domain_error("no irreducible modulus found");
        }
    } else {
        if (modulus.size() != k + 1 || modulus.back() != 1)
            throw domain_error("modulus must be monic of the declared degree");
        for (auto c : modulus)
            if (c >= p) throw domain_error("modulus coefficient out of range");
        if (k > 1 && !is_irreducible_fp(modulus, p))
            throw domain_error("modulus is not irreducible");
    }

    FqKey key{p, k, modulus};
    {
        std::lock_guard<std::mutex> lock(cache_mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    auto F = std::shared_ptr<Fq>(new Fq());
    F->p_ = p;
    F->k_ = k;
    F->q_ = q;
    F->mod_ = modulus;

    // Generic multiply on packed indices, used to bootstrap the tables.
    auto unpack = [&](FqElem a) {
        PVec d(k, 0);
        for (std::uint32_t i = 0; i < k; ++i) {
            d[i] = std::uint32_t(a % p);
            a /= p;
        }
        ptrim(d);
        return d;
    };
    auto pack = [&](const PVec& d) {
        std::int64_t v = 0;
        for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
        return FqElem(v);
    };
    auto gmul = [&](FqElem a, FqElem b) {
        return pack(pmulmod(unpack(a), unpack(b), F->mod_, p));
    };

    // Smallest primitive element in index order.
    auto factors = prime_factors(q - 1);
    FqElem gen = 0;
    for (std::int64_t cand = (k == 1 ? 2 % q : p); cand < q; ++cand) {
        if (cand == 0 || cand == 1) continue;
        bool primitive = true;
        for (auto ell : factors) {
            // cand^{(q-1)/ell} == 1 ?
            std::int64_t e = (q - 1) / ell;
            FqElem r = 1, b = FqElem(cand);
            while (e) {
                if (e & 1) r = gmul(r, b);
                b = gmul(b, b);
                e >>= 1;
            }
            if (r == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            gen = FqElem(cand);
            break;
        }
    }
    if (gen == 0 && q > 2) throw domain_error("no primitive element found");
    if (q == 2) gen = 1;
    F->gen_ = gen;

    F->exp_.resize(std::size_t(q - 1));
    F->dlog_.assign(std::size_t(q), 0);
    FqElem cur = 1;
    for (std::int64_t i = 0; i < q - 1; ++i) {
        F->exp_[std::size_t(i)] = cur;
        F->dlog_[cur] = i;
        cur = gmul(cur, gen);
    }
    if (cur != 1) throw domain_error("generator order mismatch");

    std::shared_ptr<const Fq> result = F;
    std::lock_guard<std::mutex> lock(cache_mu);
    auto [it, inserted] = cache.emplace(key, result);
    return it->second;
}

FqPtr make_field(std::uint32_t p, std::uint32_t k) { return Fq::make(p, k); }

FqElem Fq::add_slow(FqElem a, FqElem b) const {
    FqElem r = 0;
    std::uint32_t mult = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        std::uint32_t da = a % p_, db = b % p_;
        a /= p_;
        b /= p_;
        std::uint32_t s = da + db;
        if (s >= p_) s -= p_;
        r += s * mult;
        mult *= p_;
    }
    return r;
}

FqElem Fq::neg_slow(FqElem a) const {
    FqElem r = 0;
    std::uint32_t mult = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        std::uint32_t da = a % p_;
        a /= p_;
        r += (da == 0 ? 0 : p_ - da) * mult;
        mult *= p_;
    }
    return r;
}

FqElem Fq::pow(FqElem a, const mpz_class& e) const {
    if (e < 0) throw domain_error("negative exponent in field power");
    if (a == 0) return e == 0 ? 1 : 0;
    mpz_class r = e % (q_ - 1);
    return exp_[std::size_t(mpz_class(dlog_[a] * r % (q_ - 1)).get_si())];
}

FqElem Fq::pow_i64(FqElem a, std::int64_t e) const {
    if (e < 0) throw domain_error("negative exponent in field power");
    if (a == 0) return e == 0 ? 1 : 0;
    __int128 r = __int128(dlog_[a]) * (e % (q_ - 1)) % (q_ - 1);
    return exp_[std::size_t(std::int64_t(r))];
}

std::vector<std::uint32_t> Fq::digits(FqElem a) const {
    std::vector<std::uint32_t> d(k_, 0);
    for (std::uint32_t i = 0; i < k_; ++i) {
        d[i] = a % p_;
        a /= p_;
    }
    return d;
}

FqElem Fq::from_digits(const std::vector<std::uint32_t>& d) const {
    if (d.size() > k_) throw domain_error("digit vector longer than field degree");
    std::int64_t v = 0;
    for (std::size_t i = d.size(); i-- > 0;) {
        if (d[i] >= p_) throw domain_error("digit out of range");
        v = v * p_ + d[i];
    }
    return FqElem(v);
}

std::optional<FqElem> Fq::root_of_prime_poly(const std::vector<std::uint32_t>& poly) const {
    if (poly.empty()) throw domain_error("root search needs a nonzero polynomial");
    for (std::int64_t x = 0; x < q_; ++x) {
        FqElem acc = 0;
        for (std::size_t i = poly.size(); i-- > 0;) {
            acc = add(mul(acc, FqElem(x)), from_int(poly[i]));
        }
        if (acc == 0) return FqElem(x);
    }
    return std::nullopt;
}

FqElem Fq::subfield_root(const Fq& sub) const {
    if (sub.p_ != p_ || k_ % sub.k_ != 0)
        throw domain_error("not a subfield");
    if (sub.k_ == 1) return 0;  // prime field embeds by scalar index
    auto r = root_of_prime_poly(sub.mod_);
    if (!r) throw domain_error("subfield modulus has no root in extension");
    return *r;
}

FqElem Fq::embed_from(const Fq& sub, FqElem x, FqElem root) const {
    if (sub.p_ != p_) throw domain_error("embedding across characteristics");
    auto d = sub.digits(x);
    FqElem acc = 0;
    for (std::size_t i = d.size(); i-- > 0;) acc = add(mul(acc, root), from_int(d[i]));
    return acc;
}

std::optional<FqElem> Fq::nth_root(FqElem rhs, const mpz_class& n) const {
    if (n <= 0) throw domain_error("root index must be positive");
    if (rhs == 0) return FqElem(0);
    mpz_class g = gcd(n, mpz_class(q_ - 1));
    mpz_class t = mpz_class(dlog_[rhs]);
    if (t % g != 0) return std::nullopt;
    // Solve n*s == t (mod q-1); smallest solution gives the smallest power of
    // the generator, then scan the g candidates for the index-smallest root.
    mpz_class n1 = n / g, t1 = t / g, m1 = mpz_class(q_ - 1) / g;
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), n1.get_mpz_t(), m1.get_mpz_t()) == 0) return std::nullopt;
    mpz_class s0 = (t1 * inv) % m1;
    FqElem best = 0;
    bool have = false;
    for (mpz_class i = 0; i < g; ++i) {
        mpz_class s = (s0 + i * m1) % (q_ - 1);
        FqElem cand = exp_[std::size_t(s.get_si())];
        if (!have || cand < best) {
            best = cand;
            have = true;
        }
    }
    return best;
}

}  // namespace drinfeld
