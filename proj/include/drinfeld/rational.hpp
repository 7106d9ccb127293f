#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "drinfeld/errors.hpp"

namespace drinfeld {

// Exact rational with 64-bit numerator/denominator, always normalized
// (gcd 1, denominator > 0).  Used for valuations, slopes and exponent
// bookkeeping; magnitudes stay tiny so 128-bit intermediates suffice.
class Frac {
public:
    Frac() : num_(0), den_(1) {}
    Frac(std::int64_t n) : num_(n), den_(1) {}
    Frac(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }

    friend Frac operator+(const Frac& a, const Frac& b) {
        return make(__int128(a.num_) * b.den_ + __int128(b.num_) * a.den_,
                    __int128(a.den_) * b.den_);
    }
    friend Frac operator-(const Frac& a, const Frac& b) {
        return make(__int128(a.num_) * b.den_ - __int128(b.num_) * a.den_,
                    __int128(a.den_) * b.den_);
    }
    friend Frac operator*(const Frac& a, const Frac& b) {
        return make(__int128(a.num_) * b.num_, __int128(a.den_) * b.den_);
    }
    friend Frac operator/(const Frac& a, const Frac& b) {
        if (b.num_ == 0) throw domain_error("rational division by zero");
        return make(__int128(a.num_) * b.den_, __int128(a.den_) * b.num_);
    }
    Frac operator-() const {
        Frac r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend bool operator==(const Frac& a, const Frac& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }
    friend bool operator<(const Frac& a, const Frac& b) {
        return __int128(a.num_) * b.den_ < __int128(b.num_) * a.den_;
    }
    friend bool operator<=(const Frac& a, const Frac& b) { return a < b || a == b; }
    friend bool operator>(const Frac& a, const Frac& b) { return b < a; }
    friend bool operator>=(const Frac& a, const Frac& b) { return b <= a; }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    static Frac make(__int128 n, __int128 d) {
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX || d < INT64_MIN)
            throw resource_error("rational overflow");
        return Frac(std::int64_t(n), std::int64_t(d));
    }

    void normalize() {
        if (den_ == 0) throw domain_error("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_;
    std::int64_t den_;
};

// q^n as a checked 64-bit integer; n must be small enough for the cap.
inline std::int64_t pow_i64(std::int64_t q, int n) {
    std::int64_t r = 1;
    for (int i = 0; i < n; ++i) r = checked_mul_exp(r, q);
    return r;
}

}  // namespace drinfeld
