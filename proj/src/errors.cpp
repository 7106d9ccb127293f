#include "drinfeld/errors.hpp"

#include <cstdlib>
#include <mutex>

namespace drinfeld {

namespace {

std::int64_t env_int(const char* name, std::int64_t fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    char* end = nullptr;
    long long parsed = std::strtoll(v, &end, 10);
    if (end == v || *end != '\0' || parsed <= 0) return fallback;
    return parsed;
}

ResourceLimits load_limits() {
    ResourceLimits l;
    l.max_terms = env_int("DRINFELD_MAX_TERMS", l.max_terms);
    l.max_exponent_bits = int(env_int("DRINFELD_MAX_EXPONENT_BITS", l.max_exponent_bits));
    if (l.max_exponent_bits > 62) l.max_exponent_bits = 62;
    l.max_field_size = env_int("DRINFELD_MAX_FIELD_SIZE", l.max_field_size);
    l.max_enumeration = env_int("DRINFELD_MAX_ENUMERATION", l.max_enumeration);
    return l;
}

}  // namespace

const ResourceLimits& ResourceLimits::current() {
    static ResourceLimits limits = load_limits();
    return limits;
}

std::int64_t checked_add_exp(std::int64_t a, std::int64_t b) {
    std::int64_t r = a + b;
    if (r > ResourceLimits::current().max_exponent() || r < -ResourceLimits::current().max_exponent())
        throw resource_error("exponent exceeds configured cap");
    return r;
}

std::int64_t checked_mul_exp(std::int64_t a, std::int64_t b) {
    __int128 r = __int128(a) * b;
    const std::int64_t cap = ResourceLimits::current().max_exponent();
    if (r > cap || r < -__int128(cap)) throw resource_error("exponent exceeds configured cap");
    return std::int64_t(r);
}

}  // namespace drinfeld
