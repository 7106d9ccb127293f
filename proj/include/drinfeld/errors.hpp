#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace drinfeld {

// Error taxonomy used across the library.  domain_error: mathematically
// invalid input or an operation outside the supported method scope.
// usage_error: malformed request (CLI / parsing).  resource_error: a
// configured cap was hit or precision ran out; the computation itself was
// well-posed.  Each maps to a distinct process exit code in the CLI.

class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Requested result exists mathematically but lies outside what the
// implemented algorithms can produce (e.g. a divergent series would be
// needed).  The message names the violated condition.
class method_scope_error : public domain_error {
public:
    explicit method_scope_error(const std::string& what) : domain_error(what) {}
};

// The requested element lives in a bigger local field: retry with a larger
// ramification index e (resp. residue degree m).  Thrown by root extraction
// and caught by drivers that rebuild the field and try again.
class enlarge_ramification_error : public domain_error {
public:
    using domain_error::domain_error;
};

class enlarge_residue_error : public domain_error {
public:
    using domain_error::domain_error;
};

class usage_error : public std::runtime_error {
public:
    explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Truncated-series arithmetic fell below the minimum number of significant
// digits, or a result is indistinguishable from zero where a value is needed.
class precision_error : public resource_error {
public:
    explicit precision_error(const std::string& what) : resource_error(what) {}
};

// Global caps that turn runaway computations into clean failures.  Values can
// be overridden through the environment (DRINFELD_MAX_TERMS,
// DRINFELD_MAX_EXPONENT_BITS, DRINFELD_MAX_FIELD_SIZE).
struct ResourceLimits {
    std::int64_t max_terms = 1 << 23;        // stored terms per polynomial/series
    int max_exponent_bits = 50;              // bit length of any monomial exponent
    std::int64_t max_field_size = 1 << 21;   // enumerable finite-field size
    std::int64_t max_enumeration = 1 << 25;  // combinatorial enumeration steps

    std::int64_t max_exponent() const { return std::int64_t(1) << max_exponent_bits; }

    static const ResourceLimits& current();
};

// Checked exponent arithmetic: results must stay under the configured cap.
std::int64_t checked_add_exp(std::int64_t a, std::int64_t b);
std::int64_t checked_mul_exp(std::int64_t a, std::int64_t b);

}  // namespace drinfeld
