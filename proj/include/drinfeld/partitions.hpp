#pragma once

#include <vector>

#include <gmpxx.h>

#include "drinfeld/errors.hpp"

namespace drinfeld {

// An r-tuple of subsets (S_1, ..., S_r) of {0..n-1} whose shifted copies
// S_i + j (0 <= j < i) tile {0..n-1}.  Each valid tuple is determined by the
// union of its classes; the union's successive gaps (and the distance from
// its maximum to n) are the class labels.
struct ShadowedPartition {
    int r = 0;
    int n = 0;
    std::vector<std::vector<int>> classes;  // classes[i] = S_{i+1}, ascending

    std::vector<int> union_set() const;
    std::size_t element_count() const;  // |S_1| + ... + |S_r|

    // Independent tiling check: every shift lands inside {0..n-1} and the
    // shifts cover each point exactly once.
    bool is_valid() const;
};

// All partitions for the given rank and size, ordered by the lexicographic
// gap sequence of their unions.  n = 0 yields the single empty partition.
std::vector<ShadowedPartition> enumerate_partitions(int r, int n);

// Number of partitions, counted by walking the same tree that
// enumerate_partitions walks (no closed form involved).
mpz_class count_partitions(int r, int n);

// F_0 = 1, F_m = 0 for m < 0, F_m = F_{m-r} + ... + F_{m-1}.
mpz_class rstep_fibonacci(int r, std::int64_t n);

// Reconstruct the unique partition with the given union, or reject.
ShadowedPartition partition_from_union(int r, int n, const std::vector<int>& u);

// w(S) = sum_{i in S} q^i as an exact natural.
mpz_class set_weight(std::int64_t q, const std::vector<int>& s);

// sum_i (q^i - 1) * w(S_i); equals q^n - 1 for every valid partition.
mpz_class partition_weight(std::int64_t q, const ShadowedPartition& part);

// A^S = prod_i A_i^{w(S_i)}, assembled as prod_i prod_{s in S_i} A_i^{q^s}
// so only Frobenius powers of the coefficients are needed.
template <class D>
typename D::Elem partition_monomial(const D& dom,
                                    const std::vector<typename D::Elem>& coeff,
                                    const ShadowedPartition& part) {
    if (std::size_t(part.r) > coeff.size())
        throw domain_error("partition rank exceeds module rank");
    auto acc = dom.one();
    for (int i = 0; i < part.r; ++i)
        for (int s : part.classes[std::size_t(i)])
            acc = dom.mul(acc, dom.frob(coeff[std::size_t(i)], s));
    return acc;
}

}  // namespace drinfeld
