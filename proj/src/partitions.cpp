#include "drinfeld/partitions.hpp"

#include <algorithm>

namespace drinfeld {

namespace {

void check_rank_size(int r, int n) {
    if (r < 1) throw domain_error("rank must be positive");
    if (n < 0) throw domain_error("partition size must be nonnegative");
}

// Walk gap sequences: from position s, the next union element is s + g with
// g in 1..r, and the walk ends when s + g == n.  The element s belongs to
// class g.  Gaps are tried in ascending order.
template <class Visit>
void walk(int r, int n, ShadowedPartition& work, int pos, Visit&& visit,
          std::int64_t& steps) {
    if (++steps > ResourceLimits::current().max_enumeration)
        throw resource_error("partition enumeration exceeds configured cap");
    if (n == 0) {
        visit(work);
        return;
    }
    for (int g = 1; g <= r && pos + g <= n; ++g) {
        work.classes[std::size_t(g - 1)].push_back(pos);
        if (pos + g == n) {
            visit(work);
        } else {
            walk(r, n, work, pos + g, visit, steps);
        }
        work.classes[std::size_t(g - 1)].pop_back();
    }
}

}  // namespace

std::vector<int> ShadowedPartition::union_set() const {
    std::vector<int> u;
    for (auto& s : classes) u.insert(u.end(), s.begin(), s.end());
    std::sort(u.begin(), u.end());
    return u;
}

std::size_t ShadowedPartition::element_count() const {
    std::size_t c = 0;
    for (auto& s : classes) c += s.size();
    return c;
}

bool ShadowedPartition::is_valid() const {
    if (r < 1 || n < 0 || classes.size() != std::size_t(r)) return false;
    std::vector<int> cover(std::size_t(n), 0);
    for (int i = 1; i <= r; ++i) {
        const auto& s = classes[std::size_t(i - 1)];
        for (std::size_t t = 0; t < s.size(); ++t) {
            if (t > 0 && s[t] <= s[t - 1]) return false;
            for (int j = 0; j < i; ++j) {
                int pos = s[t] + j;
                if (s[t] < 0 || pos >= n) return false;
                ++cover[std::size_t(pos)];
            }
        }
    }
    for (int c : cover)
        if (c != 1) return false;
    return true;
}

std::vector<ShadowedPartition> enumerate_partitions(int r, int n) {
    check_rank_size(r, n);
    std::vector<ShadowedPartition> out;
    ShadowedPartition work;
    work.r = r;
    work.n = n;
    work.classes.assign(std::size_t(r), {});
    std::int64_t steps = 0;
    walk(r, n, work, 0, [&](const ShadowedPartition& p) { out.push_back(p); }, steps);
    return out;
}

mpz_class count_partitions(int r, int n) {
    check_rank_size(r, n);
    mpz_class count = 0;
    ShadowedPartition work;
    work.r = r;
    work.n = n;
    work.classes.assign(std::size_t(r), {});
    std::int64_t steps = 0;
    walk(r, n, work, 0, [&](const ShadowedPartition&) { count += 1; }, steps);
    return count;
}

mpz_class rstep_fibonacci(int r, std::int64_t n) {
    if (r < 1) throw domain_error("rank must be positive");
    if (n < 0) return 0;
    std::vector<mpz_class> window(std::size_t(r), 0);  // F_{n-r}..F_{n-1}
    mpz_class cur = 1;                                 // F_0
    for (std::int64_t m = 1; m <= n; ++m) {
        window.erase(window.begin());
        window.push_back(cur);
        cur = 0;
        for (auto& w : window) cur += w;
    }
    return cur;
}

ShadowedPartition partition_from_union(int r, int n, const std::vector<int>& u) {
    check_rank_size(r, n);
    ShadowedPartition part;
    part.r = r;
    part.n = n;
    part.classes.assign(std::size_t(r), {});
    if (n == 0) {
        if (!u.empty()) throw domain_error("union must be empty when n = 0");
        return part;
    }
    for (std::size_t t = 0; t < u.size(); ++t) {
        if (u[t] < 0 || u[t] >= n || (t > 0 && u[t] <= u[t - 1]))
            throw domain_error("union must be a sorted subset of {0..n-1}");
    }
    if (u.empty() || u[0] != 0)
        throw domain_error("not the union of a valid partition: 0 is uncovered");
    for (std::size_t t = 0; t < u.size(); ++t) {
        int next = (t + 1 < u.size()) ? u[t + 1] : n;
        int gap = next - u[t];
        if (gap > r)
            throw domain_error("not the union of a valid partition: gap exceeds rank");
        part.classes[std::size_t(gap - 1)].push_back(u[t]);
    }
    if (!part.is_valid()) throw domain_error("not the union of a valid partition");
    return part;
}

mpz_class set_weight(std::int64_t q, const std::vector<int>& s) {
    if (q < 2) throw domain_error("weight base must be at least 2");
    mpz_class w = 0, qz(static_cast<long>(q));
    for (int i : s) {
        if (i < 0) throw domain_error("negative set element");
        mpz_class term;
        mpz_pow_ui(term.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(i));
        w += term;
    }
    return w;
}

mpz_class partition_weight(std::int64_t q, const ShadowedPartition& part) {
    mpz_class total = 0, qz(static_cast<long>(q));
    for (int i = 1; i <= part.r; ++i) {
        mpz_class qi;
        mpz_pow_ui(qi.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(i));
        total += (qi - 1) * set_weight(q, part.classes[std::size_t(i - 1)]);
    }
    return total;
}

}  // namespace drinfeld
