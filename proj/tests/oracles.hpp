#pragma once

// Reference implementations that share no code with the library: plain
// trial division, the three-term Bonnet recurrence in mpq, direct double
// sums, and rational Gaussian elimination. Slow but obviously correct.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

// nullopt stands for +infinity (zero input).
inline std::optional<std::int64_t> vp(std::uint64_t p, mpz_class n) {
    if (n == 0) return std::nullopt;
    std::int64_t v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline std::optional<std::int64_t> vp(std::uint64_t p, const mpq_class& r) {
    if (r == 0) return std::nullopt;
    return *vp(p, r.get_num()) - *vp(p, r.get_den());
}

inline std::uint64_t digit_sum(std::uint64_t p, std::uint64_t n) {
    std::uint64_t s = 0;
    for (; n; n /= p) s += n % p;
    return s;
}

inline mpz_class factorial(std::uint64_t n) {
    mpz_class f = 1;
    for (std::uint64_t k = 2; k <= n; ++k) f *= k;
    return f;
}

// Pascal row, no library binomials.
inline mpz_class choose(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    mpz_class c = 1;
    for (std::uint64_t j = 1; j <= k; ++j) {
        c *= n - k + j;
        c /= j;
    }
    return c;
}

// P_0..P_N at x via (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}.
inline std::vector<mpq_class> legendre_values(std::uint64_t N, const mpq_class& x) {
    std::vector<mpq_class> P(N + 1);
    P[0] = 1;
    if (N >= 1) P[1] = x;
    for (std::uint64_t n = 1; n < N; ++n) {
        P[n + 1] = (mpq_class(2 * n + 1) * x * P[n] - mpq_class(n) * P[n - 1]) / mpq_class(n + 1);
        P[n + 1].canonicalize();
    }
    return P;
}

inline mpz_class delannoy(std::uint64_t n) {
    mpz_class s = 0;
    for (std::uint64_t i = 0; i <= n; ++i) s += choose(n, i) * choose(n + i, i);
    return s;
}

// d(n) = sum_{i<n} C(2i, i)
inline mpz_class dsum(std::uint64_t n) {
    mpz_class s = 0;
    for (std::uint64_t i = 0; i < n; ++i) s += choose(2 * i, i);
    return s;
}

inline mpz_class cube_sum(std::uint64_t n) {
    mpz_class s = 0;
    for (std::uint64_t k = 0; k <= n; ++k) {
        mpz_class c = choose(n, k);
        s += c * c * c * (mpz_class(1) << k);
    }
    return s;
}

// Rank over Q by fraction-ful Gaussian elimination with full pivot search.
inline std::size_t rational_rank(const std::vector<std::vector<mpz_class>>& rows) {
    std::vector<std::vector<mpq_class>> m;
    for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
    if (m.empty()) return 0;
    const std::size_t cols = m[0].size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][c] == 0) continue;
            const mpq_class f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

// Fixed-seed source for the property sweeps.
inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x5eed1234abcdULL);
    return gen;
}

// Rational test points: small integers, halves, thirds, mixed signs.
inline std::vector<mpq_class> rational_test_set() {
    std::vector<mpq_class> xs;
    for (long num : {-7, -3, -2, -1, 0, 1, 2, 3, 5, 9})
        for (long den : {1, 2, 3, 5}) {
            mpq_class q(num, den);
            q.canonicalize();
            bool seen = false;
            for (const auto& x : xs) seen = seen || x == q;
            if (!seen) xs.push_back(q);
        }
    return xs;
}

}  // namespace oracle
