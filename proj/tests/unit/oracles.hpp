#pragma once

// Test-side reference implementations, kept deliberately naive and
// independent of the library code paths they check.

#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace oracles {

/// Slow factorization by scanning every candidate divisor.
inline std::vector<std::pair<std::uint64_t, std::uint32_t>> naive_factorize(std::uint64_t q) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
    for (std::uint64_t d = 2; d <= q; ++d) {
        if (q % d != 0) continue;
        std::uint32_t e = 0;
        while (q % d == 0) {
            q /= d;
            ++e;
        }
        out.push_back({d, e});
    }
    return out;
}

/// Multiplicative order of g mod m by stepping powers.
inline std::uint64_t order_mod(std::uint64_t g, std::uint64_t m) {
    std::uint64_t x = g % m, k = 1;
    while (x != 1) {
        x = x * g % m;
        ++k;
    }
    return k;
}

inline std::uint64_t naive_phi(std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1) ++c;
    return c;
}

inline int naive_mobius(std::uint64_t n) {
    int factors = 0;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        ++factors;
    }
    if (n > 1) ++factors;
    return (factors % 2 == 0) ? 1 : -1;
}

inline bool naive_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Number of primitive characters mod q: sum over f | q of mu(q/f) phi(f).
inline std::int64_t primitive_count_formula(std::uint64_t q) {
    std::int64_t total = 0;
    for (std::uint64_t f = 1; f <= q; ++f) {
        if (q % f != 0) continue;
        total += static_cast<std::int64_t>(naive_mobius(q / f)) *
                 static_cast<std::int64_t>(naive_phi(f));
    }
    return total;
}

}  // namespace oracles
