#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "pvshort/error.hpp"

namespace pvshort {

/// Largest supported modulus. Keeps every per-modulus table comfortably in
/// memory; raise only together with the dlog memory cap below.
inline constexpr std::uint64_t kMaxModulus = 10'000'000;

/// Default cap on the total number of dlog table entries for one modulus.
inline constexpr std::uint64_t kDefaultDlogEntryCap = 64'000'000;

struct PrimePower {
    std::uint64_t prime;
    std::uint32_t exponent;
    bool operator==(const PrimePower&) const = default;
};

/// q as an ordered product of prime powers. Primes strictly increasing.
struct Factorization {
    std::uint64_t q = 1;
    std::vector<PrimePower> factors;
};

/// Deterministic trial division. q = 1 gives an empty factor list.
inline Factorization factorize(std::uint64_t q) {
    if (q == 0) throw DomainError("factorize: q must be positive");
    if (q > kMaxModulus)
        throw RangeError("factorize: q exceeds the supported ceiling " +
                         std::to_string(kMaxModulus));
    Factorization f;
    f.q = q;
    std::uint64_t rest = q;
    for (std::uint64_t p = 2; p * p <= rest; p += (p == 2 ? 1 : 2)) {
        if (rest % p != 0) continue;
        std::uint32_t e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        f.factors.push_back({p, e});
    }
    if (rest > 1) f.factors.push_back({rest, 1});
    return f;
}

inline std::uint64_t pow_u64(std::uint64_t base, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e--) r *= base;
    return r;
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 r = 1;
    unsigned __int128 b = base % m;
    while (e) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
}

/// One cyclic piece of (Z/qZ)*. `modulus` is the prime power it lives in;
/// for 2^e, e >= 3 two components share the modulus (generators -1 and 5).
struct GroupComponent {
    std::uint64_t modulus;    ///< prime power
    std::uint64_t generator;  ///< residue generating this component
    std::uint64_t order;
    bool operator==(const GroupComponent&) const = default;
};

/// (Z/qZ)* as a product of cyclic components, one or two per prime power:
///   odd p^e : <g> with g the smallest primitive root of p^e
///   2       : nothing (trivial group)
///   4       : <-1> of order 2
///   2^e,e>=3: <-1> of order 2 and <5> of order 2^{e-2}
struct GroupDecomposition {
    std::uint64_t q = 1;
    std::vector<GroupComponent> components;
    std::uint64_t totalOrder = 1;  ///< phi(q)
};

namespace detail {

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

/// Smallest primitive root of the odd prime power pk = p^e, by direct order
/// test against the prime factors of phi(pk).
inline std::uint64_t smallest_primitive_root(std::uint64_t pk, std::uint64_t phi) {
    const auto ps = prime_factors(phi);
    for (std::uint64_t g = 2; g < pk; ++g) {
        if (std::gcd(g, pk) != 1) continue;
        bool ok = true;
        for (std::uint64_t p : ps) {
            if (powmod(g, phi / p, pk) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw InternalError("no primitive root found for " + std::to_string(pk));
}

}  // namespace detail

inline GroupDecomposition decompose(const Factorization& f) {
    GroupDecomposition g;
    g.q = f.q;
    g.totalOrder = 1;
    for (const auto& [p, e] : f.factors) {
        const std::uint64_t pk = pow_u64(p, e);
        if (p == 2) {
            if (e == 1) continue;  // (Z/2Z)* trivial
            if (e == 2) {
                g.components.push_back({4, 3, 2});  // <-1>
                g.totalOrder *= 2;
                continue;
            }
            const std::uint64_t five_order = pk / 4;  // 2^{e-2}
            g.components.push_back({pk, pk - 1, 2});  // <-1>
            g.components.push_back({pk, 5, five_order});
            g.totalOrder *= 2 * five_order;
        } else {
            const std::uint64_t phi = pk / p * (p - 1);
            g.components.push_back({pk, detail::smallest_primitive_root(pk, phi), phi});
            g.totalOrder *= phi;
        }
    }
    return g;
}

/// Dense discrete-log table for one component: exponent_of[u] is the power of
/// the component generator appearing in u's factorization over the component
/// list. Non-units (and, inside the prime power, residues reached only with a
/// nonzero exponent on the sibling component) still get an entry, so lookup
/// is a plain index.
struct DlogTable {
    std::uint64_t componentModulus = 1;
    std::uint64_t order = 1;
    std::vector<std::uint32_t> exponent_of;  ///< indexed by residue; kNonUnit for non-units

    static constexpr std::uint32_t kNonUnit = std::numeric_limits<std::uint32_t>::max();

    [[nodiscard]] std::optional<std::uint32_t> lookup(std::uint64_t residue) const {
        const std::uint32_t v = exponent_of[residue % componentModulus];
        if (v == kNonUnit) return std::nullopt;
        return v;
    }
};

/// One table per component, in component order. For an odd prime power the
/// table enumerates generator powers; for 2^e, e >= 3 the two tables are
/// filled jointly from (-1)^s 5^t and are bijective as a pair.
inline std::vector<DlogTable> build_dlog_tables(const GroupDecomposition& g,
                                                std::uint64_t entry_cap = kDefaultDlogEntryCap) {
    std::uint64_t total_entries = 0;
    for (const auto& c : g.components) total_entries += c.modulus;
    if (total_entries > entry_cap)
        throw MemoryBudgetError("build_dlog_tables: " + std::to_string(total_entries) +
                                " entries exceed the cap " + std::to_string(entry_cap));

    std::vector<DlogTable> tables;
    tables.reserve(g.components.size());
    for (std::size_t i = 0; i < g.components.size(); ++i) {
        const auto& c = g.components[i];
        DlogTable t;
        t.componentModulus = c.modulus;
        t.order = c.order;
        t.exponent_of.assign(c.modulus, DlogTable::kNonUnit);
        tables.push_back(std::move(t));
    }

    for (std::size_t i = 0; i < g.components.size(); ++i) {
        const auto& c = g.components[i];
        if (c.modulus % 2 == 0 && c.modulus >= 8) {
            // Joint fill of the <-1>, <5> pair; skip the second slot here.
            if (i + 1 >= g.components.size() || g.components[i + 1].modulus != c.modulus)
                throw InternalError("expected paired components for modulus " +
                                    std::to_string(c.modulus));
            auto& sign_table = tables[i];
            auto& five_table = tables[i + 1];
            const std::uint64_t m = c.modulus;
            for (std::uint64_t s = 0; s < 2; ++s) {
                std::uint64_t u = (s == 0) ? 1 : m - 1;
                for (std::uint64_t t = 0; t < g.components[i + 1].order; ++t) {
                    sign_table.exponent_of[u] = static_cast<std::uint32_t>(s);
                    five_table.exponent_of[u] = static_cast<std::uint32_t>(t);
                    u = static_cast<std::uint64_t>((unsigned __int128)u * 5 % m);
                }
            }
            ++i;
        } else {
            auto& table = tables[i];
            std::uint64_t u = 1;
            for (std::uint64_t e = 0; e < c.order; ++e) {
                table.exponent_of[u] = static_cast<std::uint32_t>(e);
                u = static_cast<std::uint64_t>((unsigned __int128)u * c.generator % c.modulus);
            }
            if (u != 1)
                throw InternalError("generator order mismatch for modulus " +
                                    std::to_string(c.modulus));
        }
    }
    return tables;
}

/// Exponent tuple of the unit n over the component list, or nullopt when
/// gcd(n, q) > 1 (callers map that to chi(n) = 0).
inline std::optional<std::vector<std::uint32_t>> exponent_tuple(
    std::uint64_t n, const GroupDecomposition& g, const std::vector<DlogTable>& tables) {
    n %= g.q;
    if (g.q > 1 && std::gcd(n, g.q) != 1) return std::nullopt;
    std::vector<std::uint32_t> tuple(tables.size());
    for (std::size_t i = 0; i < tables.size(); ++i) {
        const auto v = tables[i].lookup(n);
        if (!v) return std::nullopt;  // even-q residue in the 2-part
        tuple[i] = *v;
    }
    return tuple;
}

/// phi via factorization; also used for modular inverses below.
inline std::uint64_t euler_phi_of(std::uint64_t n) {
    std::uint64_t phi = n;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            phi -= phi / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) phi -= phi / n;
    return phi;
}

/// Rebuild the unit from its exponent tuple (CRT over the components).
inline std::uint64_t reconstruct_unit(const std::vector<std::uint32_t>& tuple,
                                      const GroupDecomposition& g) {
    if (g.q == 1) return 0;
    std::uint64_t n = 1 % g.q;
    // Product over components of generator^exponent, each lifted to mod q.
    for (std::size_t i = 0; i < g.components.size(); ++i) {
        const auto& c = g.components[i];
        // Lift a residue r mod c.modulus to mod q via CRT with the identity
        // elsewhere: x == r (mod c.modulus), x == 1 (mod q / prime power).
        const std::uint64_t m = c.modulus;
        const std::uint64_t rest = g.q / m;
        const std::uint64_t r = powmod(c.generator, tuple[i], m);
        std::uint64_t x = r;
        if (rest > 1) {
            // x = r + m*k with x == 1 mod rest  ->  k == (1-r)/m mod rest
            const std::uint64_t m_inv = powmod(m % rest, euler_phi_of(rest) - 1, rest);
            const std::uint64_t diff = ((1 + rest - r % rest) % rest);
            const std::uint64_t k = (unsigned __int128)diff * m_inv % rest;
            x = r + m * k;
        }
        n = static_cast<std::uint64_t>((unsigned __int128)n * x % g.q);
    }
    return n;
}

}  // namespace pvshort
