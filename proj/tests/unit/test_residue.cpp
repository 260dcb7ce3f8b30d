#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <set>

#include "pvshort/residue.hpp"
#include "oracles.hpp"

using namespace pvshort;

TEST_CASE("factorize matches hand values and the naive oracle") {
    CHECK(factorize(1).factors.empty());

    const auto f5 = factorize(5);
    REQUIRE(f5.factors.size() == 1);
    CHECK(f5.factors[0] == PrimePower{5, 1});

    const auto f12 = factorize(12);
    REQUIRE(f12.factors.size() == 2);
    CHECK(f12.factors[0] == PrimePower{2, 2});
    CHECK(f12.factors[1] == PrimePower{3, 1});

    for (std::uint64_t q : {2ULL, 97ULL, 360ULL, 1024ULL, 9999991ULL, 735134ULL}) {
        const auto f = factorize(q);
        const auto ref = oracles::naive_factorize(q);
        REQUIRE(f.factors.size() == ref.size());
        std::uint64_t product = 1;
        for (std::size_t i = 0; i < ref.size(); ++i) {
            CHECK(f.factors[i].prime == ref[i].first);
            CHECK(f.factors[i].exponent == ref[i].second);
            if (i > 0) CHECK(f.factors[i].prime > f.factors[i - 1].prime);
            product *= pow_u64(f.factors[i].prime, f.factors[i].exponent);
        }
        CHECK(product == q);
    }
}

TEST_CASE("factorize rejects q = 0 and the ceiling with distinct errors") {
    CHECK_THROWS_AS(factorize(0), DomainError);
    CHECK_THROWS_AS(factorize(kMaxModulus + 1), RangeError);
    CHECK_NOTHROW(factorize(kMaxModulus));
}

TEST_CASE("decompose hand cases") {
    const auto g5 = decompose(factorize(5));
    REQUIRE(g5.components.size() == 1);
    CHECK(g5.components[0] == GroupComponent{5, 2, 4});
    CHECK(g5.totalOrder == 4);

    const auto g8 = decompose(factorize(8));
    REQUIRE(g8.components.size() == 2);
    CHECK(g8.components[0] == GroupComponent{8, 7, 2});
    CHECK(g8.components[1] == GroupComponent{8, 5, 2});
    CHECK(g8.totalOrder == 4);

    const auto g2 = decompose(factorize(2));
    CHECK(g2.components.empty());
    CHECK(g2.totalOrder == 1);

    const auto g4 = decompose(factorize(4));
    REQUIRE(g4.components.size() == 1);
    CHECK(g4.components[0] == GroupComponent{4, 3, 2});
}

TEST_CASE("generators are the smallest primitive roots of their prime powers") {
    for (std::uint64_t pk : {3ULL, 5ULL, 7ULL, 9ULL, 25ULL, 27ULL, 49ULL, 121ULL, 343ULL}) {
        const auto g = decompose(factorize(pk));
        REQUIRE(g.components.size() == 1);
        const auto order = g.components[0].order;
        const auto gen = g.components[0].generator;
        CHECK(oracles::order_mod(gen, pk) == order);
        for (std::uint64_t h = 2; h < gen; ++h) {
            if (std::gcd(h, pk) != 1) continue;
            CHECK(oracles::order_mod(h, pk) < order);
        }
    }
}

TEST_CASE("dlog table hand cases") {
    const auto t5 = build_dlog_tables(decompose(factorize(5)));
    REQUIRE(t5.size() == 1);
    CHECK(t5[0].lookup(1) == 0);
    CHECK(t5[0].lookup(2) == 1);
    CHECK(t5[0].lookup(4) == 2);
    CHECK(t5[0].lookup(3) == 3);
    CHECK_FALSE(t5[0].lookup(0).has_value());

    const auto t3 = build_dlog_tables(decompose(factorize(3)));
    CHECK(t3[0].lookup(1) == 0);
    CHECK(t3[0].lookup(2) == 1);

    const auto t4 = build_dlog_tables(decompose(factorize(4)));
    CHECK(t4[0].lookup(1) == 0);
    CHECK(t4[0].lookup(3) == 1);
}

TEST_CASE("dlog tables biject units onto exponent ranges") {
    // Cyclic components: the single table is a bijection.
    for (std::uint64_t q : {7ULL, 9ULL, 25ULL, 4ULL}) {
        const auto g = decompose(factorize(q));
        const auto tables = build_dlog_tables(g);
        std::set<std::uint32_t> seen;
        for (std::uint64_t u = 1; u < q; ++u) {
            if (std::gcd(u, q) != 1) continue;
            const auto e = tables[0].lookup(u);
            REQUIRE(e.has_value());
            CHECK(powmod(g.components[0].generator, *e, q) == u);
            seen.insert(*e);
        }
        CHECK(seen.size() == g.components[0].order);
    }
    // 2^e, e >= 3: the pair of tables is jointly bijective.
    for (std::uint64_t q : {8ULL, 16ULL, 64ULL}) {
        const auto g = decompose(factorize(q));
        const auto tables = build_dlog_tables(g);
        std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
        for (std::uint64_t u = 1; u < q; u += 2) {
            const auto s = tables[0].lookup(u);
            const auto t = tables[1].lookup(u);
            REQUIRE((s.has_value() && t.has_value()));
            const std::uint64_t rebuilt =
                powmod(q - 1, *s, q) * powmod(5, *t, q) % q;
            CHECK(rebuilt == u);
            seen.insert({*s, *t});
        }
        CHECK(seen.size() == q / 2);
    }
}

TEST_CASE("memory budget cap raises its own error") {
    const auto g = decompose(factorize(10007));
    CHECK_THROWS_AS(build_dlog_tables(g, 100), MemoryBudgetError);
}

TEST_CASE("exponent tuple hand cases") {
    const auto g5 = decompose(factorize(5));
    const auto t5 = build_dlog_tables(g5);
    CHECK(exponent_tuple(1, g5, t5) == std::vector<std::uint32_t>{0});
    CHECK(exponent_tuple(3, g5, t5) == std::vector<std::uint32_t>{3});

    const auto g12 = decompose(factorize(12));
    const auto t12 = build_dlog_tables(g12);
    CHECK(exponent_tuple(7, g12, t12) == std::vector<std::uint32_t>{1, 0});
    CHECK_FALSE(exponent_tuple(6, g12, t12).has_value());
    CHECK(exponent_tuple(1, g12, t12) == std::vector<std::uint32_t>{0, 0});
}

TEST_CASE("round trip over all units, q <= 2000") {
    for (std::uint64_t q = 2; q <= 2000; ++q) {
        const auto g = decompose(factorize(q));
        const auto tables = build_dlog_tables(g);
        for (std::uint64_t n = 1; n < q; ++n) {
            if (std::gcd(n, q) != 1) continue;
            const auto tuple = exponent_tuple(n, g, tables);
            REQUIRE(tuple.has_value());
            if (reconstruct_unit(*tuple, g) != n) {
                FAIL("round trip failed at q=" << q << " n=" << n);
            }
        }
    }
}

TEST_CASE("exponent tuples are homomorphic, q <= 500") {
    for (std::uint64_t q = 3; q <= 500; ++q) {
        const auto g = decompose(factorize(q));
        const auto tables = build_dlog_tables(g);
        std::vector<std::uint64_t> units;
        for (std::uint64_t n = 1; n < q; ++n)
            if (std::gcd(n, q) == 1) units.push_back(n);
        for (const auto n : units) {
            const auto tn = *exponent_tuple(n, g, tables);
            for (const auto m : units) {
                const auto tm = *exponent_tuple(m, g, tables);
                const auto tnm = *exponent_tuple(n * m % q, g, tables);
                for (std::size_t i = 0; i < g.components.size(); ++i) {
                    const auto d = g.components[i].order;
                    if ((tn[i] + tm[i]) % d != tnm[i]) {
                        FAIL("homomorphism failed at q=" << q << " n=" << n << " m=" << m);
                    }
                }
            }
        }
    }
}

TEST_CASE("totalOrder equals the totient, q <= 10^4") {
    // Sieve phi independently.
    const std::uint64_t limit = 10'000;
    std::vector<std::uint64_t> phi(limit + 1);
    for (std::uint64_t i = 0; i <= limit; ++i) phi[i] = i;
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (phi[p] != p) continue;  // p composite already reduced
        for (std::uint64_t k = p; k <= limit; k += p) phi[k] -= phi[k] / p;
    }
    for (std::uint64_t q = 1; q <= limit; ++q)
        CHECK(decompose(factorize(q)).totalOrder == phi[q]);
}
