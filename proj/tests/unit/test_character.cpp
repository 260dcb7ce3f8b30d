#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <numeric>

#include "pvshort/character.hpp"
#include "pvshort/numeric.hpp"
#include "oracles.hpp"

using namespace pvshort;

TEST_CASE("quadratic character mod 5 takes -1 at 2 (Euler criterion)") {
    // 2^2 = 4 == -1 (mod 5), so the order-2 character sends 2 to -1.
    const CharacterGroup group(5);
    const CharacterLabel quad{5, {2}};
    const auto v = group.evaluate(quad, 2);
    REQUIRE(v.has_value());
    CHECK(*v == UnitAngle{1, 2});
    CHECK(v->is_minus_one());
}

TEST_CASE("chi(1) = 1 and non-units map to the zero marker") {
    for (std::uint64_t q : {5ULL, 12ULL, 16ULL, 45ULL}) {
        const CharacterGroup group(q);
        for (const auto& label : group.enumerate_all()) {
            const auto v = group.evaluate(label, 1);
            REQUIRE(v.has_value());
            CHECK(v->is_one());
        }
    }
    const CharacterGroup g12(12);
    for (const auto& label : g12.enumerate_all())
        CHECK_FALSE(g12.evaluate(label, 6).has_value());
}

TEST_CASE("evaluation is multiplicative as exact angles") {
    for (std::uint64_t q : {13ULL, 36ULL, 40ULL, 343ULL, 256ULL}) {
        const CharacterGroup group(q);
        std::vector<std::uint64_t> units;
        for (std::uint64_t n = 1; n < q; ++n)
            if (std::gcd(n, q) == 1) units.push_back(n);
        const auto labels = group.enumerate_all();
        const auto& label = labels[labels.size() / 2];
        for (int i = 0; i < 2000; ++i) {
            const auto n = units[splitmix64(1000 + i) % units.size()];
            const auto m = units[splitmix64(2000 + i) % units.size()];
            const auto vn = *group.evaluate(label, static_cast<std::int64_t>(n));
            const auto vm = *group.evaluate(label, static_cast<std::int64_t>(m));
            const auto vnm = *group.evaluate(label, static_cast<std::int64_t>(n * m % q));
            CHECK(vn.plus(vm) == vnm);
        }
    }
}

TEST_CASE("parity hand cases") {
    CHECK(parity({5, {2}}) == Parity::even);   // chi(4) = chi(2)^2 = 1
    CHECK(parity({3, {1}}) == Parity::odd);    // chi(2) = -1 and -1 == 2 (mod 3)
    CHECK(parity({12, {0, 0}}) == Parity::even);
    CHECK(parity({7, {1}}) == Parity::odd);
}

TEST_CASE("conductor hand cases") {
    CHECK(conductor({12, {0, 0}}) == 1);  // principal
    CHECK(conductor({5, {2}}) == 5);      // quadratic, primitive
    CHECK(conductor({6, {1}}) == 3);      // induced by the quadratic character mod 3
}

TEST_CASE("primitive enumeration hand cases") {
    const auto p5 = enumerate_primitive(5);
    REQUIRE(p5.size() == 3);
    CHECK(p5[0].exponents == std::vector<std::uint32_t>{1});
    CHECK(p5[1].exponents == std::vector<std::uint32_t>{2});
    CHECK(p5[2].exponents == std::vector<std::uint32_t>{3});

    CHECK(enumerate_primitive(4).size() == 1);
    CHECK(enumerate_primitive(6).empty());
    CHECK(enumerate_primitive(1).empty());
    CHECK(enumerate_primitive(2).empty());
}

TEST_CASE("primitive counts match the divisor-sum formula, q <= 300") {
    for (std::uint64_t q = 3; q <= 300; ++q) {
        const auto n = static_cast<std::int64_t>(enumerate_primitive(q).size());
        CHECK(n == oracles::primitive_count_formula(q));
    }
}

TEST_CASE("full-period sums of non-principal characters vanish, q <= 100") {
    for (std::uint64_t q = 3; q <= 100; ++q) {
        const CharacterGroup group(q);
        for (const auto& label : group.enumerate_all()) {
            if (group.is_principal(label)) continue;
            ComplexSum acc;
            for (std::uint64_t n = 1; n <= q; ++n)
                if (const auto v = group.evaluate(label, static_cast<std::int64_t>(n)))
                    acc.add(v->to_complex());
            CHECK(std::abs(acc.value()) <= 1e-9);
        }
    }
}

TEST_CASE("conjugate characters share conductor and parity") {
    for (std::uint64_t q : {7ULL, 15ULL, 16ULL, 45ULL, 60ULL}) {
        const CharacterGroup group(q);
        for (const auto& label : group.enumerate_all()) {
            const auto conj = group.conjugate(label);
            CHECK(group.conductor(conj) == group.conductor(label));
            CHECK(group.parity(conj) == group.parity(label));
        }
    }
}

TEST_CASE("angle denominators divide the group exponent") {
    for (std::uint64_t q : {7ULL, 24ULL, 35ULL}) {
        const CharacterGroup group(q);
        for (const auto& label : group.enumerate_all()) {
            for (std::uint64_t n = 1; n < q; ++n) {
                const auto v = group.evaluate(label, static_cast<std::int64_t>(n));
                if (!v) continue;
                CHECK(group.angle_denominator() % v->den == 0);
                CHECK(v->num < v->den);
            }
        }
    }
}

TEST_CASE("label serialization round-trips") {
    const CharacterLabel a{12, {1, 0}};
    CHECK(to_string(a) == "12:1,0");
    CHECK(parse_label("12:1,0") == a);
    const CharacterLabel b{5, {3}};
    CHECK(parse_label(to_string(b)) == b);
    CHECK(parse_label("1:") == CharacterLabel{1, {}});
    CHECK_THROWS_AS(parse_label("x:y"), UsageError);
}

TEST_CASE("labels out of range are rejected") {
    const CharacterGroup group(5);
    CHECK_THROWS_AS(group.evaluate({5, {4}}, 1), DomainError);
    CHECK_THROWS_AS(group.evaluate({5, {0, 0}}, 1), DomainError);
    CHECK_THROWS_AS(group.evaluate({7, {1}}, 1), DomainError);
}

TEST_CASE("principal character is even and has conductor 1 at any q") {
    for (std::uint64_t q : {1ULL, 2ULL, 9ULL, 24ULL}) {
        const CharacterGroup group(q);
        const auto chi0 = group.principal();
        CHECK(group.parity(chi0) == Parity::even);
        CHECK(group.conductor(chi0) == 1);
        const auto prof = group.profile(chi0);
        CHECK(prof.isPrimitive == (q == 1));
    }
}
