#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pvshort/error.hpp"
#include "pvshort/numeric.hpp"
#include "pvshort/residue.hpp"

namespace pvshort {

/// A Dirichlet character mod q, addressed by its exponent tuple over the
/// canonical component generators. The all-zero tuple is the principal
/// character. Serialized as "q:k1,k2,...,kr" in component order.
struct CharacterLabel {
    std::uint64_t q = 1;
    std::vector<std::uint32_t> exponents;
    bool operator==(const CharacterLabel&) const = default;
    bool operator<(const CharacterLabel& o) const {
        if (q != o.q) return q < o.q;
        return exponents < o.exponents;
    }
};

inline std::string to_string(const CharacterLabel& label) {
    std::string s = std::to_string(label.q) + ":";
    for (std::size_t i = 0; i < label.exponents.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(label.exponents[i]);
    }
    return s;
}

/// Accepts "q:k1,k2,..." or a bare "k1,k2,..." (q = 0 then means "unknown").
inline CharacterLabel parse_label(const std::string& text) {
    CharacterLabel label;
    label.q = 0;
    std::string body = text;
    if (const auto colon = text.find(':'); colon != std::string::npos) {
        try {
            label.q = std::stoull(text.substr(0, colon));
        } catch (const std::exception&) {
            throw UsageError("bad character label: " + text);
        }
        body = text.substr(colon + 1);
    }
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            label.exponents.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
        } catch (const std::exception&) {
            throw UsageError("bad character label: " + text);
        }
    }
    return label;
}

/// An exact root of unity e(num/den) = exp(2 pi i num/den), stored reduced
/// with 0 <= num < den. Character values stay in this form until a sum is
/// accumulated, so evaluation itself is round-off free.
struct UnitAngle {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    static UnitAngle reduced(std::uint64_t n, std::uint64_t d) {
        n %= d;
        const std::uint64_t g = std::gcd(n == 0 ? d : n, d);
        return {n / g, d / g};
    }
    [[nodiscard]] UnitAngle plus(const UnitAngle& o) const {
        const std::uint64_t l = std::lcm(den, o.den);
        return reduced(num * (l / den) + o.num * (l / o.den), l);
    }
    [[nodiscard]] std::complex<double> to_complex() const {
        return unit_exp(static_cast<double>(num) / static_cast<double>(den));
    }
    [[nodiscard]] bool is_one() const { return num == 0; }
    [[nodiscard]] bool is_minus_one() const { return 2 * num == den; }
    bool operator==(const UnitAngle&) const = default;
};

enum class Parity { even, odd };

inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

struct CharacterProfile {
    CharacterLabel label;
    Parity parity = Parity::even;
    std::uint64_t conductor = 1;
    bool isPrimitive = false;
};

/// All per-modulus machinery for one q: group decomposition, dlog tables,
/// divisor list, and the angle denominator L = lcm of the component orders.
/// Immutable after construction; safe to share across threads.
class CharacterGroup {
public:
    explicit CharacterGroup(std::uint64_t q)
        : factorization_(factorize(q)),
          decomposition_(decompose(factorization_)),
          tables_(build_dlog_tables(decomposition_)) {
        angle_den_ = 1;
        for (const auto& c : decomposition_.components)
            angle_den_ = std::lcm(angle_den_, c.order);
        strides_.reserve(decomposition_.components.size());
        for (const auto& c : decomposition_.components)
            strides_.push_back(angle_den_ / c.order);
        divisors_ = compute_divisors();
    }

    [[nodiscard]] std::uint64_t modulus() const { return decomposition_.q; }
    [[nodiscard]] std::uint64_t unit_count() const { return decomposition_.totalOrder; }
    [[nodiscard]] std::uint64_t angle_denominator() const { return angle_den_; }
    [[nodiscard]] const GroupDecomposition& decomposition() const { return decomposition_; }
    [[nodiscard]] const std::vector<DlogTable>& dlog_tables() const { return tables_; }
    [[nodiscard]] const std::vector<std::uint64_t>& divisors() const { return divisors_; }

    void validate(const CharacterLabel& label) const {
        if (label.q != modulus())
            throw DomainError("label modulus " + std::to_string(label.q) +
                              " does not match group modulus " + std::to_string(modulus()));
        if (label.exponents.size() != decomposition_.components.size())
            throw DomainError("label has " + std::to_string(label.exponents.size()) +
                              " exponents, expected " +
                              std::to_string(decomposition_.components.size()));
        for (std::size_t i = 0; i < label.exponents.size(); ++i)
            if (label.exponents[i] >= decomposition_.components[i].order)
                throw DomainError("label exponent " + std::to_string(label.exponents[i]) +
                                  " out of range for component order " +
                                  std::to_string(decomposition_.components[i].order));
    }

    [[nodiscard]] CharacterLabel principal() const {
        return {modulus(), std::vector<std::uint32_t>(decomposition_.components.size(), 0)};
    }

    [[nodiscard]] bool is_principal(const CharacterLabel& label) const {
        for (auto k : label.exponents)
            if (k != 0) return false;
        return true;
    }

    [[nodiscard]] CharacterLabel conjugate(const CharacterLabel& label) const {
        CharacterLabel c = label;
        for (std::size_t i = 0; i < c.exponents.size(); ++i) {
            const auto d = decomposition_.components[i].order;
            c.exponents[i] = static_cast<std::uint32_t>((d - c.exponents[i]) % d);
        }
        return c;
    }

    /// Angle numerator of chi(n) over denominator L, or nullopt when
    /// gcd(n, q) > 1. The numerator is sum_i k_i * dlog_i(n) * (L / d_i) mod L.
    [[nodiscard]] std::optional<std::uint64_t> angle_numerator(const CharacterLabel& label,
                                                               std::uint64_t n) const {
        n %= modulus();
        if (modulus() > 1 && std::gcd(n, modulus()) != 1) return std::nullopt;
        std::uint64_t num = 0;
        for (std::size_t i = 0; i < tables_.size(); ++i) {
            const auto t = tables_[i].lookup(n);
            if (!t) return std::nullopt;
            num = (num + static_cast<std::uint64_t>(label.exponents[i]) * *t % angle_den_ *
                             strides_[i]) %
                  angle_den_;
        }
        return num;
    }

    /// chi(n) as an exact angle; nullopt is the zero marker (gcd(n, q) > 1).
    [[nodiscard]] std::optional<UnitAngle> evaluate(const CharacterLabel& label,
                                                    std::int64_t n) const {
        validate(label);
        const std::uint64_t q = modulus();
        const std::uint64_t r =
            static_cast<std::uint64_t>(((n % static_cast<std::int64_t>(q)) +
                                        static_cast<std::int64_t>(q))) %
            q;
        const auto num = angle_numerator(label, r);
        if (!num) return std::nullopt;
        return UnitAngle::reduced(*num, angle_den_);
    }

    /// chi(-1) = +1 or -1; anything else would break chi(-1)^2 = 1.
    [[nodiscard]] Parity parity(const CharacterLabel& label) const {
        validate(label);
        const auto a = angle_numerator(label, modulus() - 1);
        if (!a) throw InternalError("parity: -1 not a unit");
        if (*a == 0) return Parity::even;
        if (2 * *a == angle_den_) return Parity::odd;
        throw InternalError("parity: chi(-1) is not a square root of 1");
    }

    /// Smallest divisor f of q with chi trivial on {n == 1 (mod f), gcd(n,q)=1}.
    [[nodiscard]] std::uint64_t conductor(const CharacterLabel& label) const {
        validate(label);
        const std::uint64_t q = modulus();
        for (const std::uint64_t f : divisors_) {
            if (f == q) return q;
            bool trivial = true;
            for (std::uint64_t n = 1 + f; n < q; n += f) {
                if (std::gcd(n, q) != 1) continue;
                const auto a = angle_numerator(label, n);
                if (a && *a != 0) {
                    trivial = false;
                    break;
                }
            }
            if (trivial) return f;
        }
        return q;
    }

    [[nodiscard]] CharacterProfile profile(const CharacterLabel& label) const {
        CharacterProfile p;
        p.label = label;
        p.parity = parity(label);
        p.conductor = conductor(label);
        p.isPrimitive = (p.conductor == modulus());
        return p;
    }

    /// Every character mod q, exponent tuples in lexicographic order.
    [[nodiscard]] std::vector<CharacterLabel> enumerate_all() const {
        std::vector<CharacterLabel> out;
        out.reserve(unit_count());
        CharacterLabel cur = principal();
        const auto& comps = decomposition_.components;
        while (true) {
            out.push_back(cur);
            std::size_t i = comps.size();
            while (i > 0) {
                --i;
                if (++cur.exponents[i] < comps[i].order) break;
                cur.exponents[i] = 0;
                if (i == 0) return out;
            }
            if (comps.empty()) return out;
        }
    }

    /// Characters with conductor exactly q, lexicographic order. Empty for
    /// q in {1, 2}: mod 1 only the trivial convention exists and mod 2 the
    /// group is trivial, so neither carries a primitive character.
    [[nodiscard]] std::vector<CharacterLabel> enumerate_primitive() const {
        std::vector<CharacterLabel> out;
        if (modulus() <= 2) return out;
        for (auto& label : enumerate_all())
            if (conductor(label) == modulus()) out.push_back(std::move(label));
        return out;
    }

private:
    [[nodiscard]] std::vector<std::uint64_t> compute_divisors() const {
        std::vector<std::uint64_t> divs{1};
        for (const auto& [p, e] : factorization_.factors) {
            const std::size_t n = divs.size();
            std::uint64_t pk = 1;
            for (std::uint32_t j = 1; j <= e; ++j) {
                pk *= p;
                for (std::size_t i = 0; i < n; ++i) divs.push_back(divs[i] * pk);
            }
        }
        std::sort(divs.begin(), divs.end());
        return divs;
    }

    Factorization factorization_;
    GroupDecomposition decomposition_;
    std::vector<DlogTable> tables_;
    std::uint64_t angle_den_ = 1;
    std::vector<std::uint64_t> strides_;  ///< L / d_i per component
    std::vector<std::uint64_t> divisors_;
};

/// A character bound to its group with strides premultiplied by the label
/// exponents: the O(1)-per-lookup evaluation path used by every O(q) scan.
class BoundCharacter {
public:
    BoundCharacter(const CharacterGroup& group, const CharacterLabel& label)
        : group_(&group), label_(label) {
        group.validate(label);
        const auto& comps = group.decomposition().components;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            weights_.push_back(static_cast<std::uint64_t>(label.exponents[i]) *
                               (group.angle_denominator() / comps[i].order) %
                               group.angle_denominator());
        }
        // q == 2 (mod 4): the 2-part contributes no component, so even n
        // would slip past the table lookups.
        reject_even_ = (group.modulus() % 4 == 2);
    }

    [[nodiscard]] const CharacterLabel& label() const { return label_; }
    [[nodiscard]] const CharacterGroup& group() const { return *group_; }

    /// Angle numerator over L for the residue n (no gcd precheck; relies on
    /// the dlog tables to flag non-units).
    [[nodiscard]] std::optional<std::uint64_t> angle_num(std::uint64_t n) const {
        if (reject_even_ && (n & 1) == 0) return std::nullopt;
        const auto& tables = group_->dlog_tables();
        const std::uint64_t L = group_->angle_denominator();
        std::uint64_t num = 0;
        for (std::size_t i = 0; i < tables.size(); ++i) {
            const std::uint32_t t = tables[i].exponent_of[n % tables[i].componentModulus];
            if (t == DlogTable::kNonUnit) return std::nullopt;
            num = (num + weights_[i] * t) % L;
        }
        return num;
    }

    /// chi(n) as a complex value via the shared root table (roots over L).
    [[nodiscard]] std::complex<double> value(std::uint64_t n, const RootTable& roots) const {
        const auto a = angle_num(n);
        if (!a) return {0.0, 0.0};
        return roots[*a];
    }

private:
    const CharacterGroup* group_;
    CharacterLabel label_;
    std::vector<std::uint64_t> weights_;  ///< k_i * (L / d_i) mod L
    bool reject_even_ = false;
};

/// Convenience wrappers matching the one-shot operation surface.
inline std::optional<UnitAngle> evaluate(const CharacterLabel& label, std::int64_t n) {
    return CharacterGroup(label.q).evaluate(label, n);
}

inline Parity parity(const CharacterLabel& label) {
    return CharacterGroup(label.q).parity(label);
}

inline std::uint64_t conductor(const CharacterLabel& label) {
    return CharacterGroup(label.q).conductor(label);
}

inline std::vector<CharacterLabel> enumerate_primitive(std::uint64_t q) {
    return CharacterGroup(q).enumerate_primitive();
}

}  // namespace pvshort
