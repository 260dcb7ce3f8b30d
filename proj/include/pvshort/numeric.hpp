#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace pvshort {

/// Neumaier-compensated accumulator. The carry keeps the low-order bits a
/// plain sum would drop, so long unit-magnitude sums stay accurate to a few
/// ulps of the true value.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    [[nodiscard]] double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

/// Compensated accumulator for complex terms (independent real/imag parts).
class ComplexSum {
public:
    void add(std::complex<double> z) noexcept {
        re_.add(z.real());
        im_.add(z.imag());
    }
    [[nodiscard]] std::complex<double> value() const noexcept {
        return {re_.value(), im_.value()};
    }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

/// q^e evaluated in extended precision. All modules share this helper so a
/// bound like q^{1/3+eps} means the same number everywhere.
inline double real_power(std::uint64_t q, double exponent) {
    return static_cast<double>(
        std::pow(static_cast<long double>(q), static_cast<long double>(exponent)));
}

namespace detail {
// Snap x to the nearest integer when it is within a relative 1e-9; real
// exponents like 1/3 land a few ulps off integer boundaries and floor/ceil
// must not be decided by that noise.
inline double snap_to_integer(double x) {
    const double r = std::nearbyint(x);
    if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return r;
    return x;
}
}  // namespace detail

/// floor(x) with integer-boundary snapping.
inline std::int64_t floor_snapped(double x) {
    return static_cast<std::int64_t>(std::floor(detail::snap_to_integer(x)));
}

/// ceil(x) with integer-boundary snapping.
inline std::int64_t ceil_snapped(double x) {
    return static_cast<std::int64_t>(std::ceil(detail::snap_to_integer(x)));
}

/// e(x) = exp(2 pi i x).
inline std::complex<double> unit_exp(double x) {
    const double theta = 2.0 * std::numbers::pi * x;
    return {std::cos(theta), std::sin(theta)};
}

/// Table of the D-th roots of unity: entry k is e(k/D). Shared by every
/// accumulation loop so character values cost one lookup.
class RootTable {
public:
    explicit RootTable(std::uint64_t denominator)
        : roots_(denominator) {
        for (std::uint64_t k = 0; k < denominator; ++k) {
            roots_[k] = unit_exp(static_cast<double>(k) / static_cast<double>(denominator));
        }
    }
    [[nodiscard]] std::complex<double> operator[](std::uint64_t k) const noexcept {
        return roots_[k];
    }
    [[nodiscard]] std::uint64_t denominator() const noexcept { return roots_.size(); }

private:
    std::vector<std::complex<double>> roots_;
};

/// SplitMix64: the counter-based generator used for reproducible character
/// sampling. Stateless by construction; the same (seed, q, i) always maps to
/// the same key regardless of call order or worker count.
inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_keys(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0) noexcept {
    return splitmix64(splitmix64(splitmix64(a) ^ b) ^ c);
}

}  // namespace pvshort
