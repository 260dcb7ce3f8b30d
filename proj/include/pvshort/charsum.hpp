#pragma once

#include <complex>
#include <cstdint>
#include <ostream>
#include <vector>

#include "pvshort/character.hpp"
#include "pvshort/error.hpp"
#include "pvshort/io.hpp"
#include "pvshort/numeric.hpp"

namespace pvshort {

/// All prefix sums sum_{n<=N} chi(n) for N = 1..q-1, kept as signed complex
/// values (their moduli are the classical S(N, chi)).
struct SumProfile {
    CharacterLabel label;
    std::vector<std::complex<double>> partials;  ///< index N-1 holds the sum to N
    double maxAbs = 0.0;
    std::uint64_t argmaxN = 1;  ///< smallest N attaining maxAbs

    [[nodiscard]] std::complex<double> at(std::uint64_t N) const { return partials[N - 1]; }
};

/// One O(q) pass with compensated accumulation.
inline SumProfile prefix_sums(const CharacterGroup& group, const CharacterLabel& label) {
    group.validate(label);
    const std::uint64_t q = group.modulus();
    if (q < 3) throw DomainError("prefix_sums: q >= 3 required");
    const BoundCharacter chi(group, label);
    const RootTable roots(group.angle_denominator());

    SumProfile profile;
    profile.label = label;
    profile.partials.reserve(q - 1);
    ComplexSum acc;
    for (std::uint64_t n = 1; n < q; ++n) {
        if (const auto a = chi.angle_num(n)) acc.add(roots[*a]);
        const auto s = acc.value();
        profile.partials.push_back(s);
        const double mag = std::abs(s);
        if (mag > profile.maxAbs) {
            profile.maxAbs = mag;
            profile.argmaxN = n;
        }
    }
    return profile;
}

/// Streaming variant: visit(N, S_N) for N = 1..q-1 without storing the
/// profile. Used by the survey scans.
template <typename Visitor>
void scan_prefix_sums(const CharacterGroup& group, const CharacterLabel& label,
                      const RootTable& roots, Visitor&& visit) {
    const std::uint64_t q = group.modulus();
    const BoundCharacter chi(group, label);
    ComplexSum acc;
    for (std::uint64_t n = 1; n < q; ++n) {
        if (const auto a = chi.angle_num(n)) acc.add(roots[*a]);
        visit(n, acc.value());
    }
}

struct GaussSumResult {
    CharacterLabel label;
    std::complex<double> value;
    double modulusCheck = 0.0;  ///< |value|^2 - q; near zero iff chi primitive
};

/// tau(chi) = sum_{a mod q} chi(a) e(a/q). |tau| = sqrt(q) exactly when chi
/// is primitive; for imprimitive chi the modulusCheck is reported as-is.
inline GaussSumResult gauss_sum(const CharacterGroup& group, const CharacterLabel& label) {
    group.validate(label);
    const std::uint64_t q = group.modulus();
    const BoundCharacter chi(group, label);
    const RootTable chi_roots(group.angle_denominator());
    const RootTable e_roots(q);

    ComplexSum acc;
    for (std::uint64_t a = 1; a < q; ++a) {
        if (const auto k = chi.angle_num(a)) acc.add(chi_roots[*k] * e_roots[a]);
    }
    GaussSumResult r;
    r.label = label;
    r.value = (q == 1) ? std::complex<double>(1.0, 0.0) : acc.value();
    r.modulusCheck = std::norm(r.value) - static_cast<double>(q);
    return r;
}

namespace detail {

inline void require_primitive(const CharacterGroup& group, const CharacterLabel& label,
                              const char* op) {
    if (group.conductor(label) != group.modulus())
        throw ImprimitiveError(std::string(op) + ": character " + to_string(label) +
                               " is imprimitive (the identity requires a primitive character)");
}

}  // namespace detail

/// Finite-Fourier reconstruction of the prefix sum: for primitive chi,
///
///   sum_{n<=N} chi(n) = (1/tau(conj chi)) * sum_{0<|a|<q/2}
///                        conj(chi)(a) * (e(aN/q) - 1) / (1 - e(-a/q)).
///
/// An exact identity; deviations from the direct prefix sum are pure
/// round-off. This is the engine's strongest internal oracle.
inline std::complex<double> reconstruct_via_inversion(const CharacterGroup& group,
                                                      const CharacterLabel& label,
                                                      std::uint64_t N) {
    group.validate(label);
    const std::uint64_t q = group.modulus();
    if (N < 1 || N > q - 1) throw DomainError("reconstruct_via_inversion: need 1 <= N <= q-1");
    detail::require_primitive(group, label, "reconstruct_via_inversion");

    const CharacterLabel conj_label = group.conjugate(label);
    const BoundCharacter chibar(group, conj_label);
    const RootTable chi_roots(group.angle_denominator());
    const RootTable e_roots(q);
    const std::complex<double> tau = gauss_sum(group, conj_label).value;
    const std::complex<double> one(1.0, 0.0);

    ComplexSum acc;
    const std::uint64_t half = (q - 1) / 2;
    for (std::uint64_t a = 1; a <= half; ++a) {
        const std::complex<double> ea = e_roots[a];            // e(a/q)
        const std::complex<double> eaN = e_roots[a * N % q];   // e(aN/q)
        if (const auto k = chibar.angle_num(a))
            acc.add(chi_roots[*k] * (eaN - one) / (one - std::conj(ea)));
        if (const auto k = chibar.angle_num(q - a))
            acc.add(chi_roots[*k] * (std::conj(eaN) - one) / (one - ea));
    }
    return acc.value() / tau;
}

/// Batched form of the same identity: the reconstruction for every
/// N = 1..q-1 (index N-1). Kernel factors are computed once per character.
inline std::vector<std::complex<double>> inversion_profile(const CharacterGroup& group,
                                                           const CharacterLabel& label) {
    group.validate(label);
    const std::uint64_t q = group.modulus();
    detail::require_primitive(group, label, "inversion_profile");

    const CharacterLabel conj_label = group.conjugate(label);
    const BoundCharacter chibar(group, conj_label);
    const RootTable chi_roots(group.angle_denominator());
    const RootTable e_roots(q);
    const std::complex<double> tau = gauss_sum(group, conj_label).value;
    const std::complex<double> one(1.0, 0.0);

    const std::uint64_t half = (q - 1) / 2;
    // K[a] = chibar(a)/(1 - e(-a/q)), Kneg[a] = chibar(-a)/(1 - e(a/q)).
    std::vector<std::complex<double>> K(half + 1), Kneg(half + 1);
    for (std::uint64_t a = 1; a <= half; ++a) {
        const std::complex<double> ea = e_roots[a];
        const auto kp = chibar.angle_num(a);
        const auto km = chibar.angle_num(q - a);
        K[a] = kp ? chi_roots[*kp] / (one - std::conj(ea)) : std::complex<double>{};
        Kneg[a] = km ? chi_roots[*km] / (one - ea) : std::complex<double>{};
    }

    std::vector<std::complex<double>> out(q - 1);
    for (std::uint64_t N = 1; N < q; ++N) {
        ComplexSum acc;
        for (std::uint64_t a = 1; a <= half; ++a) {
            const std::complex<double> eaN = e_roots[a * N % q];
            acc.add(K[a] * (eaN - one));
            acc.add(Kneg[a] * (std::conj(eaN) - one));
        }
        out[N - 1] = acc.value() / tau;
    }
    return out;
}

/// |1/(1 - e(-a/q)) - q/(2 pi i a)|: the measured size of the kernel's O(1)
/// approximation defect.
inline double kernel_approx_error(std::uint64_t q, std::int64_t a) {
    if (a % static_cast<std::int64_t>(q) == 0)
        throw DomainError("kernel_approx_error: a == 0 (mod q) is a pole");
    if (2 * std::abs(a) >= static_cast<std::int64_t>(q))
        throw DomainError("kernel_approx_error: need 0 < |a| < q/2");
    const std::complex<double> one(1.0, 0.0);
    const double x = -static_cast<double>(a) / static_cast<double>(q);
    const std::complex<double> kernel = one / (one - unit_exp(x));
    const std::complex<double> main(0.0,
                                    -static_cast<double>(q) /
                                        (2.0 * std::numbers::pi * static_cast<double>(a)));
    return std::abs(kernel - main);
}

/// CSV export with columns N, re, im, abs.
inline void write_profile_csv(const SumProfile& profile, std::ostream& out) {
    out << "N,re,im,abs\n";
    for (std::size_t i = 0; i < profile.partials.size(); ++i) {
        const auto& s = profile.partials[i];
        out << csv_row({format_u64(i + 1), format_double(s.real()), format_double(s.imag()),
                        format_double(std::abs(s))});
    }
}

}  // namespace pvshort
