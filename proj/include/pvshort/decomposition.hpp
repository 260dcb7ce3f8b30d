#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

#include <json.hpp>

#include "pvshort/character.hpp"
#include "pvshort/charsum.hpp"
#include "pvshort/error.hpp"
#include "pvshort/numeric.hpp"
#include "pvshort/triglemma.hpp"

namespace pvshort {

/// Closed-form majorants attached to each part:
///   b1 — small-angle chain majorant for Sigma1 (parity-specific),
///   b2 — the (4/pi or 2)(1/3 - gamma + eps) log q main term for Sigma2,
///   b3 — the Abel (partial-summation) majorant for Sigma3.
struct PartBounds {
    double b1 = 0.0;
    double b2 = 0.0;
    double b3 = 0.0;
};

/// The three-way split of the inverted prefix sum. With
/// w(a) = conj(chi)(a) (e(aN/q) - 1)/a summed over 0 < |a| < q/2:
///   Sigma1: 0 < |a| < q^gamma/(2 pi)      (strict)
///   Sigma2: q^gamma/(2 pi) <= |a| <= q^{1/3+eps}   (boundary integers here)
///   Sigma3: q^{1/3+eps} < |a| < q/2
/// fullInner is the same sum accumulated unsplit, so the partition check is
/// a real regrouping test, not an identity by construction.
struct DecompositionReport {
    CharacterLabel label;
    std::uint64_t q = 0;
    std::uint64_t N = 1;
    double gamma = 0.0;
    double epsilon = 0.0;
    Parity parity = Parity::even;
    std::complex<double> sigma1;
    std::complex<double> sigma2;
    std::complex<double> sigma3;
    std::complex<double> fullInner;
    double directS = 0.0;            ///< |prefix sum at N|
    double reconstructedBound = 0.0; ///< sqrt(q)/(2 pi) (|S1|+|S2|+|S3|)
    double kernelRemainderBound = 0.0;  ///< covers the kernel's O(1) defect exactly
    PartBounds perPartBounds;
    double partitionResidual = 0.0;  ///< |S1+S2+S3 - fullInner|
};

namespace detail {

inline void check_decompose_pre(const CharacterGroup& group, const CharacterLabel& label,
                                std::uint64_t N, double gamma) {
    group.validate(label);
    if (!(gamma >= 0.0 && gamma <= 1.0 / 3.0))
        throw DomainError("decompose: gamma must lie in [0, 1/3]");
    if (N < 1) throw DomainError("decompose: N must be positive");
    const double ceiling = snap_to_integer(real_power(group.modulus(), 1.0 - gamma));
    if (static_cast<double>(N) > ceiling)
        throw HypothesisError("decompose: N > q^{1-gamma} (N=" + std::to_string(N) + ")");
    require_primitive(group, label, "decompose");
}

/// |prefix sum at N| by one compensated scan (chi(q) = 0, so N = q clamps).
inline double direct_prefix_abs(const CharacterGroup& group, const CharacterLabel& label,
                                std::uint64_t N, const RootTable& chi_roots) {
    const BoundCharacter chi(group, label);
    const std::uint64_t stop = std::min(N, group.modulus() - 1);
    ComplexSum acc;
    for (std::uint64_t n = 1; n <= stop; ++n)
        if (const auto a = chi.angle_num(n)) acc.add(chi_roots[*a]);
    return std::abs(acc.value());
}

}  // namespace detail

inline DecompositionReport decompose_sum(const CharacterGroup& group,
                                         const CharacterLabel& label, std::uint64_t N,
                                         double gamma, double epsilon) {
    if (!(epsilon > 0.0)) throw DomainError("decompose: epsilon must be positive");
    detail::check_decompose_pre(group, label, N, gamma);
    const std::uint64_t q = group.modulus();

    DecompositionReport rep;
    rep.label = label;
    rep.q = q;
    rep.N = N;
    rep.gamma = gamma;
    rep.epsilon = epsilon;
    rep.parity = group.parity(label);

    const double A = real_power(q, gamma) / (2.0 * std::numbers::pi);
    const double B = real_power(q, 1.0 / 3.0 + epsilon);
    const CharacterLabel conj_label = group.conjugate(label);
    const BoundCharacter chibar(group, conj_label);
    const RootTable chi_roots(group.angle_denominator());
    const RootTable e_roots(q);
    const std::complex<double> one(1.0, 0.0);

    ComplexSum s1, s2, s3, full;
    CompensatedSum remainder;  // sum over both signs of |e(aN/q)-1| |kernel defect|
    const std::uint64_t half = (q - 1) / 2;
    for (std::uint64_t a = 1; a <= half; ++a) {
        const std::complex<double> eaN = e_roots[a * N % q];
        const double ad = static_cast<double>(a);
        std::complex<double> pair{};
        bool any = false;
        if (const auto k = chibar.angle_num(a)) {
            pair += chi_roots[*k] * (eaN - one) / ad;
            any = true;
        }
        if (const auto k = chibar.angle_num(q - a)) {
            pair += chi_roots[*k] * (std::conj(eaN) - one) / (-ad);
            any = true;
        }
        if (any) {
            full.add(pair);
            if (ad < A) {
                s1.add(pair);
            } else if (ad <= B) {
                s2.add(pair);
            } else {
                s3.add(pair);
            }
        }
        // Kernel defect r(a) = 1/(1 - e(-a/q)) - q/(2 pi i a); |r(-a)| = |r(a)|.
        const std::complex<double> kernel = one / (one - std::conj(e_roots[a]));
        const std::complex<double> main(0.0, -static_cast<double>(q) /
                                                 (2.0 * std::numbers::pi * ad));
        remainder.add(2.0 * std::abs(eaN - one) * std::abs(kernel - main));
    }

    rep.sigma1 = s1.value();
    rep.sigma2 = s2.value();
    rep.sigma3 = s3.value();
    rep.fullInner = full.value();
    rep.partitionResidual =
        std::abs(rep.sigma1 + rep.sigma2 + rep.sigma3 - rep.fullInner);
    rep.directS = detail::direct_prefix_abs(group, label, N, chi_roots);

    const double sqrt_q = std::sqrt(static_cast<double>(q));
    rep.reconstructedBound = sqrt_q / (2.0 * std::numbers::pi) *
                             (std::abs(rep.sigma1) + std::abs(rep.sigma2) +
                              std::abs(rep.sigma3));
    rep.kernelRemainderBound = remainder.value() / sqrt_q;

    // b1: termwise small-angle majorant over 1 <= a < A (all |2 pi a N / q| < 1
    // there when N <= q^{1-gamma}).
    {
        CompensatedSum b1;
        const double rate = 2.0 * std::numbers::pi * static_cast<double>(N) /
                            static_cast<double>(q);
        for (std::uint64_t a = 1; static_cast<double>(a) < A; ++a) {
            const double x = rate * static_cast<double>(a);
            if (rep.parity == Parity::even) {
                b1.add(2.0 * x / static_cast<double>(a));
            } else {
                b1.add(x * x / static_cast<double>(a));
            }
        }
        rep.perPartBounds.b1 = b1.value();
    }
    const double scale = (1.0 / 3.0 - gamma + epsilon) * std::log(static_cast<double>(q));
    rep.perPartBounds.b2 =
        (rep.parity == Parity::even) ? (4.0 / std::numbers::pi) * scale : 2.0 * scale;
    // b3 is filled by sigma3_via_partial_summation when requested together;
    // the standalone report carries the trivial harmonic majorant.
    {
        CompensatedSum b3;
        const std::int64_t lo = floor_snapped(B) + 1;
        for (std::int64_t a = lo; a <= static_cast<std::int64_t>(half); ++a)
            b3.add(4.0 / static_cast<double>(a));
        rep.perPartBounds.b3 = b3.value();
    }
    return rep;
}

/// The one-sided parity form of Sigma1 over 1 <= a < q^gamma/(2 pi):
///   even chi: 2i  sum conj(chi)(a) sin(2 pi a N / q)/a
///   odd  chi: -2  sum conj(chi)(a) (1 - cos(2 pi a N / q))/a
/// Algebraically identical to the two-sided Sigma1 via chi(-a) = chi(-1)chi(a).
inline std::complex<double> sigma1_parity_form(const CharacterGroup& group,
                                               const CharacterLabel& label, std::uint64_t N,
                                               double gamma) {
    detail::check_decompose_pre(group, label, N, gamma);
    const std::uint64_t q = group.modulus();
    const double A = real_power(q, gamma) / (2.0 * std::numbers::pi);
    const CharacterLabel conj_label = group.conjugate(label);
    const BoundCharacter chibar(group, conj_label);
    const RootTable chi_roots(group.angle_denominator());
    const RootTable e_roots(q);
    const Parity par = group.parity(label);

    ComplexSum acc;
    for (std::uint64_t a = 1; static_cast<double>(a) < A && a <= (q - 1) / 2; ++a) {
        const auto k = chibar.angle_num(a);
        if (!k) continue;
        const std::complex<double> eaN = e_roots[a * N % q];
        const double ad = static_cast<double>(a);
        if (par == Parity::even) {
            acc.add(std::complex<double>(0.0, 2.0) * chi_roots[*k] * eaN.imag() / ad);
        } else {
            acc.add(-2.0 * chi_roots[*k] * (1.0 - eaN.real()) / ad);
        }
    }
    return acc.value();
}

/// Executable witnesses for the small-angle chain: |sin x| <= |x| and
/// 1 - cos x <= x^2/2, both required with |x| < 1.
struct SmallAngleWitness {
    bool sinOk = false;
    bool cosOk = false;
};

inline SmallAngleWitness small_angle_bounds(double x) {
    if (!(std::abs(x) < 1.0))
        throw DomainError("small_angle_bounds: |x| < 1 required");
    SmallAngleWitness w;
    w.sinOk = std::abs(std::sin(x)) <= std::abs(x);
    w.cosOk = (1.0 - std::cos(x)) <= x * x / 2.0;
    return w;
}

/// |Sigma2| against its main term, plus the triangle-inequality majorant on
/// the shifted range [q^gamma/(2 pi), q^{1/3+eps}] and the same sum routed
/// through the lemma window [q^gamma, q^{1/3+eps}], so the start-point
/// discrepancy is itself a measured number.
struct Sigma2Bound {
    double value = 0.0;      ///< |Sigma2|
    double mainTerm = 0.0;   ///< b2
    double residual = 0.0;   ///< value - mainTerm
    double majorant = 0.0;   ///< 2 sum over the shifted range (termwise bound)
    double lemmaRangeMajorant = 0.0;  ///< 2 * lemma lhs at alpha = 2 pi N / q
    double startShift = 0.0;          ///< majorant - lemmaRangeMajorant
};

inline Sigma2Bound sigma2_bound(const CharacterGroup& group, const CharacterLabel& label,
                                std::uint64_t N, double gamma, double epsilon) {
    const DecompositionReport rep = decompose_sum(group, label, N, gamma, epsilon);
    const std::uint64_t q = group.modulus();
    Sigma2Bound out;
    out.value = std::abs(rep.sigma2);
    out.mainTerm = rep.perPartBounds.b2;
    out.residual = out.value - out.mainTerm;

    const double A = real_power(q, gamma) / (2.0 * std::numbers::pi);
    const double B = real_power(q, 1.0 / 3.0 + epsilon);
    const double alpha = 2.0 * std::numbers::pi * static_cast<double>(N) /
                         static_cast<double>(q);
    CompensatedSum major;
    const std::int64_t lo = std::max<std::int64_t>(1, ceil_snapped(A));
    const std::int64_t hi = floor_snapped(B);
    for (std::int64_t a = lo; a <= hi; ++a) {
        const double x = alpha * static_cast<double>(a);
        if (rep.parity == Parity::even) {
            major.add(2.0 * std::abs(std::sin(x)) / static_cast<double>(a));
        } else {
            const double s = std::sin(x / 2.0);
            major.add(2.0 * (2.0 * s * s) / static_cast<double>(a));
        }
    }
    out.majorant = major.value();
    const LemmaBoundReport lemma = (rep.parity == Parity::even)
                                       ? lemma_eq2(q, gamma, epsilon, alpha)
                                       : lemma_eq1(q, gamma, epsilon, alpha);
    out.lemmaRangeMajorant = 2.0 * lemma.lhs;
    out.startShift = out.majorant - out.lemmaRangeMajorant;
    return out;
}

/// |sum_{n<=x} chi(n) e(alpha n)| and its normalization by x / log q. The
/// normalized column is the empirically measured implied constant.
struct HildebrandRecord {
    CharacterLabel label;
    double x = 1.0;
    double alpha = 0.0;
    double value = 0.0;
    double normalized = 0.0;  ///< value * log q / x
};

inline HildebrandRecord hildebrand_quantity(const CharacterGroup& group,
                                            const CharacterLabel& label, double x,
                                            double alpha) {
    group.validate(label);
    const std::uint64_t q = group.modulus();
    if (!(x >= 1.0 && x <= static_cast<double>(q)))
        throw DomainError("hildebrand_quantity: need 1 <= x <= q");
    const BoundCharacter chi(group, label);
    const RootTable chi_roots(group.angle_denominator());
    const std::uint64_t hi = static_cast<std::uint64_t>(floor_snapped(x));

    ComplexSum acc;
    for (std::uint64_t n = 1; n <= hi; ++n) {
        const auto k = chi.angle_num(n);
        if (!k) continue;
        const double frac = std::fmod(alpha * static_cast<double>(n), 1.0);
        acc.add(chi_roots[*k] * unit_exp(frac));
    }
    HildebrandRecord rec;
    rec.label = label;
    rec.x = x;
    rec.alpha = alpha;
    rec.value = std::abs(acc.value());
    rec.normalized = rec.value * std::log(static_cast<double>(q)) / x;
    return rec;
}

/// Sigma3 against two majorants built from one cumulative scan:
///   abelMajorant  — triangle bound on the exact summation-by-parts identity
///                   over the two-sided cumulative sums U(x); provably >=
///                   |Sigma3| up to round-off,
///   paperMajorant — log q * max over integer cut points of |T(x)|/x with
///                   T the one-sided cumulative sum; reported for comparison.
/// abelResidual is |Sigma3 - (Abel identity)| and must be round-off small.
struct Sigma3Result {
    double value = 0.0;  ///< |Sigma3|
    double abelMajorant = 0.0;
    double paperMajorant = 0.0;
    double kernelMax = 0.0;  ///< max_x |T(x)|/x
    double abelResidual = 0.0;
};

inline Sigma3Result sigma3_via_partial_summation(const CharacterGroup& group,
                                                 const CharacterLabel& label, std::uint64_t N,
                                                 double epsilon) {
    group.validate(label);
    detail::require_primitive(group, label, "sigma3_via_partial_summation");
    if (!(epsilon > 0.0)) throw DomainError("sigma3: epsilon must be positive");
    const std::uint64_t q = group.modulus();
    if (N < 1 || N > q) throw DomainError("sigma3: need 1 <= N <= q");

    const double B = real_power(q, 1.0 / 3.0 + epsilon);
    const std::uint64_t half = (q - 1) / 2;
    const std::uint64_t firstB = static_cast<std::uint64_t>(
        std::min<std::int64_t>(floor_snapped(B), static_cast<std::int64_t>(half)));
    const std::uint64_t a0 = static_cast<std::uint64_t>(floor_snapped(B)) + 1;

    Sigma3Result out;
    if (a0 > half) return out;  // empty Sigma3

    const CharacterLabel conj_label = group.conjugate(label);
    const BoundCharacter chibar(group, conj_label);
    const RootTable chi_roots(group.angle_denominator());
    const RootTable e_roots(q);
    const std::complex<double> one(1.0, 0.0);

    ComplexSum T;          // one-sided cumulative sum of chibar(a)(e(aN/q)-1)
    ComplexSum U;          // two-sided combined cumulative sum
    ComplexSum direct;     // Sigma3 itself
    ComplexSum abel_re;    // Abel reconstruction
    CompensatedSum abel_majorant;
    std::complex<double> U_prev{};  // U(a0 - 1)

    for (std::uint64_t a = 1; a <= half; ++a) {
        const std::complex<double> eaN = e_roots[a * N % q];
        std::complex<double> wp{}, wm{};
        if (const auto k = chibar.angle_num(a)) wp = chi_roots[*k] * (eaN - one);
        if (const auto k = chibar.angle_num(q - a)) wm = chi_roots[*k] * (std::conj(eaN) - one);
        T.add(wp);
        U.add(wp - wm);  // u(a): the net coefficient of 1/a across +-a
        const double ad = static_cast<double>(a);

        if (a >= a0) direct.add((wp - wm) / ad);

        if (a == a0 - 1) U_prev = U.value();
        // Paper-shaped kernel max over x in [B, q/2]; the partial interval
        // [B, a0) contributes |T(floor B)|/B, full intervals contribute
        // |T(x)|/x at each integer x.
        if (a == firstB && static_cast<double>(firstB) <= B)
            out.kernelMax = std::max(out.kernelMax, std::abs(T.value()) / B);
        if (a >= a0) out.kernelMax = std::max(out.kernelMax, std::abs(T.value()) / ad);
        // Abel pieces: U(x)/(x(x+1)) for x = a0..half-1, plus the endpoints.
        if (a >= a0 && a < half) {
            const std::complex<double> Ux = U.value();
            abel_re.add(Ux / (ad * (ad + 1.0)));
            abel_majorant.add(std::abs(Ux) / (ad * (ad + 1.0)));
        }
    }
    const std::complex<double> U_last = U.value();
    const double a0d = static_cast<double>(a0);
    const double halfd = static_cast<double>(half);
    abel_re.add(U_last / halfd);
    abel_re.add(-U_prev / a0d);
    abel_majorant.add(std::abs(U_last) / halfd);
    abel_majorant.add(std::abs(U_prev) / a0d);

    out.value = std::abs(direct.value());
    out.abelMajorant = abel_majorant.value();
    out.paperMajorant = std::log(static_cast<double>(q)) * out.kernelMax;
    out.abelResidual = std::abs(direct.value() - abel_re.value());
    return out;
}

/// S(N, chi)/(sqrt(q) log q) against c (1/3 - gamma + eps), with c = 2/pi^2
/// for even chi and 1/pi for odd chi. The comparison is a report: at desk
/// scale the inequality is a trend, not a theorem.
struct TheoremRatioResult {
    double ratio = 0.0;
    double bound = 0.0;
    Parity parity = Parity::even;
};

inline TheoremRatioResult theorem_ratio(const CharacterGroup& group,
                                        const CharacterLabel& label, std::uint64_t N,
                                        double gamma, double epsilon) {
    if (!(epsilon > 0.0)) throw DomainError("theorem_ratio: epsilon must be positive");
    detail::check_decompose_pre(group, label, N, gamma);
    const std::uint64_t q = group.modulus();
    const RootTable chi_roots(group.angle_denominator());
    TheoremRatioResult r;
    r.parity = group.parity(label);
    const double S = detail::direct_prefix_abs(group, label, N, chi_roots);
    r.ratio = S / (std::sqrt(static_cast<double>(q)) * std::log(static_cast<double>(q)));
    const double c = (r.parity == Parity::even)
                         ? 2.0 / (std::numbers::pi * std::numbers::pi)
                         : 1.0 / std::numbers::pi;
    r.bound = c * (1.0 / 3.0 - gamma + epsilon);
    return r;
}

/// JSON serialization of a decomposition report (round-trip safe).
inline nlohmann::json to_json(const DecompositionReport& r) {
    return nlohmann::json{
        {"label", to_string(r.label)},
        {"q", r.q},
        {"N", r.N},
        {"gamma", r.gamma},
        {"epsilon", r.epsilon},
        {"parity", to_string(r.parity)},
        {"sigma1", {r.sigma1.real(), r.sigma1.imag()}},
        {"sigma2", {r.sigma2.real(), r.sigma2.imag()}},
        {"sigma3", {r.sigma3.real(), r.sigma3.imag()}},
        {"full_inner", {r.fullInner.real(), r.fullInner.imag()}},
        {"direct_s", r.directS},
        {"reconstructed_bound", r.reconstructedBound},
        {"kernel_remainder_bound", r.kernelRemainderBound},
        {"bounds", {r.perPartBounds.b1, r.perPartBounds.b2, r.perPartBounds.b3}},
        {"partition_residual", r.partitionResidual},
    };
}

inline DecompositionReport decomposition_from_json(const nlohmann::json& j) {
    DecompositionReport r;
    r.label = parse_label(j.at("label").get<std::string>());
    r.q = j.at("q").get<std::uint64_t>();
    r.N = j.at("N").get<std::uint64_t>();
    r.gamma = j.at("gamma").get<double>();
    r.epsilon = j.at("epsilon").get<double>();
    r.parity = j.at("parity").get<std::string>() == "even" ? Parity::even : Parity::odd;
    const auto cx = [&](const char* key) {
        const auto& v = j.at(key);
        return std::complex<double>(v.at(0).get<double>(), v.at(1).get<double>());
    };
    r.sigma1 = cx("sigma1");
    r.sigma2 = cx("sigma2");
    r.sigma3 = cx("sigma3");
    r.fullInner = cx("full_inner");
    r.directS = j.at("direct_s").get<double>();
    r.reconstructedBound = j.at("reconstructed_bound").get<double>();
    r.kernelRemainderBound = j.at("kernel_remainder_bound").get<double>();
    r.perPartBounds.b1 = j.at("bounds").at(0).get<double>();
    r.perPartBounds.b2 = j.at("bounds").at(1).get<double>();
    r.perPartBounds.b3 = j.at("bounds").at(2).get<double>();
    r.partitionResidual = j.at("partition_residual").get<double>();
    return r;
}

}  // namespace pvshort
