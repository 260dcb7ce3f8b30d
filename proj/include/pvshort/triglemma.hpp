#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "pvshort/error.hpp"
#include "pvshort/numeric.hpp"

namespace pvshort {

/// Work cap for direct trigonometric summation.
inline constexpr std::uint64_t kSigmaWorkCap = 10'000'000;

/// sigma(a,b)(alpha) = sum of cos(alpha*n)/n over integers a <= n <= b.
/// Real bounds select the integer window ceil(lower)..floor(upper); an empty
/// window sums to zero.
struct TrigSumSpec {
    double lower = 1.0;
    double upper = 1.0;
    double alpha = 0.0;
};

inline double sigma(const TrigSumSpec& spec) {
    if (!(spec.upper <= static_cast<double>(kSigmaWorkCap)))
        throw RangeError("sigma: upper bound exceeds the work cap");
    const std::int64_t lo = std::max<std::int64_t>(1, ceil_snapped(spec.lower));
    const std::int64_t hi = floor_snapped(spec.upper);
    CompensatedSum acc;
    for (std::int64_t n = lo; n <= hi; ++n)
        acc.add(std::cos(spec.alpha * static_cast<double>(n)) / static_cast<double>(n));
    return acc.value();
}

/// The v = p(2m+1) split of the window [q^gamma, q^{1/3+eps}]:
///   mBar = ceil(q^gamma), pBar = floor(q^{1/3+eps}/(2 mBar + 1)) made odd by
///   decrementing an even floor, vBar = pBar(2 mBar + 1).
/// Requires q^{1/3+eps} >= 5 q^gamma + 6; with that, vBar <= q^{1/3+eps} and
/// the leftover tail is at most 4 mBar + 2.
struct SplitPoints {
    std::uint64_t q = 0;
    double gamma = 0.0;
    double epsilon = 0.0;
    std::uint64_t mBar = 1;
    std::uint64_t pBar = 1;  ///< odd
    std::uint64_t vBar = 1;
    double lowerReal = 1.0;  ///< q^gamma
    double upperReal = 1.0;  ///< q^{1/3+eps}
};

inline bool split_precondition_holds(std::uint64_t q, double gamma, double epsilon) {
    return real_power(q, 1.0 / 3.0 + epsilon) >= 5.0 * real_power(q, gamma) + 6.0;
}

inline SplitPoints split_points(std::uint64_t q, double gamma, double epsilon) {
    if (q == 0) throw DomainError("split_points: q must be positive");
    if (!(gamma >= 0.0 && gamma <= 1.0 / 3.0))
        throw DomainError("split_points: gamma must lie in [0, 1/3]");
    if (!(epsilon > 0.0)) throw DomainError("split_points: epsilon must be positive");
    const double A = real_power(q, gamma);
    const double B = real_power(q, 1.0 / 3.0 + epsilon);
    if (!(B >= 5.0 * A + 6.0))
        throw RangeTooShortError(
            "split_points: q^{1/3+eps} < 5 q^gamma + 6; widen epsilon or lower gamma");

    SplitPoints sp;
    sp.q = q;
    sp.gamma = gamma;
    sp.epsilon = epsilon;
    sp.lowerReal = A;
    sp.upperReal = B;
    sp.mBar = static_cast<std::uint64_t>(ceil_snapped(A));
    const std::uint64_t two_m_plus_1 = 2 * sp.mBar + 1;
    const auto f = floor_snapped(B / static_cast<double>(two_m_plus_1));
    const std::int64_t p = (f % 2 == 0) ? f - 1 : f;
    if (p < 1) throw InternalError("split_points: nonpositive pBar despite precondition");
    sp.pBar = static_cast<std::uint64_t>(p);
    sp.vBar = sp.pBar * two_m_plus_1;
    return sp;
}

/// cos-sum floor over [m+1, p(2m+1)]: value, the -5 - 1/(2q) floor, and
/// whether it holds.
struct Eq4Check {
    std::uint64_t m = 1;
    std::uint64_t p = 1;
    std::uint64_t v = 3;
    double alpha = 0.0;
    double value = 0.0;
    double bound = 0.0;
    bool holds = false;
};

inline Eq4Check lower_bound_eq4_check(std::uint64_t m, std::uint64_t p, double alpha,
                                      std::uint64_t q) {
    if (m == 0) throw DomainError("lower_bound_eq4_check: m must be positive");
    if (p == 0 || p % 2 == 0)
        throw DomainError("lower_bound_eq4_check: p must be a positive odd integer");
    if (q == 0) throw DomainError("lower_bound_eq4_check: q must be positive");
    Eq4Check r;
    r.m = m;
    r.p = p;
    r.v = p * (2 * m + 1);
    r.alpha = alpha;
    r.value = sigma({static_cast<double>(m + 1), static_cast<double>(r.v), alpha});
    r.bound = -5.0 - 1.0 / (2.0 * static_cast<double>(q));
    r.holds = r.value >= r.bound;
    return r;
}

/// Floor for the full window [q^gamma, q^{1/3+eps}], assembled from the
/// eq4 floor, the short-tail bound (<= 2) and |cos(alpha vBar)/vBar| <= 1:
/// chainBound = -8 - 1/(2q). Also re-derives the window sum through the
/// v-split regrouping and reports the (pure round-off) residual.
struct Eq3Check {
    SplitPoints points;
    double alpha = 0.0;
    double value = 0.0;
    double chainBound = 0.0;
    bool holds = false;
    double splitResidual = 0.0;
};

inline Eq3Check sigma_lower_bound_eq3(std::uint64_t q, double gamma, double epsilon,
                                      double alpha) {
    Eq3Check r;
    r.points = split_points(q, gamma, epsilon);
    r.alpha = alpha;
    const double A = r.points.lowerReal;
    const double B = r.points.upperReal;
    const double v = static_cast<double>(r.points.vBar);
    r.value = sigma({A, B, alpha});
    const double left = sigma({A, v, alpha});
    const double right = sigma({v, B, alpha});
    const double corner = std::cos(alpha * v) / v;
    r.splitResidual = std::abs(r.value - (left + right - corner));
    r.chainBound = -8.0 - 1.0 / (2.0 * static_cast<double>(q));
    r.holds = r.value >= r.chainBound;
    return r;
}

/// One bound comparison for the window [q^gamma, q^{1/3+eps}]: measured lhs,
/// the (1/3 - gamma + eps) log q main term (scaled by 2/pi for the |sin|
/// variant), and the residual lhs - mainTerm.
struct LemmaBoundReport {
    std::uint64_t q = 0;
    double gamma = 0.0;
    double epsilon = 0.0;
    double alpha = 0.0;
    double lhs = 0.0;
    double mainTerm = 0.0;
    double residual = 0.0;
};

/// lhs = sum (1 - cos(alpha n))/n, evaluated as 2 sin^2(alpha n / 2)/n so
/// every term is exactly nonnegative.
inline LemmaBoundReport lemma_eq1(std::uint64_t q, double gamma, double epsilon, double alpha) {
    const SplitPoints sp = split_points(q, gamma, epsilon);
    LemmaBoundReport r{q, gamma, epsilon, alpha, 0.0, 0.0, 0.0};
    const std::int64_t lo = std::max<std::int64_t>(1, ceil_snapped(sp.lowerReal));
    const std::int64_t hi = floor_snapped(sp.upperReal);
    CompensatedSum acc;
    for (std::int64_t n = lo; n <= hi; ++n) {
        const double s = std::sin(alpha * static_cast<double>(n) / 2.0);
        acc.add(2.0 * s * s / static_cast<double>(n));
    }
    r.lhs = acc.value();
    r.mainTerm = (1.0 / 3.0 - gamma + epsilon) * std::log(static_cast<double>(q));
    r.residual = r.lhs - r.mainTerm;
    return r;
}

/// lhs = sum |sin(alpha n)|/n with |sin| evaluated directly.
inline LemmaBoundReport lemma_eq2(std::uint64_t q, double gamma, double epsilon, double alpha) {
    const SplitPoints sp = split_points(q, gamma, epsilon);
    LemmaBoundReport r{q, gamma, epsilon, alpha, 0.0, 0.0, 0.0};
    const std::int64_t lo = std::max<std::int64_t>(1, ceil_snapped(sp.lowerReal));
    const std::int64_t hi = floor_snapped(sp.upperReal);
    CompensatedSum acc;
    for (std::int64_t n = lo; n <= hi; ++n)
        acc.add(std::abs(std::sin(alpha * static_cast<double>(n))) / static_cast<double>(n));
    r.lhs = acc.value();
    r.mainTerm = (2.0 / std::numbers::pi) * (1.0 / 3.0 - gamma + epsilon) *
                 std::log(static_cast<double>(q));
    r.residual = r.lhs - r.mainTerm;
    return r;
}

/// Truncated cosine expansion of |sin theta|:
///   2/pi - (4/pi) sum_{m=1}^{M} cos(2 m theta)/(4 m^2 - 1),
/// with the closed-form tail bound (2/pi)/(2M+1) attached. The series exists
/// to validate the derivation; |sin| itself is evaluated directly elsewhere.
struct FourierApprox {
    double approx = 0.0;
    double truncationBound = 0.0;
};

inline FourierApprox abs_sin_fourier(double theta, std::uint64_t M) {
    if (M == 0) throw DomainError("abs_sin_fourier: M must be positive");
    CompensatedSum acc;
    for (std::uint64_t m = 1; m <= M; ++m) {
        const double md = static_cast<double>(m);
        acc.add(std::cos(2.0 * md * theta) / (4.0 * md * md - 1.0));
    }
    FourierApprox r;
    r.approx = 2.0 / std::numbers::pi - (4.0 / std::numbers::pi) * acc.value();
    r.truncationBound = (2.0 / std::numbers::pi) / (2.0 * static_cast<double>(M) + 1.0);
    return r;
}

}  // namespace pvshort
