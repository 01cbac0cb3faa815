#pragma once

#include <cmath>

// Shared lane math for the row kernels. The AVX2 variant mirrors this
// operation sequence one intrinsic per line; with FP contraction off the
// two backends produce identical bits.

namespace froude::kernels::lane {

inline constexpr double kSqrt2 = 1.4142135623730951;       // sqrt(2), nearest double
inline constexpr double kTwoSqrt2 = 2.0 * kSqrt2;
inline constexpr double kTwoSqrt2Over3 = 2.0 * kSqrt2 / 3.0;
inline constexpr double kFourSqrt2Over3 = 4.0 * kSqrt2 / 3.0;
inline constexpr double kSixth = 1.0 / 6.0;
inline constexpr double kThird = 1.0 / 3.0;

// dJ/d(eta) away from the crest band. Decomposed as
//   J = H + w B^2 + J2,  H' = s - 1/(2e^2),
// with s = r - e, w = e^2/(2re^2 - 1) the half-reciprocal of y1, and B the
// bracket of the J1 closed form; every sqrt(s) term appears with a
// non-negative power, so the expression stays finite up to s = 0.
inline double dj_deta(double e, double r) {
    const double s = r - e;
    const double sq = std::sqrt(s);
    const double inv_e = 1.0 / e;
    const double inv_e2 = inv_e * inv_e;
    const double inv_e3 = inv_e2 * inv_e;
    const double inv_e4 = inv_e2 * inv_e2;
    const double inv_e5 = inv_e4 * inv_e;
    const double e2 = e * e;
    const double ssq = s * sq;
    const double hp = s - 0.5 * inv_e2;
    const double big_b = 1.0 - r * inv_e + kSixth * inv_e3 + kTwoSqrt2Over3 * ssq;
    const double den = 2.0 * r * e2 - 1.0;
    const double inv_den = 1.0 / den;
    const double w = e2 * inv_den;
    const double wp = -2.0 * e * inv_den * inv_den;
    const double big_bp = r * inv_e2 - 0.5 * inv_e4 - kSqrt2 * sq;
    const double j2p = 0.5 * (-inv_e2 + 2.0 * r * inv_e3 - kThird * inv_e5 -
                              kTwoSqrt2 * sq * inv_e - kFourSqrt2Over3 * ssq * inv_e2 +
                              2.0 * s);
    return hp + wp * (big_b * big_b) + 2.0 * w * big_b * big_bp + j2p;
}

inline double bernoulli(double d) {
    const double dd = d * d;
    return 0.5 / dd + d;
}

inline double flow_force(double d) {
    const double dd = d * d;
    return 0.5 * dd + 1.0 / d;
}

inline double froude(double d) {
    const double sq = std::sqrt(d);
    return 1.0 / (d * sq);
}

}  // namespace froude::kernels::lane
