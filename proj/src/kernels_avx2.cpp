#include "froude/kernels.hpp"

#include "kernels_lane.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

namespace froude::kernels::detail {

bool avx2_compiled() { return true; }

namespace {

inline __m256d splat(double v) { return _mm256_set1_pd(v); }

// One vector lane of kernels_lane.hpp dj_deta, same operation order.
inline __m256d dj_lane_pd(__m256d e, __m256d r) {
    const __m256d one = splat(1.0);
    const __m256d half = splat(0.5);
    const __m256d two = splat(2.0);
    const __m256d s = _mm256_sub_pd(r, e);
    const __m256d sq = _mm256_sqrt_pd(s);
    const __m256d inv_e = _mm256_div_pd(one, e);
    const __m256d inv_e2 = _mm256_mul_pd(inv_e, inv_e);
    const __m256d inv_e3 = _mm256_mul_pd(inv_e2, inv_e);
    const __m256d inv_e4 = _mm256_mul_pd(inv_e2, inv_e2);
    const __m256d inv_e5 = _mm256_mul_pd(inv_e4, inv_e);
    const __m256d e2 = _mm256_mul_pd(e, e);
    const __m256d ssq = _mm256_mul_pd(s, sq);
    const __m256d hp = _mm256_sub_pd(s, _mm256_mul_pd(half, inv_e2));
    const __m256d big_b = _mm256_add_pd(
        _mm256_add_pd(_mm256_sub_pd(one, _mm256_mul_pd(r, inv_e)),
                      _mm256_mul_pd(splat(lane::kSixth), inv_e3)),
        _mm256_mul_pd(splat(lane::kTwoSqrt2Over3), ssq));
    const __m256d den = _mm256_sub_pd(_mm256_mul_pd(_mm256_mul_pd(two, r), e2), one);
    const __m256d inv_den = _mm256_div_pd(one, den);
    const __m256d w = _mm256_mul_pd(e2, inv_den);
    const __m256d wp = _mm256_mul_pd(
        _mm256_mul_pd(_mm256_mul_pd(splat(-2.0), e), inv_den), inv_den);
    const __m256d big_bp = _mm256_sub_pd(
        _mm256_sub_pd(_mm256_mul_pd(r, inv_e2), _mm256_mul_pd(half, inv_e4)),
        _mm256_mul_pd(splat(lane::kSqrt2), sq));
    __m256d j2p = _mm256_sub_pd(_mm256_mul_pd(_mm256_mul_pd(two, r), inv_e3), inv_e2);
    j2p = _mm256_sub_pd(j2p, _mm256_mul_pd(splat(lane::kThird), inv_e5));
    j2p = _mm256_sub_pd(j2p, _mm256_mul_pd(_mm256_mul_pd(splat(lane::kTwoSqrt2), sq), inv_e));
    j2p = _mm256_sub_pd(j2p, _mm256_mul_pd(_mm256_mul_pd(splat(lane::kFourSqrt2Over3), ssq), inv_e2));
    j2p = _mm256_add_pd(j2p, _mm256_mul_pd(two, s));
    j2p = _mm256_mul_pd(half, j2p);
    const __m256d bb = _mm256_mul_pd(big_b, big_b);
    __m256d acc = _mm256_add_pd(hp, _mm256_mul_pd(wp, bb));
    acc = _mm256_add_pd(
        acc, _mm256_mul_pd(_mm256_mul_pd(_mm256_mul_pd(two, w), big_b), big_bp));
    return _mm256_add_pd(acc, j2p);
}

}  // namespace

void dj_deta_row_avx2(double r, const double* etas, double* out, std::size_t n) {
    const __m256d rv = splat(r);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, dj_lane_pd(_mm256_loadu_pd(etas + i), rv));
    }
    for (; i < n; ++i) out[i] = lane::dj_deta(etas[i], r);
}

void bernoulli_row_avx2(const double* d, double* out, std::size_t n) {
    const __m256d half = splat(0.5);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dv = _mm256_loadu_pd(d + i);
        const __m256d dd = _mm256_mul_pd(dv, dv);
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_div_pd(half, dd), dv));
    }
    for (; i < n; ++i) out[i] = lane::bernoulli(d[i]);
}

void flow_force_row_avx2(const double* d, double* out, std::size_t n) {
    const __m256d half = splat(0.5);
    const __m256d one = splat(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dv = _mm256_loadu_pd(d + i);
        const __m256d dd = _mm256_mul_pd(dv, dv);
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_mul_pd(half, dd),
                                                _mm256_div_pd(one, dv)));
    }
    for (; i < n; ++i) out[i] = lane::flow_force(d[i]);
}

void froude_row_avx2(const double* d, double* out, std::size_t n) {
    const __m256d one = splat(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dv = _mm256_loadu_pd(d + i);
        const __m256d sq = _mm256_sqrt_pd(dv);
        _mm256_storeu_pd(out + i, _mm256_div_pd(one, _mm256_mul_pd(dv, sq)));
    }
    for (; i < n; ++i) out[i] = lane::froude(d[i]);
}

}  // namespace froude::kernels::detail

#else  // !__AVX2__

namespace froude::kernels::detail {

bool avx2_compiled() { return false; }

void dj_deta_row_avx2(double r, const double* etas, double* out, std::size_t n) {
    dj_deta_row_scalar(r, etas, out, n);
}
void bernoulli_row_avx2(const double* d, double* out, std::size_t n) {
    bernoulli_row_scalar(d, out, n);
}
void flow_force_row_avx2(const double* d, double* out, std::size_t n) {
    flow_force_row_scalar(d, out, n);
}
void froude_row_avx2(const double* d, double* out, std::size_t n) {
    froude_row_scalar(d, out, n);
}

}  // namespace froude::kernels::detail

#endif
