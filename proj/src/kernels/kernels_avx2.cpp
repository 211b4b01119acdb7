// AVX2 + FMA variants of the reduction kernels. Compiled with per-function
// target attributes so the translation unit builds on any x86-64 toolchain;
// callers must check avx2_available() before dispatching here.

#include "bellsim/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace bellsim::kernels {

namespace {

__attribute__((target("avx2,fma"))) inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

__attribute__((target("avx2,fma"))) PairMoments pair_moments_avx2(const double* w,
                                                                  const double* p1,
                                                                  const double* p2,
                                                                  std::size_t n) {
    __m256d s0 = _mm256_setzero_pd();
    __m256d s1 = _mm256_setzero_pd();
    __m256d s2 = _mm256_setzero_pd();
    __m256d s12 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d wv = _mm256_loadu_pd(w + i);
        const __m256d a = _mm256_loadu_pd(p1 + i);
        const __m256d b = _mm256_loadu_pd(p2 + i);
        const __m256d wa = _mm256_mul_pd(wv, a);
        s0 = _mm256_add_pd(s0, wv);
        s1 = _mm256_add_pd(s1, wa);
        s2 = _mm256_fmadd_pd(wv, b, s2);
        s12 = _mm256_fmadd_pd(wa, b, s12);
    }
    PairMoments m;
    m.s0 = hsum(s0);
    m.s1 = hsum(s1);
    m.s2 = hsum(s2);
    m.s12 = hsum(s12);
    for (; i < n; ++i) {
        const double wi = w[i];
        m.s0 += wi;
        m.s1 += wi * p1[i];
        m.s2 += wi * p2[i];
        m.s12 += wi * p1[i] * p2[i];
    }
    return m;
}

__attribute__((target("avx2,fma"))) void quad_atoms_avx2(const double* w, const double* p_a1,
                                                         const double* p_b1, const double* p_a2,
                                                         const double* p_b2, std::size_t n,
                                                         double out[16]) {
    __m256d acc[16];
    for (int i = 0; i < 16; ++i) acc[i] = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d wv = _mm256_loadu_pd(w + k);
        const __m256d q1p = _mm256_loadu_pd(p_a1 + k);
        const __m256d q2p = _mm256_loadu_pd(p_b1 + k);
        const __m256d q3p = _mm256_loadu_pd(p_a2 + k);
        const __m256d q4p = _mm256_loadu_pd(p_b2 + k);
        const __m256d q1[2] = {q1p, _mm256_sub_pd(one, q1p)};
        const __m256d q2[2] = {q2p, _mm256_sub_pd(one, q2p)};
        const __m256d q3[2] = {q3p, _mm256_sub_pd(one, q3p)};
        const __m256d q4[2] = {q4p, _mm256_sub_pd(one, q4p)};
        for (int i = 0; i < 2; ++i) {
            const __m256d w1 = _mm256_mul_pd(wv, q1[i]);
            for (int j = 0; j < 2; ++j) {
                const __m256d front = _mm256_mul_pd(w1, q2[j]);
                for (int a = 0; a < 2; ++a) {
                    const __m256d fa = _mm256_mul_pd(front, q3[a]);
                    for (int b = 0; b < 2; ++b) {
                        const int idx = (i << 3) | (j << 2) | (a << 1) | b;
                        acc[idx] = _mm256_fmadd_pd(fa, q4[b], acc[idx]);
                    }
                }
            }
        }
    }
    for (int i = 0; i < 16; ++i) out[i] = hsum(acc[i]);
    for (; k < n; ++k) {
        const double q1[2] = {p_a1[k], 1.0 - p_a1[k]};
        const double q2[2] = {p_b1[k], 1.0 - p_b1[k]};
        const double q3[2] = {p_a2[k], 1.0 - p_a2[k]};
        const double q4[2] = {p_b2[k], 1.0 - p_b2[k]};
        const double wk = w[k];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const double front = wk * q1[i] * q2[j];
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        out[(i << 3) | (j << 2) | (a << 1) | b] += front * q3[a] * q4[b];
            }
    }
}

}  // namespace bellsim::kernels

#endif  // x86-64
