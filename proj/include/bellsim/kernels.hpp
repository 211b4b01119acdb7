#pragma once

#include <cstddef>

namespace bellsim::kernels {

// Weighted reduction kernels behind the hidden-variable grid sums. Each has
// a scalar reference implementation and an AVX2 variant; the backend is
// picked once at runtime (BELLSIM_KERNELS=scalar|avx2 overrides detection).
// Variants may differ in the last bits through summation order, never more.

enum class Backend { scalar, avx2 };

bool avx2_available();
Backend active_backend();
void force_backend(Backend b);
const char* backend_name(Backend b);

// s0 = sum w, s1 = sum w*p1, s2 = sum w*p2, s12 = sum w*p1*p2.
struct PairMoments {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s12 = 0.0;
};

PairMoments pair_moments(const double* w, const double* p1, const double* p2, std::size_t n);

// out[idx] = sum_k w[k] * q1 * q2 * q3 * q4 where qi is p_i[k] when the
// corresponding outcome bit of idx is 0 (plus) and 1 - p_i[k] when it is 1.
// Bit order (a1, b1, a2, b2), a1 most significant.
void quad_atoms(const double* w, const double* p_a1, const double* p_b1, const double* p_a2,
                const double* p_b2, std::size_t n, double out[16]);

PairMoments pair_moments_scalar(const double* w, const double* p1, const double* p2,
                                std::size_t n);
void quad_atoms_scalar(const double* w, const double* p_a1, const double* p_b1,
                       const double* p_a2, const double* p_b2, std::size_t n, double out[16]);

#if defined(__x86_64__) || defined(_M_X64)
PairMoments pair_moments_avx2(const double* w, const double* p1, const double* p2,
                              std::size_t n);
void quad_atoms_avx2(const double* w, const double* p_a1, const double* p_b1,
                     const double* p_a2, const double* p_b2, std::size_t n, double out[16]);
#endif

}  // namespace bellsim::kernels
