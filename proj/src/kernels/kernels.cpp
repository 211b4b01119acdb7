#include "bellsim/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace bellsim::kernels {

PairMoments pair_moments_scalar(const double* w, const double* p1, const double* p2,
                                std::size_t n) {
    PairMoments m;
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = w[i];
        const double a = p1[i];
        const double b = p2[i];
        m.s0 += wi;
        m.s1 += wi * a;
        m.s2 += wi * b;
        m.s12 += wi * a * b;
    }
    return m;
}

void quad_atoms_scalar(const double* w, const double* p_a1, const double* p_b1,
                       const double* p_a2, const double* p_b2, std::size_t n, double out[16]) {
    for (int i = 0; i < 16; ++i) out[i] = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
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

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

Backend detect_backend() {
    if (const char* env = std::getenv("BELLSIM_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0 && avx2_available()) return Backend::avx2;
    }
    return avx2_available() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& backend_slot() {
    static std::atomic<Backend> slot{detect_backend()};
    return slot;
}

}  // namespace

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void force_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_available()) b = Backend::scalar;
    backend_slot().store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

PairMoments pair_moments(const double* w, const double* p1, const double* p2, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
    if (active_backend() == Backend::avx2) return pair_moments_avx2(w, p1, p2, n);
#endif
    return pair_moments_scalar(w, p1, p2, n);
}

void quad_atoms(const double* w, const double* p_a1, const double* p_b1, const double* p_a2,
                const double* p_b2, std::size_t n, double out[16]) {
#if defined(__x86_64__) || defined(_M_X64)
    if (active_backend() == Backend::avx2) {
        quad_atoms_avx2(w, p_a1, p_b1, p_a2, p_b2, n, out);
        return;
    }
#endif
    quad_atoms_scalar(w, p_a1, p_b1, p_a2, p_b2, n, out);
}

}  // namespace bellsim::kernels
