#include "gmpea/kernels.hpp"

#if defined(__x86_64__)
#include <immintrin.h>
#endif

namespace gmpea::kernels {

namespace {
std::optional<Isa> g_forced;

Isa detect() {
#if defined(__x86_64__)
    if (__builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
    return Isa::scalar;
}
}  // namespace

bool avx2_available() {
#if defined(__x86_64__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa active_isa() {
    if (g_forced) return *g_forced;
    static const Isa detected = detect();
    return detected;
}

void force_isa(std::optional<Isa> isa) { g_forced = isa; }

// ---- scalar reference ----

void heaviside_scalar(const double* a, std::uint8_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] >= 0.0 ? 1 : 0;
}

void heaviside_scalar_f32(const float* a, std::uint8_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] >= 0.0f ? 1 : 0;
}

void select_scalar(const std::uint8_t* cond, const double* a, const double* b,
                   double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = cond[i] ? a[i] : b[i];
}

void select_scalar_f32(const std::uint8_t* cond, const float* a, const float* b,
                       float* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = cond[i] ? a[i] : b[i];
}

// Accumulation order is part of the kernel contract: 4 lane accumulators over
// the blocked prefix, lanes combined left to right, then the tail in order.
// The AVX2 variant reproduces this bit-exactly.
double relu_sum_scalar(const double* a, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t blocked = n / 4 * 4;
    for (std::size_t i = 0; i < blocked; ++i)
        acc[i % 4] += a[i] > 0.0 ? a[i] : 0.0;
    double s = ((acc[0] + acc[1]) + acc[2]) + acc[3];
    for (std::size_t i = blocked; i < n; ++i) s += a[i] > 0.0 ? a[i] : 0.0;
    return s;
}

float relu_sum_scalar_f32(const float* a, std::size_t n) {
    float acc[8] = {};
    std::size_t blocked = n / 8 * 8;
    for (std::size_t i = 0; i < blocked; ++i)
        acc[i % 8] += a[i] > 0.0f ? a[i] : 0.0f;
    float s = 0.0f;
    for (float l : acc) s += l;
    for (std::size_t i = blocked; i < n; ++i) s += a[i] > 0.0f ? a[i] : 0.0f;
    return s;
}

// ---- AVX2 ----

#if defined(__x86_64__)

__attribute__((target("avx2"))) void heaviside_avx2(const double* a,
                                                    std::uint8_t* out,
                                                    std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(a + i);
        __m256d ge = _mm256_cmp_pd(v, zero, _CMP_GE_OQ);
        int m = _mm256_movemask_pd(ge);
        out[i + 0] = (m >> 0) & 1;
        out[i + 1] = (m >> 1) & 1;
        out[i + 2] = (m >> 2) & 1;
        out[i + 3] = (m >> 3) & 1;
    }
    for (; i < n; ++i) out[i] = a[i] >= 0.0 ? 1 : 0;
}

__attribute__((target("avx2"))) void heaviside_avx2_f32(const float* a,
                                                        std::uint8_t* out,
                                                        std::size_t n) {
    const __m256 zero = _mm256_setzero_ps();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 v = _mm256_loadu_ps(a + i);
        int m = _mm256_movemask_ps(_mm256_cmp_ps(v, zero, _CMP_GE_OQ));
        for (int k = 0; k < 8; ++k) out[i + k] = (m >> k) & 1;
    }
    for (; i < n; ++i) out[i] = a[i] >= 0.0f ? 1 : 0;
}

__attribute__((target("avx2"))) void select_avx2(const std::uint8_t* cond,
                                                 const double* a, const double* b,
                                                 double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        // widen the 0/1 bytes to a full-lane mask
        int cw;
        __builtin_memcpy(&cw, cond + i, 4);
        __m128i c8 = _mm_cvtsi32_si128(cw);
        __m256i c64 = _mm256_cvtepu8_epi64(c8);
        __m256i m = _mm256_sub_epi64(_mm256_setzero_si256(), c64);
        __m256d va = _mm256_loadu_pd(a + i);
        __m256d vb = _mm256_loadu_pd(b + i);
        _mm256_storeu_pd(out + i, _mm256_blendv_pd(vb, va, _mm256_castsi256_pd(m)));
    }
    for (; i < n; ++i) out[i] = cond[i] ? a[i] : b[i];
}

__attribute__((target("avx2"))) void select_avx2_f32(const std::uint8_t* cond,
                                                     const float* a, const float* b,
                                                     float* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m128i c8 = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(cond + i));
        __m256i c32 = _mm256_cvtepu8_epi32(c8);
        __m256i m = _mm256_sub_epi32(_mm256_setzero_si256(), c32);
        __m256 va = _mm256_loadu_ps(a + i);
        __m256 vb = _mm256_loadu_ps(b + i);
        _mm256_storeu_ps(out + i, _mm256_blendv_ps(vb, va, _mm256_castsi256_ps(m)));
    }
    for (; i < n; ++i) out[i] = cond[i] ? a[i] : b[i];
}

__attribute__((target("avx2"))) double relu_sum_avx2(const double* a, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    __m256d acc = zero;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_max_pd(_mm256_loadu_pd(a + i), zero);
        acc = _mm256_add_pd(acc, v);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = ((lanes[0] + lanes[1]) + lanes[2]) + lanes[3];
    for (; i < n; ++i) s += a[i] > 0.0 ? a[i] : 0.0;
    return s;
}

__attribute__((target("avx2"))) float relu_sum_avx2_f32(const float* a, std::size_t n) {
    const __m256 zero = _mm256_setzero_ps();
    __m256 acc = zero;
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc = _mm256_add_ps(acc, _mm256_max_ps(_mm256_loadu_ps(a + i), zero));
    }
    alignas(32) float lanes[8];
    _mm256_store_ps(lanes, acc);
    float s = 0.0f;
    for (float l : lanes) s += l;
    for (; i < n; ++i) s += a[i] > 0.0f ? a[i] : 0.0f;
    return s;
}

#endif  // __x86_64__

// ---- dispatch ----

void heaviside(const double* a, std::uint8_t* out, std::size_t n) {
#if defined(__x86_64__)
    if (active_isa() == Isa::avx2) {
        heaviside_avx2(a, out, n);
        return;
    }
#endif
    heaviside_scalar(a, out, n);
}

void select(const std::uint8_t* cond, const double* a, const double* b,
            double* out, std::size_t n) {
#if defined(__x86_64__)
    if (active_isa() == Isa::avx2) {
        select_avx2(cond, a, b, out, n);
        return;
    }
#endif
    select_scalar(cond, a, b, out, n);
}

double relu_sum(const double* a, std::size_t n) {
#if defined(__x86_64__)
    if (active_isa() == Isa::avx2) return relu_sum_avx2(a, n);
#endif
    return relu_sum_scalar(a, n);
}

}  // namespace gmpea::kernels
