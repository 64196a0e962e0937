#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

// Elementwise inner-loop kernels behind the batched primitives. Each kernel
// exists as a scalar reference and, on x86-64, an AVX2 variant selected at
// runtime. heaviside and select are bit-exact across variants; relu_sum uses
// lane accumulators in the AVX2 path, so it is deterministic but may differ
// from the scalar loop in the last ulps.

namespace gmpea::kernels {

enum class Isa { scalar, avx2 };

/// Variant used by the dispatched entry points. Detected once at startup;
/// force_isa() overrides it (tests use this to cross-check variants).
Isa active_isa();
void force_isa(std::optional<Isa> isa);
bool avx2_available();

// scalar reference kernels
void heaviside_scalar(const double* a, std::uint8_t* out, std::size_t n);
void heaviside_scalar_f32(const float* a, std::uint8_t* out, std::size_t n);
void select_scalar(const std::uint8_t* cond, const double* a, const double* b,
                   double* out, std::size_t n);
void select_scalar_f32(const std::uint8_t* cond, const float* a, const float* b,
                       float* out, std::size_t n);
double relu_sum_scalar(const double* a, std::size_t n);
float relu_sum_scalar_f32(const float* a, std::size_t n);

#if defined(__x86_64__)
void heaviside_avx2(const double* a, std::uint8_t* out, std::size_t n);
void heaviside_avx2_f32(const float* a, std::uint8_t* out, std::size_t n);
void select_avx2(const std::uint8_t* cond, const double* a, const double* b,
                 double* out, std::size_t n);
void select_avx2_f32(const std::uint8_t* cond, const float* a, const float* b,
                     float* out, std::size_t n);
double relu_sum_avx2(const double* a, std::size_t n);
float relu_sum_avx2_f32(const float* a, std::size_t n);
#endif

// runtime-dispatched entry points
void heaviside(const double* a, std::uint8_t* out, std::size_t n);
void select(const std::uint8_t* cond, const double* a, const double* b,
            double* out, std::size_t n);
double relu_sum(const double* a, std::size_t n);

}  // namespace gmpea::kernels
