#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Dense double-precision kernels used by aggregate maintenance and linkage
// scoring. Every variant computes the same quantity; only the summation order
// differs, so results agree to rounding (see the equivalence tests).

namespace grinch::simd {

enum class Level { scalar, avx2, neon };

std::string_view to_string(Level level);
Level parse_level(std::string_view name);

/// True when the running CPU and this build both provide `level`.
bool supported(Level level);

/// Widest level available on this machine.
Level best_supported_level();

/// Level used by dot()/accumulate(). Starts at best_supported_level(), or at
/// the value of the GRINCH_SIMD environment variable when set.
Level active_level();

/// Throws std::invalid_argument when `level` is not supported here.
void set_active_level(Level level);

double dot(const double* a, const double* b, std::size_t n);
/// y[i] += x[i]
void accumulate(double* y, const double* x, std::size_t n);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return dot(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void accumulate(double* y, const double* x, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
#define GRINCH_HAVE_AVX2_KERNELS 1
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void accumulate(double* y, const double* x, std::size_t n);
}  // namespace avx2
#endif

#if defined(__aarch64__)
#define GRINCH_HAVE_NEON_KERNELS 1
namespace neon {
double dot(const double* a, const double* b, std::size_t n);
void accumulate(double* y, const double* x, std::size_t n);
}  // namespace neon
#endif

}  // namespace grinch::simd
