#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "grinch/simd/kernels.hpp"

namespace grinch::simd {
namespace {

struct KernelTable {
  double (*dot)(const double*, const double*, std::size_t);
  void (*accumulate)(double*, const double*, std::size_t);
  Level level;
};

constexpr KernelTable kScalar{&scalar::dot, &scalar::accumulate, Level::scalar};
#ifdef GRINCH_HAVE_AVX2_KERNELS
constexpr KernelTable kAvx2{&avx2::dot, &avx2::accumulate, Level::avx2};
#endif
#ifdef GRINCH_HAVE_NEON_KERNELS
constexpr KernelTable kNeon{&neon::dot, &neon::accumulate, Level::neon};
#endif

const KernelTable* table_for(Level level) {
  switch (level) {
    case Level::scalar:
      return &kScalar;
    case Level::avx2:
#ifdef GRINCH_HAVE_AVX2_KERNELS
      return &kAvx2;
#else
      return nullptr;
#endif
    case Level::neon:
#ifdef GRINCH_HAVE_NEON_KERNELS
      return &kNeon;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const KernelTable* initial_table() {
  if (const char* env = std::getenv("GRINCH_SIMD"); env != nullptr && *env != '\0') {
    Level requested = parse_level(env);
    if (supported(requested)) return table_for(requested);
  }
  return table_for(best_supported_level());
}

std::atomic<const KernelTable*>& active_table() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

std::string_view to_string(Level level) {
  switch (level) {
    case Level::scalar:
      return "scalar";
    case Level::avx2:
      return "avx2";
    case Level::neon:
      return "neon";
  }
  return "unknown";
}

Level parse_level(std::string_view name) {
  if (name == "scalar") return Level::scalar;
  if (name == "avx2") return Level::avx2;
  if (name == "neon") return Level::neon;
  throw std::invalid_argument("unknown SIMD level: " + std::string(name));
}

bool supported(Level level) {
  switch (level) {
    case Level::scalar:
      return true;
    case Level::avx2:
#ifdef GRINCH_HAVE_AVX2_KERNELS
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Level::neon:
#ifdef GRINCH_HAVE_NEON_KERNELS
      return true;
#else
      return false;
#endif
  }
  return false;
}

Level best_supported_level() {
  if (supported(Level::avx2)) return Level::avx2;
  if (supported(Level::neon)) return Level::neon;
  return Level::scalar;
}

Level active_level() { return active_table().load(std::memory_order_relaxed)->level; }

void set_active_level(Level level) {
  if (!supported(level)) {
    throw std::invalid_argument("SIMD level not supported on this machine: " +
                                std::string(to_string(level)));
  }
  active_table().store(table_for(level), std::memory_order_relaxed);
}

double dot(const double* a, const double* b, std::size_t n) {
  return active_table().load(std::memory_order_relaxed)->dot(a, b, n);
}

void accumulate(double* y, const double* x, std::size_t n) {
  active_table().load(std::memory_order_relaxed)->accumulate(y, x, n);
}

}  // namespace grinch::simd
