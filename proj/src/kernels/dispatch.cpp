#include <atomic>
#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace nisqtopo::kernels {

namespace {

std::atomic<const KernelTable*> g_override{nullptr};

const KernelTable& detect() {
  const char* env = std::getenv("NISQTOPO_KERNELS");
  if (env != nullptr && std::string_view(env) == "scalar") return scalar_kernels();
  if (const auto* t = avx2_kernels()) return *t;
  return scalar_kernels();
}

} // namespace

const KernelTable* avx2_kernels() {
#if defined(NISQTOPO_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  if (const auto* t = g_override.load(std::memory_order_acquire)) return *t;
  static const KernelTable& detected = detect();
  return detected;
}

void set_active_kernels(const KernelTable* table) {
  g_override.store(table, std::memory_order_release);
}

} // namespace nisqtopo::kernels
