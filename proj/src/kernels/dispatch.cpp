#include "paoi/kernels.hpp"

#include <atomic>

namespace paoi::kernels {

namespace {

using Fn = double (*)(const double*, const double*, std::size_t, double);

Fn detect() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2")) return interference_sum_avx2;
#endif
  return interference_sum_scalar;
}

std::atomic<Fn> g_impl{nullptr};

Fn impl() {
  Fn f = g_impl.load(std::memory_order_relaxed);
  if (!f) {
    f = detect();
    g_impl.store(f, std::memory_order_relaxed);
  }
  return f;
}

}  // namespace

double interference_sum(const double* weights, const double* uniforms,
                        std::size_t n, double beta) {
  return impl()(weights, uniforms, n, beta);
}

std::string active_backend() {
#if defined(__x86_64__) || defined(_M_X64)
  if (impl() == interference_sum_avx2) return "avx2";
#endif
  return "scalar";
}

void force_scalar(bool on) {
  g_impl.store(on ? interference_sum_scalar : detect(),
               std::memory_order_relaxed);
}

}  // namespace paoi::kernels
