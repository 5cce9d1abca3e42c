#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "nsom/kernels.hpp"

namespace nsom::kernels {

namespace {

using KernelFn = EMField (*)(double, const Vec3&, const DipoleBatch&);

bool avx2_available() {
#ifdef NSOM_HAVE_AVX2
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

struct Dispatch {
  KernelFn fn;
  const char* name;
};

Dispatch select(std::string_view request) {
  if (request == "scalar") return {dipole_sum_scalar, "scalar"};
#ifdef NSOM_HAVE_AVX2
  if (request == "avx2") {
    if (!avx2_available())
      throw std::invalid_argument("avx2 kernel requested but CPU lacks avx2/fma");
    return {dipole_sum_avx2, "avx2"};
  }
  if (request == "auto") {
    if (avx2_available()) return {dipole_sum_avx2, "avx2"};
    return {dipole_sum_scalar, "scalar"};
  }
#else
  if (request == "avx2")
    throw std::invalid_argument("avx2 kernel not compiled into this build");
  if (request == "auto") return {dipole_sum_scalar, "scalar"};
#endif
  throw std::invalid_argument("unknown kernel '" + std::string(request) + "'");
}

Dispatch initial() {
  if (const char* env = std::getenv("NSOM_SIMD")) {
    const std::string_view v(env);
    if (v == "0" || v == "scalar") return select("scalar");
    if (v == "avx2" && avx2_available()) return select("avx2");
  }
  return select("auto");
}

Dispatch& current() {
  static Dispatch d = initial();
  return d;
}

}  // namespace

EMField dipole_sum(double k, const Vec3& obs, const DipoleBatch& b) {
  return current().fn(k, obs, b);
}

std::string_view active_kernel() { return current().name; }

void force_kernel(std::string_view name) {
  current() = name == "auto" ? select("auto") : select(name);
}

}  // namespace nsom::kernels
