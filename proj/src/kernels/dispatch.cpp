#include <cstdlib>
#include <string_view>

#include "gmrfinfo/kernels.hpp"

namespace gmrfinfo::kernels {

#if defined(GMRFINFO_HAVE_AVX2)
namespace avx2 {
const KernelTable& table();
}
#endif

const KernelTable* avx2_table() {
#if defined(GMRFINFO_HAVE_AVX2)
  static const bool supported =
      __builtin_cpu_supports("avx2") != 0 && __builtin_cpu_supports("fma") != 0;
  return supported ? &avx2::table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = []() -> const KernelTable& {
    const char* env = std::getenv("GMRFINFO_KERNELS");
    const std::string_view want = env ? env : "";
    if (want == "scalar") return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
  }();
  return chosen;
}

}  // namespace gmrfinfo::kernels
