#include <cstdlib>
#include <string>

#include "quenchbat/errors.hpp"
#include "quenchbat/kernels.hpp"

namespace quenchbat::kernels {

#if defined(QUENCHBAT_BUILD_AVX2)
namespace detail {
const KernelOps* avx2_ops();
const VecMathProbe* avx2_probe();
}  // namespace detail
#endif

const KernelOps* avx2_kernels() {
#if defined(QUENCHBAT_BUILD_AVX2)
  return detail::avx2_ops();
#else
  return nullptr;
#endif
}

const VecMathProbe* vec_math_probe() {
#if defined(QUENCHBAT_BUILD_AVX2)
  return detail::avx2_probe();
#else
  return nullptr;
#endif
}

const KernelOps& active_kernels() {
  static const KernelOps& chosen = []() -> const KernelOps& {
    if (const char* env = std::getenv("QUENCHBAT_KERNEL")) {
      std::string name = env;
      if (name == "scalar") return scalar_kernels();
      if (name == "avx2") {
        const KernelOps* ops = avx2_kernels();
        if (!ops) throw SpecError("QUENCHBAT_KERNEL=avx2 but the AVX2 variant is unavailable");
        return *ops;
      }
      throw SpecError("QUENCHBAT_KERNEL must be 'scalar' or 'avx2', got '" + name + "'");
    }
    if (const KernelOps* ops = avx2_kernels()) return *ops;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace quenchbat::kernels
