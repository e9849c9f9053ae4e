#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace ul::kernels {

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::scalar,        scalar::dot,        scalar::dotc,
                                 scalar::abs2,       scalar::abs_max,    scalar::abs_pow_sum,
                                 scalar::masked_sum, scalar::matvec};
  return table;
}

const KernelTable* avx2_table() {
#if defined(UL_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  static const KernelTable table{Isa::avx2,        avx2::dot,        avx2::dotc,
                                 avx2::abs2,       avx2::abs_max,    avx2::abs_pow_sum,
                                 avx2::masked_sum, avx2::matvec};
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* env = std::getenv("UL_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
  }();
  return chosen;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace ul::kernels
