#include <cstdlib>

#include "manakov/kernels.hpp"

namespace manakov::kernels {

#if MANAKOV_HAVE_AVX2
namespace detail {
const Ops& avx2_table();
}
#endif
#if MANAKOV_HAVE_AVX512
namespace detail {
const Ops& avx512_table();
}
#endif

const Ops* avx2() {
#if MANAKOV_HAVE_AVX2
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return &detail::avx2_table();
#endif
  return nullptr;
}

const Ops* avx512() {
#if MANAKOV_HAVE_AVX512
  if (__builtin_cpu_supports("avx512f") && __builtin_cpu_supports("avx512dq") &&
      __builtin_cpu_supports("avx512vl"))
    return &detail::avx512_table();
#endif
  return nullptr;
}

std::vector<const Ops*> available() {
  std::vector<const Ops*> v{&scalar()};
  if (const Ops* t = avx2()) v.push_back(t);
  if (const Ops* t = avx512()) v.push_back(t);
  return v;
}

const Ops* by_name(const std::string& name) {
  for (const Ops* t : available())
    if (name == t->name) return t;
  return nullptr;
}

const Ops& active() {
  static const Ops* chosen = [] {
    if (const char* env = std::getenv("MANAKOV_KERNELS")) {
      if (const Ops* t = by_name(env)) return t;
      // Unknown or unsupported request: fall back to the reference table
      // rather than silently using a different vector width.
      return &scalar();
    }
    if (const Ops* t = avx512()) return t;
    if (const Ops* t = avx2()) return t;
    return &scalar();
  }();
  return *chosen;
}

}  // namespace manakov::kernels
