#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"

namespace numrad::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(NUMRAD_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* lookup(std::string_view name) {
  if (name == "scalar") return &scalar_table();
  if (name == "avx2") return avx2_table();
  if (name == "auto") {
    const KernelTable* best = avx2_table();
    return best != nullptr ? best : &scalar_table();
  }
  return nullptr;
}

const KernelTable* initial_choice() {
  if (const char* env = std::getenv("NUMRAD_KERNEL"); env != nullptr) {
    if (const KernelTable* t = lookup(env); t != nullptr) return t;
  }
  return lookup("auto");
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> s{initial_choice()};
  return s;
}

}  // namespace

const KernelTable* avx2_table() {
#if defined(NUMRAD_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  const KernelTable* t = lookup(name);
  if (t == nullptr) return false;
  slot().store(t, std::memory_order_release);
  return true;
}

std::vector<std::string_view> available() {
  std::vector<std::string_view> out{"scalar"};
  if (avx2_table() != nullptr) out.emplace_back("avx2");
  return out;
}

}  // namespace numrad::kernels
