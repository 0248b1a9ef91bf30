#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace linksched::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(LINKSCHED_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& select() {
  if (const char* env = std::getenv("LINKSCHED_KERNELS"); env && std::string_view(env) == "scalar") {
    return detail::kScalarTable;
  }
  if (const KernelTable* t = avx2()) return *t;
  return detail::kScalarTable;
}

}  // namespace

const KernelTable& scalar() { return detail::kScalarTable; }

const KernelTable* avx2() {
#if defined(LINKSCHED_HAVE_AVX2)
  static const bool ok = cpu_has_avx2();
  return ok ? &detail::kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

std::int64_t max_value(std::span<const std::int64_t> v) { return active().max_value(v.data(), v.size()); }

std::int64_t sum(std::span<const std::int64_t> v) { return active().sum(v.data(), v.size()); }

void classify(std::span<const std::int64_t> workload, std::int64_t delta, std::span<std::uint8_t> heavy,
              std::span<std::uint8_t> critical) {
  active().classify(workload.data(), workload.size(), delta, heavy.data(), critical.data());
}

void service_indicator(std::span<const std::uint8_t> prev, std::span<const std::uint8_t> prev2,
                       bool frame_last_slot, std::span<std::uint8_t> out) {
  active().service_indicator(prev.data(), prev2.data(), prev.size(), frame_last_slot, out.data());
}

void nsb_weights(std::span<const std::int64_t> workload, std::span<const std::uint8_t> heavy,
                 std::span<const std::uint8_t> served, std::span<std::int64_t> out) {
  active().nsb_weights(workload.data(), heavy.data(), served.data(), workload.size(), out.data());
}

void lcnsb_weights(std::span<const std::uint8_t> heavy, std::span<const std::uint8_t> critical,
                   std::span<const std::uint8_t> served, std::span<std::int64_t> out) {
  active().lcnsb_weights(heavy.data(), critical.data(), served.data(), heavy.size(), out.data());
}

void add_in_place(std::span<std::int64_t> dst, std::span<const std::int64_t> src) {
  active().add_in_place(dst.data(), src.data(), dst.size());
}

void positive_mask(std::span<const std::int64_t> values, std::span<std::uint8_t> out) {
  active().positive_mask(values.data(), values.size(), out.data());
}

}  // namespace linksched::kernels
