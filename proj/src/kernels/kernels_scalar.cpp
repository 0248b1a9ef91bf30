#include "kernels_internal.hpp"

#include <algorithm>

namespace linksched::kernels::detail {
namespace {

std::int64_t max_value_scalar(const std::int64_t* v, std::size_t n) {
  std::int64_t best = 0;
  for (std::size_t i = 0; i < n; ++i) best = std::max(best, v[i]);
  return best;
}

std::int64_t sum_scalar(const std::int64_t* v, std::size_t n) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < n; ++i) s += v[i];
  return s;
}

// Reference form of the heavy test: n * Q_i >= (n - 1) * Δ, exact in integers.
void classify_scalar(const std::int64_t* w, std::size_t n, std::int64_t delta, std::uint8_t* heavy,
                     std::uint8_t* critical) {
  const auto nn = static_cast<std::int64_t>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool live = delta > 0;
    heavy[i] = live && static_cast<__int128>(nn) * w[i] >= static_cast<__int128>(nn - 1) * delta;
    critical[i] = live && w[i] == delta;
  }
}

void service_indicator_scalar(const std::uint8_t* prev, const std::uint8_t* prev2, std::size_t n,
                              bool frame_last_slot, std::uint8_t* out) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = frame_last_slot ? static_cast<std::uint8_t>(prev[i] & prev2[i]) : prev[i];
  }
}

void nsb_weights_scalar(const std::int64_t* w, const std::uint8_t* heavy, const std::uint8_t* served,
                        std::size_t n, std::int64_t* out) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = heavy[i] ? w[i] * (2 - served[i]) : w[i];
  }
}

void lcnsb_weights_scalar(const std::uint8_t* heavy, const std::uint8_t* critical,
                          const std::uint8_t* served, std::size_t n, std::int64_t* out) {
  for (std::size_t i = 0; i < n; ++i) {
    if (critical[i]) {
      out[i] = 5 - 2 * served[i];
    } else if (heavy[i]) {
      out[i] = 4 - 2 * served[i];
    } else {
      out[i] = 1;
    }
  }
}

void add_in_place_scalar(std::int64_t* dst, const std::int64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += src[i];
}

void positive_mask_scalar(const std::int64_t* v, std::size_t n, std::uint8_t* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = v[i] > 0;
}

}  // namespace

const KernelTable kScalarTable = {
    "scalar",
    max_value_scalar,
    sum_scalar,
    classify_scalar,
    service_indicator_scalar,
    nsb_weights_scalar,
    lcnsb_weights_scalar,
    add_in_place_scalar,
    positive_mask_scalar,
};

}  // namespace linksched::kernels::detail
