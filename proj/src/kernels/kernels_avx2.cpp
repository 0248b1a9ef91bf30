// AVX2 variants. Compiled with -mavx2; only reached after a CPUID check.

#include "kernels_internal.hpp"

#if defined(LINKSCHED_HAVE_AVX2)

#include <immintrin.h>

#include <algorithm>
#include <cstring>

namespace linksched::kernels::detail {
namespace {

inline __m256i load4(const std::int64_t* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store4(std::int64_t* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

// Four 0/1 flag bytes widened to four 64-bit lanes.
inline __m256i widen_flags(const std::uint8_t* p) {
  std::int32_t raw;
  std::memcpy(&raw, p, sizeof raw);
  return _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(raw));
}

inline __m256i nonzero_mask(__m256i v) {
  return _mm256_xor_si256(_mm256_cmpeq_epi64(v, _mm256_setzero_si256()), _mm256_set1_epi64x(-1));
}

// Lane masks (all-ones / zero) to 0/1 bytes.
inline void store_mask_bytes(__m256i mask, std::uint8_t* out) {
  const int bits = _mm256_movemask_pd(_mm256_castsi256_pd(mask));
  out[0] = bits & 1;
  out[1] = (bits >> 1) & 1;
  out[2] = (bits >> 2) & 1;
  out[3] = (bits >> 3) & 1;
}

std::int64_t max_value_avx2(const std::int64_t* v, std::size_t n) {
  __m256i best = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i x = load4(v + i);
    best = _mm256_blendv_epi8(best, x, _mm256_cmpgt_epi64(x, best));
  }
  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), best);
  std::int64_t out = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) out = std::max(out, v[i]);
  return out;
}

std::int64_t sum_avx2(const std::int64_t* v, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_epi64(acc, load4(v + i));
  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::int64_t out = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) out += v[i];
  return out;
}

// Without a 64-bit lane multiply the heavy test is evaluated as
// Q_i >= ceil((n - 1) * Δ / n), which is the same predicate for integers.
void classify_avx2(const std::int64_t* w, std::size_t n, std::int64_t delta, std::uint8_t* heavy,
                   std::uint8_t* critical) {
  if (delta <= 0) {
    std::memset(heavy, 0, n);
    std::memset(critical, 0, n);
    return;
  }
  const auto nn = static_cast<std::int64_t>(n);
  // smallest w with n*w >= (n-1)*delta
  const __int128 num = static_cast<__int128>(nn - 1) * delta;
  const auto threshold = static_cast<std::int64_t>((num + nn - 1) / nn);
  const __m256i below = _mm256_set1_epi64x(threshold - 1);
  const __m256i top = _mm256_set1_epi64x(delta);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i x = load4(w + i);
    store_mask_bytes(_mm256_cmpgt_epi64(x, below), heavy + i);
    store_mask_bytes(_mm256_cmpeq_epi64(x, top), critical + i);
  }
  for (; i < n; ++i) {
    heavy[i] = w[i] >= threshold;
    critical[i] = w[i] == delta;
  }
}

void service_indicator_avx2(const std::uint8_t* prev, const std::uint8_t* prev2, std::size_t n,
                            bool frame_last_slot, std::uint8_t* out) {
  if (!frame_last_slot) {
    std::memcpy(out, prev, n);
    return;
  }
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(prev + i));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(prev2 + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_and_si256(a, b));
  }
  for (; i < n; ++i) out[i] = prev[i] & prev2[i];
}

void nsb_weights_avx2(const std::int64_t* w, const std::uint8_t* heavy, const std::uint8_t* served,
                      std::size_t n, std::int64_t* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i x = load4(w + i);
    const __m256i h = nonzero_mask(widen_flags(heavy + i));
    const __m256i s = nonzero_mask(widen_flags(served + i));
    const __m256i doubled = _mm256_andnot_si256(s, h);
    store4(out + i, _mm256_add_epi64(x, _mm256_and_si256(x, doubled)));
  }
  for (; i < n; ++i) out[i] = heavy[i] ? w[i] * (2 - served[i]) : w[i];
}

void lcnsb_weights_avx2(const std::uint8_t* heavy, const std::uint8_t* critical,
                        const std::uint8_t* served, std::size_t n, std::int64_t* out) {
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i four = _mm256_set1_epi64x(4);
  const __m256i five = _mm256_set1_epi64x(5);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i h = nonzero_mask(widen_flags(heavy + i));
    const __m256i c = nonzero_mask(widen_flags(critical + i));
    const __m256i u = widen_flags(served + i);
    __m256i base = _mm256_blendv_epi8(one, four, h);
    base = _mm256_blendv_epi8(base, five, c);
    const __m256i penalty = _mm256_and_si256(_mm256_or_si256(h, c), _mm256_add_epi64(u, u));
    store4(out + i, _mm256_sub_epi64(base, penalty));
  }
  for (; i < n; ++i) {
    if (critical[i]) {
      out[i] = 5 - 2 * served[i];
    } else if (heavy[i]) {
      out[i] = 4 - 2 * served[i];
    } else {
      out[i] = 1;
    }
  }
}

void add_in_place_avx2(std::int64_t* dst, const std::int64_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store4(dst + i, _mm256_add_epi64(load4(dst + i), load4(src + i)));
  for (; i < n; ++i) dst[i] += src[i];
}

void positive_mask_avx2(const std::int64_t* v, std::size_t n, std::uint8_t* out) {
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store_mask_bytes(_mm256_cmpgt_epi64(load4(v + i), zero), out + i);
  for (; i < n; ++i) out[i] = v[i] > 0;
}

}  // namespace

const KernelTable kAvx2Table = {
    "avx2",
    max_value_avx2,
    sum_avx2,
    classify_avx2,
    service_indicator_avx2,
    nsb_weights_avx2,
    lcnsb_weights_avx2,
    add_in_place_avx2,
    positive_mask_avx2,
};

}  // namespace linksched::kernels::detail

#endif  // LINKSCHED_HAVE_AVX2
