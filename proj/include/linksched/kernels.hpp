#pragma once

// Data-parallel inner loops of the scheduler and simulator.
//
// Each kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The active table is picked once at startup from CPUID; setting
// LINKSCHED_KERNELS=scalar in the environment forces the reference path.
// Both tables must produce identical results for every input.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace linksched::kernels {

struct KernelTable {
  std::string_view name;

  std::int64_t (*max_value)(const std::int64_t* values, std::size_t n);
  std::int64_t (*sum)(const std::int64_t* values, std::size_t n);

  // heavy[i] = n*w[i] >= (n-1)*delta, critical[i] = w[i] == delta; all zero when delta == 0.
  void (*classify)(const std::int64_t* workload, std::size_t n, std::int64_t delta,
                   std::uint8_t* heavy, std::uint8_t* critical);

  // U_i(k): prev & prev2 on the last slot of a frame, prev otherwise.
  void (*service_indicator)(const std::uint8_t* prev, const std::uint8_t* prev2, std::size_t n,
                            bool frame_last_slot, std::uint8_t* out);

  // w = workload * (2 - U) for heavy nodes, workload otherwise.
  void (*nsb_weights)(const std::int64_t* workload, const std::uint8_t* heavy,
                      const std::uint8_t* served, std::size_t n, std::int64_t* out);

  // w = 5 - 2U (critical), 4 - 2U (heavy), 1 otherwise.
  void (*lcnsb_weights)(const std::uint8_t* heavy, const std::uint8_t* critical,
                        const std::uint8_t* served, std::size_t n, std::int64_t* out);

  void (*add_in_place)(std::int64_t* dst, const std::int64_t* src, std::size_t n);

  // out[i] = values[i] > 0
  void (*positive_mask)(const std::int64_t* values, std::size_t n, std::uint8_t* out);
};

const KernelTable& scalar();

/// AVX2 table, or nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2();

/// The table used by the library.
const KernelTable& active();

// Span wrappers over the active table.
std::int64_t max_value(std::span<const std::int64_t> v);
std::int64_t sum(std::span<const std::int64_t> v);
void classify(std::span<const std::int64_t> workload, std::int64_t delta,
              std::span<std::uint8_t> heavy, std::span<std::uint8_t> critical);
void service_indicator(std::span<const std::uint8_t> prev, std::span<const std::uint8_t> prev2,
                       bool frame_last_slot, std::span<std::uint8_t> out);
void nsb_weights(std::span<const std::int64_t> workload, std::span<const std::uint8_t> heavy,
                 std::span<const std::uint8_t> served, std::span<std::int64_t> out);
void lcnsb_weights(std::span<const std::uint8_t> heavy, std::span<const std::uint8_t> critical,
                   std::span<const std::uint8_t> served, std::span<std::int64_t> out);
void add_in_place(std::span<std::int64_t> dst, std::span<const std::int64_t> src);
void positive_mask(std::span<const std::int64_t> values, std::span<std::uint8_t> out);

}  // namespace linksched::kernels
