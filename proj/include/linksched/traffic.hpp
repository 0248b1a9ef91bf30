#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace linksched {

enum class TrafficKind { none, poisson, file, zipf };

inline constexpr int kDefaultZipfSupport = 1000;

/// Arrival process applied i.i.d. to every link.
struct TrafficModel {
  TrafficKind kind = TrafficKind::none;
  double lambda = 0.0;            // mean packets per link per slot
  double file_probability = 0.1;  // file kind only
  int zipf_support = kDefaultZipfSupport;
  std::uint64_t seed = 0;

  static TrafficModel none() { return {}; }
  static TrafficModel poisson(double lambda, std::uint64_t seed);
  static TrafficModel file(double p, double lambda, std::uint64_t seed);
  static TrafficModel zipf(double lambda, int support, std::uint64_t seed);

  /// Throws ParameterError when the parameters violate the model invariants.
  void validate() const;
};

std::string_view traffic_kind_name(TrafficKind k);
TrafficKind parse_traffic_kind(std::string_view name);

/// Counter-based uniform stream keyed by (seed, link, slot). Draws are
/// independent across keys and reproducible regardless of evaluation order.
class KeyedStream {
 public:
  KeyedStream(std::uint64_t seed, std::uint64_t link, std::uint64_t slot);
  std::uint64_t next_u64();
  double next_unit();  // [0, 1)

 private:
  std::uint64_t state_;
};

/// Poisson(mean) by sequential inversion.
std::int64_t sample_poisson(double mean, KeyedStream& stream);

/// s such that the mean of P(v) ∝ (v+1)^-s on {0..support-1} equals `lambda`
/// to within 1e-9. Throws ParameterError outside the attainable range.
double solve_zipf_exponent(double lambda, int support);

/// Mean of the (v+1)^-s law on {0..support-1}.
double zipf_mean(double exponent, int support);

/// Stateless sampler for one TrafficModel. Precomputes what it can (Zipf CDF).
class ArrivalSampler {
 public:
  explicit ArrivalSampler(TrafficModel model);

  const TrafficModel& model() const noexcept { return model_; }

  /// Arrivals for `slot` on links [0, out.size()).
  void sample(std::int64_t slot, std::span<std::int64_t> out) const;
  std::int64_t sample_link(std::int64_t slot, std::int64_t link) const;

  double zipf_exponent() const noexcept { return zipf_exponent_; }

 private:
  TrafficModel model_;
  double zipf_exponent_ = 0.0;
  std::vector<double> zipf_cdf_;
};

/// Convenience one-shot form.
std::vector<std::int64_t> sample_arrivals(const TrafficModel& model, int link_count, std::int64_t slot);

}  // namespace linksched
