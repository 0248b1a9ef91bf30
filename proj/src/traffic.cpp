#include "linksched/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "linksched/errors.hpp"
#include "linksched/random.hpp"

namespace linksched {

TrafficModel TrafficModel::poisson(double lambda, std::uint64_t seed) {
  TrafficModel m;
  m.kind = TrafficKind::poisson;
  m.lambda = lambda;
  m.seed = seed;
  return m;
}

TrafficModel TrafficModel::file(double p, double lambda, std::uint64_t seed) {
  TrafficModel m;
  m.kind = TrafficKind::file;
  m.file_probability = p;
  m.lambda = lambda;
  m.seed = seed;
  return m;
}

TrafficModel TrafficModel::zipf(double lambda, int support, std::uint64_t seed) {
  TrafficModel m;
  m.kind = TrafficKind::zipf;
  m.lambda = lambda;
  m.zipf_support = support;
  m.seed = seed;
  return m;
}

void TrafficModel::validate() const {
  if (kind == TrafficKind::none) return;
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("arrival rate must be positive");
  if (kind == TrafficKind::file && !(file_probability > 0.0 && file_probability <= 1.0)) {
    throw ParameterError("file arrival probability must lie in (0, 1]");
  }
  if (kind == TrafficKind::zipf) {
    if (zipf_support < 2) throw ParameterError("zipf support must have at least two values");
    if (!(lambda < (zipf_support - 1) / 2.0)) {
      throw ParameterError("zipf mean must be below the uniform-case mean " + std::to_string((zipf_support - 1) / 2.0));
    }
  }
}

std::string_view traffic_kind_name(TrafficKind k) {
  switch (k) {
    case TrafficKind::none: return "none";
    case TrafficKind::poisson: return "poisson";
    case TrafficKind::file: return "file";
    case TrafficKind::zipf: return "zipf";
  }
  return "?";
}

TrafficKind parse_traffic_kind(std::string_view name) {
  for (TrafficKind k : {TrafficKind::none, TrafficKind::poisson, TrafficKind::file, TrafficKind::zipf}) {
    if (traffic_kind_name(k) == name) return k;
  }
  throw UsageError("unknown traffic kind '" + std::string(name) + "'");
}

KeyedStream::KeyedStream(std::uint64_t seed, std::uint64_t link, std::uint64_t slot)
    : state_(splitmix64(seed ^ splitmix64(link ^ splitmix64(slot ^ 0x5851f42d4c957f2dULL)))) {}

std::uint64_t KeyedStream::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double KeyedStream::next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::int64_t sample_poisson(double mean, KeyedStream& stream) {
  if (mean <= 0.0) return 0;
  const double u = stream.next_unit();
  double p = std::exp(-mean);
  double cdf = p;
  std::int64_t k = 0;
  // The cap only matters when u lands in the rounding gap at the top of the CDF.
  const auto cap = static_cast<std::int64_t>(mean + 40.0 * std::sqrt(mean) + 40.0);
  while (u >= cdf && k < cap) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

double zipf_mean(double exponent, int support) {
  double num = 0.0;
  double den = 0.0;
  for (int v = support - 1; v >= 0; --v) {  // small terms first
    const double t = std::pow(static_cast<double>(v + 1), -exponent);
    num += v * t;
    den += t;
  }
  return num / den;
}

double solve_zipf_exponent(double lambda, int support) {
  constexpr double kTol = 1e-9;
  constexpr double kMaxExponent = 64.0;
  if (support < 2) throw ParameterError("zipf support must have at least two values");
  const double upper_mean = (support - 1) / 2.0;
  const double lower_mean = zipf_mean(kMaxExponent, support);
  if (!(lambda > lower_mean && lambda < upper_mean)) {
    throw ParameterError("zipf mean " + std::to_string(lambda) + " outside attainable range (" +
                         std::to_string(lower_mean) + ", " + std::to_string(upper_mean) + ")");
  }
  // The mean is strictly decreasing in the exponent.
  double lo = 0.0;
  double hi = kMaxExponent;
  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 400; ++iter) {
    mid = 0.5 * (lo + hi);
    const double m = zipf_mean(mid, support);
    if (std::abs(m - lambda) <= kTol) return mid;
    if (m > lambda) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 0.0) break;
  }
  return mid;
}

ArrivalSampler::ArrivalSampler(TrafficModel model) : model_(model) {
  model_.validate();
  if (model_.kind == TrafficKind::zipf) {
    zipf_exponent_ = solve_zipf_exponent(model_.lambda, model_.zipf_support);
    zipf_cdf_.resize(static_cast<std::size_t>(model_.zipf_support));
    double acc = 0.0;
    for (int v = 0; v < model_.zipf_support; ++v) {
      acc += std::pow(static_cast<double>(v + 1), -zipf_exponent_);
      zipf_cdf_[static_cast<std::size_t>(v)] = acc;
    }
    for (double& c : zipf_cdf_) c /= acc;
    zipf_cdf_.back() = 1.0;
  }
}

std::int64_t ArrivalSampler::sample_link(std::int64_t slot, std::int64_t link) const {
  if (model_.kind == TrafficKind::none) return 0;
  KeyedStream stream(model_.seed, static_cast<std::uint64_t>(link), static_cast<std::uint64_t>(slot));
  switch (model_.kind) {
    case TrafficKind::poisson:
      return sample_poisson(model_.lambda, stream);
    case TrafficKind::file:
      if (stream.next_unit() >= model_.file_probability) return 0;
      return sample_poisson(model_.lambda / model_.file_probability, stream);
    case TrafficKind::zipf: {
      const double u = stream.next_unit();
      const auto it = std::upper_bound(zipf_cdf_.begin(), zipf_cdf_.end(), u);
      return std::min<std::int64_t>(it - zipf_cdf_.begin(), model_.zipf_support - 1);
    }
    case TrafficKind::none:
      break;
  }
  return 0;
}

void ArrivalSampler::sample(std::int64_t slot, std::span<std::int64_t> out) const {
  if (model_.kind == TrafficKind::none) {
    std::fill(out.begin(), out.end(), 0);
    return;
  }
  for (std::size_t l = 0; l < out.size(); ++l) out[l] = sample_link(slot, static_cast<std::int64_t>(l));
}

std::vector<std::int64_t> sample_arrivals(const TrafficModel& model, int link_count, std::int64_t slot) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(link_count), 0);
  ArrivalSampler(model).sample(slot, out);
  return out;
}

}  // namespace linksched
