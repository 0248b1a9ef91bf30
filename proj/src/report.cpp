#include "linksched/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "linksched/errors.hpp"
#include "linksched/topogen.hpp"

namespace linksched {
namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string fmt_lambda(double v) { return fmt("%.6g", v); }

std::string file_stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

void need(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

std::int64_t as_int(const nlohmann::json& j, const char* key) {
  need(j.is_number_integer(), std::string("config key '") + key + "' must be an integer");
  return j.get<std::int64_t>();
}

}  // namespace

std::string InstanceSpec::label() const {
  if (!name.empty()) return name;
  std::string base;
  if (generator == "grid") {
    base = "grid" + std::to_string(rows) + "x" + std::to_string(cols);
  } else if (generator == "mesh") {
    base = "mesh" + std::to_string(nodes);
  } else if (generator == "random") {
    base = "rand" + std::to_string(nodes) + "-" + std::to_string(links);
  } else if (generator == "regular") {
    return "regm" + std::to_string(nodes) + "." + std::to_string(degree);
  } else if (generator == "fig9") {
    return "fig9-" + std::to_string(n);
  } else if (generator == "path") {
    return "path-" + std::to_string(n);
  } else {
    base = file_stem(path);
  }
  if (max_y) base += "." + std::to_string(*max_y);
  return base;
}

std::string resolve_dimacs_path(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return path;
  const char* dir = std::getenv("LINKSCHED_DIMACS_DIR");
  if (dir && *dir) {
    const fs::path alt = fs::path(dir) / fs::path(path).filename();
    if (fs::exists(alt)) return alt.string();
  }
  return path;
}

Topology build_topology(const InstanceSpec& spec) {
  const std::string& g = spec.generator;
  if (g == "grid") return gen_grid(spec.rows, spec.cols);
  if (g == "mesh") return gen_triangular_mesh(spec.nodes, spec.seed);
  if (g == "random") return gen_random_connected(spec.nodes, spec.links, spec.seed);
  return build_evac_instance(spec).topo;
}

EvacInstance build_evac_instance(const InstanceSpec& spec) {
  const std::string& g = spec.generator;
  EvacInstance inst;
  if (g == "grid" || g == "mesh" || g == "random") {
    if (!spec.max_y) throw UsageError("generator '" + g + "' needs a multiplicity bound (--max-y)");
    return assign_random_multiplicities(build_topology(spec), *spec.max_y, spec.seed);
  }
  if (g == "regular") {
    inst = gen_regular_multigraph(spec.nodes, spec.degree, spec.seed);
  } else if (g == "fig9") {
    inst = gen_special_spider(spec.n);
  } else if (g == "path") {
    inst = gen_path_special(spec.n);
  } else if (g == "dimacs") {
    inst = parse_dimacs(read_file(resolve_dimacs_path(spec.path)));
  } else if (g == "file") {
    inst = parse_instance(read_file(spec.path));
  } else {
    throw UsageError("unknown generator '" + g + "'");
  }
  if (spec.max_y) inst = assign_random_multiplicities(inst.topo, *spec.max_y, spec.seed);
  return inst;
}

void apply_config_json(ExperimentConfig& cfg, std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("config: ") + e.what());
  }
  need(doc.is_object(), "config must be a JSON object");
  for (const auto& [key, val] : doc.items()) {
    if (key == "mode") {
      need(val.is_string(), "config key 'mode' must be a string");
    } else if (key == "instance") {
      need(val.is_object(), "config key 'instance' must be an object");
      InstanceSpec spec;
      for (const auto& [k, v] : val.items()) {
        if (k == "generator") {
          need(v.is_string(), "instance.generator must be a string");
          spec.generator = v.get<std::string>();
        } else if (k == "path" || k == "name") {
          need(v.is_string(), "instance." + k + " must be a string");
          (k == "path" ? spec.path : spec.name) = v.get<std::string>();
        } else if (k == "rows") {
          spec.rows = static_cast<int>(as_int(v, "instance.rows"));
        } else if (k == "cols") {
          spec.cols = static_cast<int>(as_int(v, "instance.cols"));
        } else if (k == "nodes") {
          spec.nodes = static_cast<int>(as_int(v, "instance.nodes"));
        } else if (k == "links") {
          spec.links = static_cast<int>(as_int(v, "instance.links"));
        } else if (k == "degree") {
          spec.degree = static_cast<int>(as_int(v, "instance.degree"));
        } else if (k == "n") {
          spec.n = static_cast<int>(as_int(v, "instance.n"));
        } else if (k == "max_y") {
          spec.max_y = as_int(v, "instance.max_y");
        } else if (k == "seed") {
          spec.seed = static_cast<std::uint64_t>(as_int(v, "instance.seed"));
        } else {
          throw UsageError("unknown config key 'instance." + k + "'");
        }
      }
      need(!spec.generator.empty(), "instance.generator is required");
      cfg.instance = spec;
    } else if (key == "policies") {
      need(val.is_array(), "config key 'policies' must be an array");
      std::string csv;
      for (const auto& p : val) {
        need(p.is_string(), "policies must be strings");
        csv += (csv.empty() ? "" : ",") + p.get<std::string>();
      }
      cfg.policies = parse_policy_list(csv);
    } else if (key == "traffic") {
      need(val.is_object(), "config key 'traffic' must be an object");
      for (const auto& [k, v] : val.items()) {
        if (k == "kind") {
          need(v.is_string(), "traffic.kind must be a string");
          cfg.traffic = parse_traffic_kind(v.get<std::string>());
        } else if (k == "p") {
          need(v.is_number(), "traffic.p must be a number");
          cfg.file_probability = v.get<double>();
        } else if (k == "support") {
          cfg.zipf_support = static_cast<int>(as_int(v, "traffic.support"));
        } else if (k == "lambdas") {
          need(v.is_array(), "traffic.lambdas must be an array");
          std::string csv;
          for (const auto& x : v) {
            need(x.is_number(), "traffic.lambdas must hold numbers");
            csv += (csv.empty() ? "" : ",") + fmt("%.17g", x.get<double>());
          }
          cfg.lambdas = parse_lambda_list(csv);
        } else {
          throw UsageError("unknown config key 'traffic." + k + "'");
        }
      }
    } else if (key == "slots") {
      cfg.slots = as_int(val, "slots");
    } else if (key == "warmup") {
      cfg.warmup = as_int(val, "warmup");
    } else if (key == "seeds") {
      need(val.is_array() && !val.empty(), "config key 'seeds' must be a nonempty array");
      cfg.seeds.clear();
      cfg.seeds_set = true;
      for (const auto& s : val) cfg.seeds.push_back(static_cast<std::uint64_t>(as_int(s, "seeds")));
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(as_int(val, "threads"));
    } else if (key == "out") {
      need(val.is_string(), "config key 'out' must be a string");
      cfg.out = val.get<std::string>();
    } else {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
}

std::vector<double> parse_lambda_list(std::string_view text) {
  std::vector<double> out;
  auto to_double = [](std::string_view s) {
    const std::string str(s);
    char* end = nullptr;
    const double v = std::strtod(str.c_str(), &end);
    if (str.empty() || end != str.c_str() + str.size()) throw UsageError("not a number: '" + str + "'");
    return v;
  };
  if (text.find(':') != std::string_view::npos) {
    const auto a = text.find(':');
    const auto b = text.find(':', a + 1);
    if (b == std::string_view::npos) throw UsageError("range must be start:stop:step");
    const double start = to_double(text.substr(0, a));
    const double stop = to_double(text.substr(a + 1, b - a - 1));
    const double step = to_double(text.substr(b + 1));
    if (!(step > 0.0)) throw UsageError("range step must be positive");
    const auto count = static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9));
    for (std::int64_t k = 0; k <= count; ++k) {
      // round away accumulated binary error so labels stay clean
      out.push_back(std::round((start + static_cast<double>(k) * step) * 1e9) / 1e9);
    }
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find(',', pos);
      if (end == std::string_view::npos) end = text.size();
      out.push_back(to_double(text.substr(pos, end - pos)));
      pos = end + 1;
    }
  }
  if (out.empty()) throw UsageError("empty arrival-rate list");
  for (double v : out) {
    if (!(v > 0.0) || !std::isfinite(v)) throw UsageError("arrival rates must be positive, got " + fmt_lambda(v));
  }
  if (!std::is_sorted(out.begin(), out.end())) throw UsageError("arrival-rate list must be ascending");
  return out;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string tok(text.substr(pos, end - pos));
    const auto dash = tok.find('-', 1);
    try {
      std::size_t used = 0;
      if (dash != std::string::npos) {
        const auto lo = std::stoull(tok.substr(0, dash), &used);
        if (used != dash) throw UsageError("");
        const auto hi = std::stoull(tok.substr(dash + 1), &used);
        if (used != tok.size() - dash - 1 || hi < lo) throw UsageError("");
        for (auto s = lo; s <= hi; ++s) out.push_back(s);
      } else {
        out.push_back(std::stoull(tok, &used));
        if (used != tok.size() || tok.front() == '-') throw UsageError("");
      }
    } catch (const std::exception&) {
      throw UsageError("bad seed '" + tok + "'");
    }
    pos = end + 1;
  }
  if (out.empty()) throw UsageError("empty seed list");
  return out;
}

std::string_view csv_header() {
  return "mode,instance,policy,lambda,seed,slots,warmup,avg_total_queue,evac_time,delta0,min_dep_ratio";
}

std::string format_csv_row(const CsvRow& r) {
  auto i64 = [](const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string(); };
  auto f6 = [](const std::optional<double>& v) { return v ? fmt("%.6f", *v) : std::string(); };
  std::string s = r.mode + "," + r.instance + "," + r.policy + ",";
  s += (r.lambda ? fmt_lambda(*r.lambda) : std::string()) + ",";
  s += r.seed + "," + i64(r.slots) + "," + i64(r.warmup) + "," + f6(r.avg_total_queue) + ",";
  s += i64(r.evac_time) + "," + i64(r.delta0) + "," + f6(r.min_dep_ratio);
  return s;
}

std::string format_csv(const std::vector<CsvRow>& rows) {
  std::string out(csv_header());
  out += '\n';
  for (const auto& r : rows) out += format_csv_row(r) + '\n';
  return out;
}

EvacuationResult run_evacuation_suite(const EvacInstance& instance, const std::string& label,
                                      const std::vector<Policy>& policies, std::optional<std::uint64_t> seed) {
  EvacuationResult res;
  res.instance = label;
  res.seed = seed;
  res.delta0 = instance.max_degree();
  res.lower_bound = evacuation_lower_bound(instance);
  EvacuationOptions opts;
  opts.record_trace = false;
  for (Policy p : policies) res.evac_times.emplace_back(p, run_evacuation(instance, p, opts).evac_time);
  return res;
}

std::vector<CsvRow> evacuation_rows(const EvacuationResult& result) {
  std::vector<CsvRow> rows;
  for (const auto& [p, t] : result.evac_times) {
    CsvRow r;
    r.mode = "evacuation";
    r.instance = result.instance;
    r.policy = std::string(policy_name(p));
    if (result.seed) r.seed = std::to_string(*result.seed);
    r.evac_time = t;
    r.delta0 = result.delta0;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string format_evacuation_table(const std::vector<EvacuationResult>& results, const std::vector<Policy>& policies) {
  std::size_t width = 8;
  for (const auto& r : results) width = std::max(width, r.instance.size() + 2);
  std::ostringstream out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-*s", static_cast<int>(width), "instance");
  out << buf;
  for (Policy p : policies) {
    std::string name(policy_name(p));
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::toupper(c); });
    if (p == Policy::lcnsb) name = "LC-NSB";
    std::snprintf(buf, sizeof buf, "%8s", name.c_str());
    out << buf;
  }
  out << "   Delta\n";
  for (const auto& r : results) {
    std::snprintf(buf, sizeof buf, "%-*s", static_cast<int>(width), r.instance.c_str());
    out << buf;
    for (Policy p : policies) {
      const auto it = std::find_if(r.evac_times.begin(), r.evac_times.end(), [&](const auto& e) { return e.first == p; });
      std::snprintf(buf, sizeof buf, "%8lld", it == r.evac_times.end() ? -1LL : static_cast<long long>(it->second));
      out << buf;
    }
    std::snprintf(buf, sizeof buf, "%8lld\n", static_cast<long long>(r.delta0));
    out << buf;
  }
  return out.str();
}

std::vector<ThroughputRun> run_throughput_sweep(const Topology& topo, const ExperimentConfig& cfg) {
  if (cfg.policies.empty()) throw UsageError("empty policy list");
  if (cfg.seeds.empty()) throw UsageError("empty seed list");
  if (cfg.lambdas.empty()) throw UsageError("empty arrival-rate list");
  std::vector<ThroughputRun> runs;
  std::vector<TrafficModel> models;
  for (Policy p : cfg.policies) {
    for (double lambda : cfg.lambdas) {
      for (std::uint64_t seed : cfg.seeds) {
        TrafficModel m;
        switch (cfg.traffic) {
          case TrafficKind::poisson: m = TrafficModel::poisson(lambda, seed); break;
          case TrafficKind::file: m = TrafficModel::file(cfg.file_probability, lambda, seed); break;
          case TrafficKind::zipf: m = TrafficModel::zipf(lambda, cfg.zipf_support, seed); break;
          case TrafficKind::none: throw UsageError("throughput runs need a traffic kind");
        }
        m.validate();
        models.push_back(m);
        runs.push_back({p, lambda, seed, {}});
      }
    }
  }
  unsigned threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(runs.size()));

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  auto worker = [&](unsigned id) {
    try {
      for (std::size_t j = next++; j < runs.size(); j = next++) {
        runs[j].record = run_throughput(topo, runs[j].policy, models[j], cfg.slots, cfg.warmup);
      }
    } catch (...) {
      errors[id] = std::current_exception();
      next = runs.size();
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return runs;
}

std::vector<CsvRow> throughput_rows(const std::string& instance, const ExperimentConfig& cfg,
                                    const std::vector<ThroughputRun>& runs) {
  std::vector<CsvRow> rows;
  auto base = [&](Policy p, double lambda) {
    CsvRow r;
    r.mode = "throughput";
    r.instance = instance;
    r.policy = std::string(policy_name(p));
    r.lambda = lambda;
    r.slots = cfg.slots;
    r.warmup = cfg.warmup;
    return r;
  };
  for (const auto& run : runs) {
    CsvRow r = base(run.policy, run.lambda);
    r.seed = std::to_string(run.seed);
    r.avg_total_queue = run.record.avg_total_queue;
    r.min_dep_ratio = run.record.min_departure_ratio();
    rows.push_back(std::move(r));
  }
  for (Policy p : cfg.policies) {
    for (double lambda : cfg.lambdas) {
      double sum = 0.0;
      double worst = 1.0;
      int k = 0;
      for (const auto& run : runs) {
        if (run.policy != p || run.lambda != lambda) continue;
        sum += run.record.avg_total_queue;
        worst = std::min(worst, run.record.min_departure_ratio());
        ++k;
      }
      if (k == 0) continue;
      CsvRow r = base(p, lambda);
      r.seed = "mean";
      r.avg_total_queue = sum / k;
      r.min_dep_ratio = worst;
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

std::string format_throughput_table(const ExperimentConfig& cfg, const std::vector<ThroughputRun>& runs) {
  std::ostringstream out;
  char buf[64];
  out << "  lambda";
  for (Policy p : cfg.policies) {
    std::snprintf(buf, sizeof buf, "%12s", std::string(policy_name(p)).c_str());
    out << buf;
  }
  out << '\n';
  for (double lambda : cfg.lambdas) {
    std::snprintf(buf, sizeof buf, "%8s", fmt_lambda(lambda).c_str());
    out << buf;
    for (Policy p : cfg.policies) {
      double sum = 0.0;
      int k = 0;
      for (const auto& run : runs) {
        if (run.policy == p && run.lambda == lambda) {
          sum += run.record.avg_total_queue;
          ++k;
        }
      }
      std::snprintf(buf, sizeof buf, "%12.3f", k ? sum / k : 0.0);
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace linksched
