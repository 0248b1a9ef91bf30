#include "linksched/validation.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>

#include "linksched/errors.hpp"
#include "linksched/matching.hpp"
#include "linksched/oracle.hpp"
#include "linksched/schedulers.hpp"
#include "linksched/topogen.hpp"

namespace linksched {
namespace {

class SuiteRun {
 public:
  SuiteRun(std::string name, const SuiteOptions& opts) : opts_(opts), start_(std::chrono::steady_clock::now()) {
    result_.name = std::move(name);
  }

  void check(bool ok, const std::function<std::string()>& describe) {
    ++result_.checks;
    if (ok) return;
    ++result_.failures;
    if (static_cast<int>(result_.reports.size()) < opts_.max_reports) result_.reports.push_back(describe());
  }

  void instance() { ++result_.instances; }

  SuiteResult finish() {
    result_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return std::move(result_);
  }

 private:
  const SuiteOptions& opts_;
  std::chrono::steady_clock::time_point start_;
  SuiteResult result_;
};

int resolve_count(const SuiteOptions& opts, std::string_view name) {
  return opts.count > 0 ? opts.count : default_suite_count(name);
}

MetricsRecord evacuate(const SuiteOptions& opts, const EvacInstance& inst, Policy p) {
  if (!opts.scheduler) return run_evacuation(inst, p);
  EvacuationOptions eo;
  // a faulty scheduler is still a maximal matching; give it room to finish
  eo.max_slots = 4 * inst.max_degree() + 4;
  return run_evacuation_with(
      inst, p, [&](const NetworkState& s, const Topology& t) { return opts.scheduler(p, s, t); }, eo);
}

std::string header(std::string_view suite, std::uint64_t seed, int index) {
  std::ostringstream out;
  out << "# suite " << suite << " seed " << seed << " instance " << index << '\n';
  return out.str();
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << +v[i];
  return out.str();
}

// Random simple graph on n nodes with at most max_links links.
Topology random_topology(Rng& rng, int n, int max_links) {
  const double density = 0.2 + 0.7 * uniform_unit(rng);
  std::vector<Link> links;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      if (uniform_unit(rng) < density) links.push_back({a, b});
    }
  }
  shuffle(links, rng);
  if (static_cast<int>(links.size()) > max_links) links.resize(static_cast<std::size_t>(max_links));
  std::sort(links.begin(), links.end(), [](const Link& x, const Link& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
  return Topology(n, std::move(links));
}

}  // namespace

Rng instance_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(seed * 0x9e3779b97f4a7c15ULL + splitmix64(index)));
}

EvacInstance random_multigraph(Rng& rng, int max_n, std::int64_t max_mult) {
  const int n = 2 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_n - 1)));
  Topology topo = random_topology(rng, n, n * n);
  if (topo.link_count() == 0) topo = Topology(n, {{0, 1}});
  std::vector<std::int64_t> mult(static_cast<std::size_t>(topo.link_count()));
  for (auto& y : mult) y = 1 + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(max_mult)));
  return {std::move(topo), std::move(mult)};
}

EvacInstance random_bipartite_multigraph(Rng& rng, int max_side, std::int64_t max_mult) {
  const int a = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_side)));
  const int b = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_side)));
  const double density = 0.2 + 0.7 * uniform_unit(rng);
  // interleave the two sides so node ids do not reveal the partition
  std::vector<NodeId> ids(static_cast<std::size_t>(a + b));
  std::iota(ids.begin(), ids.end(), 0);
  shuffle(ids, rng);
  std::vector<Link> links;
  for (int x = 0; x < a; ++x) {
    for (int y = 0; y < b; ++y) {
      if (uniform_unit(rng) < density) {
        const NodeId u = ids[static_cast<std::size_t>(x)];
        const NodeId v = ids[static_cast<std::size_t>(a + y)];
        links.push_back({std::min(u, v), std::max(u, v)});
      }
    }
  }
  if (links.empty()) {
    const NodeId u = ids[0];
    const NodeId v = ids[static_cast<std::size_t>(a)];
    links.push_back({std::min(u, v), std::max(u, v)});
  }
  std::sort(links.begin(), links.end(), [](const Link& x, const Link& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
  Topology topo(a + b, std::move(links));
  std::vector<std::int64_t> mult(static_cast<std::size_t>(topo.link_count()));
  for (auto& y : mult) y = 1 + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(max_mult)));
  return {std::move(topo), std::move(mult)};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"prop1", "bipartite", "oracle", "lemma4"};
  return names;
}

int default_suite_count(std::string_view name) {
  if (name == "prop1") return 500;
  if (name == "bipartite") return 200;
  if (name == "oracle") return 1000;
  if (name == "lemma4") return 300;
  throw UsageError("unknown suite '" + std::string(name) + "'");
}

SuiteResult run_suite(std::string_view name, const SuiteOptions& opts) {
  if (name == "prop1") return run_prop1_suite(opts);
  if (name == "bipartite") return run_bipartite_suite(opts);
  if (name == "oracle") return run_oracle_suite(opts);
  if (name == "lemma4") return run_lemma4_suite(opts);
  throw UsageError("unknown suite '" + std::string(name) + "'");
}

SuiteResult run_prop1_suite(const SuiteOptions& opts) {
  SuiteRun run("prop1", opts);
  const int count = resolve_count(opts, "prop1");
  for (int i = 0; i < count; ++i) {
    Rng rng = instance_rng(opts.seed, static_cast<std::uint64_t>(i));
    const EvacInstance inst = random_multigraph(rng, 12, 5);
    run.instance();
    for (Policy p : {Policy::nsb, Policy::lcnsb}) {
      std::vector<FrameViolation> bad;
      std::string error;
      try {
        bad = check_frame_drain(evacuate(opts, inst, p).trace);
      } catch (const ContractViolation& e) {
        error = e.what();
      }
      run.check(bad.empty() && error.empty(), [&] {
        std::ostringstream out;
        out << header("prop1", opts.seed, i) << "# policy " << policy_name(p);
        if (!error.empty()) out << " error: " << error;
        if (!bad.empty()) {
          out << " frame " << bad[0].frame << " delta " << bad[0].start_delta << " -> " << bad[0].end_delta
              << " (" << bad.size() << " violating frames)";
        }
        out << '\n' << serialize_instance(inst);
        return out.str();
      });
    }
  }
  return run.finish();
}

SuiteResult run_bipartite_suite(const SuiteOptions& opts) {
  SuiteRun run("bipartite", opts);
  const int count = resolve_count(opts, "bipartite");
  for (int i = 0; i <= count; ++i) {
    Rng rng = instance_rng(opts.seed, static_cast<std::uint64_t>(i));
    // the last instance is the 4x4 grid
    const EvacInstance inst =
        i < count ? random_bipartite_multigraph(rng, 6, 5) : assign_random_multiplicities(gen_grid(4, 4), 5, rng());
    run.instance();
    run.check(is_bipartite(inst.topo), [&] { return header("bipartite", opts.seed, i) + "# not bipartite\n"; });
    for (Policy p : {Policy::nsb, Policy::lcnsb, Policy::mvm}) {
      std::int64_t t = -1;
      std::string error;
      try {
        t = evacuate(opts, inst, p).evac_time;
      } catch (const ContractViolation& e) {
        error = e.what();
      }
      const std::int64_t d0 = inst.max_degree();
      run.check(t == d0, [&] {
        std::ostringstream out;
        out << header("bipartite", opts.seed, i) << "# policy " << policy_name(p) << " evac " << t << " delta0 " << d0
            << (error.empty() ? "" : " error: " + error) << '\n'
            << serialize_instance(inst);
        return out.str();
      });
    }
  }
  return run.finish();
}

SuiteResult run_oracle_suite(const SuiteOptions& opts) {
  SuiteRun run("oracle", opts);
  const int count = resolve_count(opts, "oracle");
  for (int i = 0; i < count; ++i) {
    Rng rng = instance_rng(opts.seed, static_cast<std::uint64_t>(i));
    const int n = 2 + static_cast<int>(uniform_below(rng, 7));
    const Topology topo = random_topology(rng, n, kOracleMaxLinks);
    const auto m = static_cast<std::size_t>(topo.link_count());
    std::vector<std::uint8_t> eligible(m);
    for (auto& e : eligible) e = uniform_below(rng, 10) != 0;
    std::vector<std::int64_t> edge_w(m);
    for (auto& w : edge_w) w = static_cast<std::int64_t>(uniform_below(rng, 10));
    std::vector<std::int64_t> node_w(static_cast<std::size_t>(n));
    for (auto& w : node_w) w = static_cast<std::int64_t>(uniform_below(rng, 10));
    run.instance();

    auto describe = [&](const std::string& what) {
      std::ostringstream out;
      out << header("oracle", opts.seed, i) << "# " << what << '\n'
          << "# eligible " << join(eligible) << '\n'
          << "# node_weight " << join(node_w) << '\n'
          << n << ' ' << m << '\n';
      for (std::size_t l = 0; l < m; ++l) {
        out << topo.links()[l].u << ' ' << topo.links()[l].v << ' ' << edge_w[l] << '\n';
      }
      return out.str();
    };

    const Matching mw = max_weight_matching({&topo, eligible, edge_w});
    const OracleResult ow = brute_force_matching_oracle(topo, eligible, OracleScoring::edge_sum, edge_w);
    run.check(is_matching(topo, mw) && is_maximal(topo, eligible, mw) && edge_weight_sum(mw, edge_w) == ow.best_score,
              [&] {
                return describe("mwm score " + std::to_string(edge_weight_sum(mw, edge_w)) + " oracle " +
                                std::to_string(ow.best_score));
              });

    const Matching mv = max_vertex_weight_matching(topo, eligible, node_w);
    const OracleResult ov = brute_force_matching_oracle(topo, eligible, OracleScoring::matched_node_sum, node_w);
    const std::int64_t mv_score = matched_node_weight_sum(topo, mv, node_w);
    run.check(is_matching(topo, mv) && is_maximal(topo, eligible, mv) && mv_score == ov.best_score, [&] {
      return describe("mvm score " + std::to_string(mv_score) + " oracle " + std::to_string(ov.best_score));
    });

    // s heaviest under (weight desc, id asc)
    std::vector<NodeId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
      return node_w[static_cast<std::size_t>(a)] > node_w[static_cast<std::size_t>(b)];
    });
    const std::vector<std::uint8_t> covered = covered_nodes(topo, mv);
    for (int s = 1; s <= n; ++s) {
      const std::span<const NodeId> top(order.data(), static_cast<std::size_t>(s));
      if (!oracle_can_cover(topo, eligible, top)) break;
      const bool all = std::all_of(top.begin(), top.end(), [&](NodeId x) { return covered[static_cast<std::size_t>(x)]; });
      run.check(all, [&] { return describe("mvm misses one of the " + std::to_string(s) + " heaviest nodes"); });
    }
  }
  return run.finish();
}

SuiteResult run_lemma4_suite(const SuiteOptions& opts) {
  SuiteRun run("lemma4", opts);
  const int count = resolve_count(opts, "lemma4");
  int accepted = 0;
  // draw until `count` instances have a bipartite heavy subgraph
  for (std::uint64_t draw = 0; accepted < count; ++draw) {
    if (draw > static_cast<std::uint64_t>(count) * 200) {
      run.check(false, [] { return std::string("# lemma4: could not draw enough qualifying instances\n"); });
      break;
    }
    Rng rng = instance_rng(opts.seed, draw);
    const int n = 3 + static_cast<int>(uniform_below(rng, 6));
    const Topology topo = random_topology(rng, n, kOracleMaxLinks);
    if (topo.link_count() == 0) continue;
    NetworkState state = NetworkState::empty(topo);
    for (auto& q : state.queue) q = static_cast<std::int64_t>(uniform_below(rng, 6));
    state.slot = static_cast<std::int64_t>(uniform_below(rng, 30));
    for (auto& r : state.served_prev) r = static_cast<std::uint8_t>(uniform_below(rng, 2));
    for (auto& r : state.served_prev2) r = static_cast<std::uint8_t>(uniform_below(rng, 2));

    const NodeClasses cls = classify_nodes(state, topo);
    if (cls.heavy.empty()) continue;
    std::vector<Link> heavy_links;
    std::vector<std::uint8_t> eligible(static_cast<std::size_t>(topo.link_count()));
    for (LinkId l = 0; l < topo.link_count(); ++l) {
      eligible[static_cast<std::size_t>(l)] = state.queue[static_cast<std::size_t>(l)] > 0;
      const Link& e = topo.link(l);
      if (eligible[static_cast<std::size_t>(l)] && cls.is_heavy[static_cast<std::size_t>(e.u)] &&
          cls.is_heavy[static_cast<std::size_t>(e.v)]) {
        heavy_links.push_back(e);
      }
    }
    if (!is_bipartite(Topology(n, heavy_links))) continue;
    ++accepted;
    const int index = static_cast<int>(draw);
    run.instance();

    auto describe = [&](const std::string& what) {
      std::ostringstream out;
      out << header("lemma4", opts.seed, index) << "# " << what << '\n'
          << "# slot " << state.slot << '\n'
          << "# served_prev " << join(state.served_prev) << '\n'
          << "# served_prev2 " << join(state.served_prev2) << '\n'
          << serialize_instance({topo, state.queue});
      return out.str();
    };

    run.check(oracle_can_cover(topo, eligible, cls.heavy), [&] { return describe("heavy nodes not coverable"); });

    const Matching m = opts.scheduler ? opts.scheduler(Policy::nsb, state, topo) : schedule(Policy::nsb, state, topo);
    const std::vector<std::uint8_t> covered = covered_nodes(topo, m);
    const std::vector<std::uint8_t> u = service_indicators(state);
    bool ok = true;
    for (NodeId h : cls.heavy) {
      if (u[static_cast<std::size_t>(h)] == 0 && !covered[static_cast<std::size_t>(h)]) ok = false;
    }
    run.check(ok, [&] { return describe("nsb leaves an unserved heavy node unmatched"); });
  }
  return run.finish();
}

}  // namespace linksched
