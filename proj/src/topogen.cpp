#include "linksched/topogen.hpp"

#include <algorithm>
#include <boost/polygon/voronoi.hpp>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "linksched/errors.hpp"
#include "linksched/random.hpp"

namespace linksched {
namespace {

using Edge = std::pair<NodeId, NodeId>;

Topology from_edges(int n, std::vector<Edge> edges) {
  for (auto& [a, b] : edges) {
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::vector<Link> links;
  links.reserve(edges.size());
  for (auto [a, b] : edges) links.push_back({a, b});
  return Topology(n, std::move(links));
}

EvacInstance from_counts(int n, const std::map<Edge, std::int64_t>& counts) {
  std::vector<Link> links;
  std::vector<std::int64_t> mult;
  for (const auto& [e, c] : counts) {
    links.push_back({e.first, e.second});
    mult.push_back(c);
  }
  return {Topology(n, std::move(links)), std::move(mult)};
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::int64_t to_int(std::string_view tok, std::size_t line_no) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line_no, "expected an integer, got '" + std::string(tok) + "'");
  }
  return v;
}

// Calls fn(line_no, tokens) for each non-blank line.
template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    auto tokens = split_ws(text.substr(pos, end - pos));
    if (!tokens.empty()) fn(line_no, tokens);
    pos = end + 1;
  }
}

}  // namespace

Topology gen_grid(int rows, int cols) {
  if (rows < 2 || cols < 2) throw ParameterError("grid needs rows >= 2 and cols >= 2");
  std::vector<Edge> edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const NodeId id = r * cols + c;
      if (c + 1 < cols) edges.emplace_back(id, id + 1);
      if (r + 1 < rows) edges.emplace_back(id, id + cols);
    }
  }
  return from_edges(rows * cols, std::move(edges));
}

EvacInstance gen_path_special(int n) {
  if (n < 1) throw ParameterError("N must be >= 1");
  std::vector<Link> links;
  std::vector<std::int64_t> mult;
  for (int k = 0; k < 2 * n; ++k) {
    links.push_back({k, k + 1});
    mult.push_back(k % 2 == 0 ? n : 1);
  }
  return {Topology(2 * n + 1, std::move(links)), std::move(mult)};
}

EvacInstance gen_special_spider(int n) {
  if (n < 1) throw ParameterError("N must be >= 1");
  // hub 0; inner node 2i-1 and leaf 2i for i = 1..N
  std::vector<Link> links;
  std::vector<std::int64_t> mult;
  for (int i = 1; i <= n; ++i) {
    links.push_back({0, 2 * i - 1});
    mult.push_back(1);
    links.push_back({2 * i - 1, 2 * i});
    mult.push_back(n);
  }
  return {Topology(2 * n + 1, std::move(links)), std::move(mult)};
}

Topology gen_triangular_mesh(int target_nodes, std::uint64_t seed) {
  if (target_nodes < 3) throw ParameterError("mesh needs at least 3 nodes");
  using Point = boost::polygon::point_data<std::int32_t>;
  Rng rng(seed);
  const std::int64_t side = 1 << 20;
  std::vector<Point> pts;
  std::set<std::pair<std::int32_t, std::int32_t>> seen;
  while (static_cast<int>(pts.size()) < target_nodes) {
    const auto x = static_cast<std::int32_t>(uniform_below(rng, side));
    const auto y = static_cast<std::int32_t>(uniform_below(rng, side));
    if (!seen.insert({x, y}).second) continue;
    if (pts.size() == 2) {
      // keep the first three points non-collinear so a triangle exists
      const std::int64_t cross = static_cast<std::int64_t>(pts[1].x() - pts[0].x()) * (y - pts[0].y()) -
                                 static_cast<std::int64_t>(pts[1].y() - pts[0].y()) * (x - pts[0].x());
      if (cross == 0) continue;
    }
    pts.emplace_back(x, y);
  }

  boost::polygon::voronoi_diagram<double> vd;
  boost::polygon::construct_voronoi(pts.begin(), pts.end(), &vd);
  std::vector<Edge> edges;
  for (const auto& e : vd.edges()) {
    const auto a = static_cast<NodeId>(e.cell()->source_index());
    const auto b = static_cast<NodeId>(e.twin()->cell()->source_index());
    if (a < b) edges.emplace_back(a, b);
  }
  return from_edges(target_nodes, std::move(edges));
}

Topology gen_random_connected(int n, int m, std::uint64_t seed) {
  if (n < 1) throw ParameterError("n must be positive");
  const std::int64_t max_links = static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (m < n - 1 || m > max_links) {
    throw ParameterError("need n-1 <= m <= n(n-1)/2, got n=" + std::to_string(n) + " m=" + std::to_string(m));
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  if (n >= 2) {
    // Prüfer decoding gives a uniform labelled tree.
    std::vector<int> code(static_cast<std::size_t>(std::max(n - 2, 0)));
    for (auto& c : code) c = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    std::vector<int> deg(static_cast<std::size_t>(n), 1);
    for (int c : code) ++deg[static_cast<std::size_t>(c)];
    std::set<int> leaves;
    for (int i = 0; i < n; ++i) {
      if (deg[static_cast<std::size_t>(i)] == 1) leaves.insert(i);
    }
    for (int c : code) {
      const int leaf = *leaves.begin();
      leaves.erase(leaves.begin());
      edges.emplace_back(leaf, c);
      if (--deg[static_cast<std::size_t>(c)] == 1) leaves.insert(c);
    }
    const int a = *leaves.begin();
    const int b = *std::next(leaves.begin());
    edges.emplace_back(a, b);
  }
  for (auto& [a, b] : edges) {
    if (a > b) std::swap(a, b);
  }

  const std::int64_t extra = m - (n - 1);
  if (extra > 0) {
    std::set<Edge> present(edges.begin(), edges.end());
    std::vector<Edge> pool;
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = a + 1; b < n; ++b) {
        if (!present.count({a, b})) pool.emplace_back(a, b);
      }
    }
    // partial Fisher-Yates
    for (std::int64_t k = 0; k < extra; ++k) {
      const auto j = static_cast<std::size_t>(k) +
                     uniform_below(rng, static_cast<std::uint64_t>(pool.size()) - static_cast<std::uint64_t>(k));
      std::swap(pool[static_cast<std::size_t>(k)], pool[j]);
      edges.push_back(pool[static_cast<std::size_t>(k)]);
    }
  }
  return from_edges(n, std::move(edges));
}

EvacInstance gen_regular_multigraph(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 0) throw ParameterError("need n >= 1 and d >= 0");
  if ((static_cast<std::int64_t>(n) * d) % 2 != 0) throw ParameterError("n*d must be even");
  if (n == 1 && d > 0) throw ParameterError("a single node cannot have positive degree without self-loops");
  Rng rng(seed);
  std::vector<NodeId> stubs;
  stubs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
  for (NodeId i = 0; i < n; ++i) stubs.insert(stubs.end(), static_cast<std::size_t>(d), i);
  shuffle(stubs, rng);

  const std::size_t pairs = stubs.size() / 2;
  auto at = [&](std::size_t p, int side) -> NodeId& { return stubs[2 * p + static_cast<std::size_t>(side)]; };
  // Redraw the partner of every self-loop: swap one of its stubs with a
  // random stub from a pair not touching that node.
  for (std::size_t p = 0; p < pairs; ++p) {
    while (at(p, 0) == at(p, 1)) {
      const NodeId a = at(p, 0);
      const std::size_t q = uniform_below(rng, pairs);
      if (at(q, 0) == a || at(q, 1) == a) continue;
      std::swap(at(p, 1), at(q, 0));
    }
  }
  std::map<Edge, std::int64_t> counts;
  for (std::size_t p = 0; p < pairs; ++p) {
    const NodeId a = std::min(at(p, 0), at(p, 1));
    const NodeId b = std::max(at(p, 0), at(p, 1));
    ++counts[{a, b}];
  }
  return from_counts(n, counts);
}

EvacInstance assign_random_multiplicities(const Topology& topo, std::int64_t max_y, std::uint64_t seed) {
  if (max_y < 0) throw ParameterError("max_y must be >= 0");
  Rng rng(seed);
  std::vector<std::int64_t> mult(static_cast<std::size_t>(topo.link_count()));
  for (auto& y : mult) y = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(max_y) + 1));
  return {topo, std::move(mult)};
}

EvacInstance parse_dimacs(std::string_view text) {
  std::int64_t n = -1;
  std::int64_t declared = -1;
  std::int64_t seen_edges = 0;
  std::size_t last_line = 0;
  std::map<Edge, std::int64_t> counts;
  for_each_line(text, [&](std::size_t line_no, const std::vector<std::string_view>& tok) {
    last_line = line_no;
    if (tok[0] == "c") return;
    if (tok[0] == "p") {
      if (n >= 0) throw ParseError(line_no, "duplicate problem line");
      if (tok.size() != 4 || (tok[1] != "edge" && tok[1] != "col")) {
        throw ParseError(line_no, "expected 'p edge <n> <m>'");
      }
      n = to_int(tok[2], line_no);
      declared = to_int(tok[3], line_no);
      if (n < 0 || declared < 0) throw ParseError(line_no, "negative count");
      return;
    }
    if (tok[0] == "e") {
      if (n < 0) throw ParseError(line_no, "edge line before problem line");
      if (tok.size() != 3) throw ParseError(line_no, "expected 'e <u> <v>'");
      const std::int64_t u = to_int(tok[1], line_no);
      const std::int64_t v = to_int(tok[2], line_no);
      if (u < 1 || u > n || v < 1 || v > n) throw ParseError(line_no, "node id out of range 1.." + std::to_string(n));
      if (u == v) throw ParseError(line_no, "self-loop");
      const auto a = static_cast<NodeId>(std::min(u, v) - 1);
      const auto b = static_cast<NodeId>(std::max(u, v) - 1);
      ++counts[{a, b}];
      ++seen_edges;
      return;
    }
    throw ParseError(line_no, "unknown line type '" + std::string(tok[0]) + "'");
  });
  if (n < 0) throw ParseError(0, "missing problem line");
  if (seen_edges != declared) {
    throw ParseError(last_line, "edge count mismatch: declared " + std::to_string(declared) + ", found " +
                                    std::to_string(seen_edges));
  }
  return from_counts(static_cast<int>(n), counts);
}

std::string serialize_dimacs(const EvacInstance& instance) {
  std::ostringstream out;
  out << "p edge " << instance.topo.node_count() << ' ' << instance.total_packets() << '\n';
  for (LinkId l = 0; l < instance.topo.link_count(); ++l) {
    const Link& e = instance.topo.link(l);
    for (std::int64_t k = 0; k < instance.multiplicity[static_cast<std::size_t>(l)]; ++k) {
      out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
    }
  }
  return out.str();
}

EvacInstance parse_instance(std::string_view text) {
  std::int64_t n = -1;
  std::int64_t m = -1;
  std::size_t last_line = 0;
  std::vector<Link> links;
  std::vector<std::int64_t> mult;
  for_each_line(text, [&](std::size_t line_no, const std::vector<std::string_view>& tok) {
    last_line = line_no;
    if (tok[0].front() == '#') return;
    if (n < 0) {
      if (tok.size() != 2) throw ParseError(line_no, "expected header 'n m'");
      n = to_int(tok[0], line_no);
      m = to_int(tok[1], line_no);
      if (n < 0 || m < 0) throw ParseError(line_no, "negative count");
      return;
    }
    if (tok.size() != 3) throw ParseError(line_no, "expected 'u v mult'");
    const std::int64_t u = to_int(tok[0], line_no);
    const std::int64_t v = to_int(tok[1], line_no);
    const std::int64_t y = to_int(tok[2], line_no);
    if (u < 0 || u >= n || v < 0 || v >= n) throw ParseError(line_no, "node id out of range 0.." + std::to_string(n - 1));
    if (u == v) throw ParseError(line_no, "self-loop");
    if (y < 0) throw ParseError(line_no, "negative multiplicity");
    if (static_cast<std::int64_t>(links.size()) == m) throw ParseError(line_no, "more links than declared");
    links.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    mult.push_back(y);
  });
  if (n < 0) throw ParseError(0, "missing header");
  if (static_cast<std::int64_t>(links.size()) != m) {
    throw ParseError(last_line, "link count mismatch: declared " + std::to_string(m) + ", found " +
                                    std::to_string(links.size()));
  }
  try {
    return {Topology(static_cast<int>(n), std::move(links)), std::move(mult)};
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
}

std::string serialize_instance(const EvacInstance& instance) {
  std::ostringstream out;
  out << instance.topo.node_count() << ' ' << instance.topo.link_count() << '\n';
  for (LinkId l = 0; l < instance.topo.link_count(); ++l) {
    const Link& e = instance.topo.link(l);
    out << e.u << ' ' << e.v << ' ' << instance.multiplicity[static_cast<std::size_t>(l)] << '\n';
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace linksched
