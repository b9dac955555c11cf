#include "fpprace/graph.hpp"

#include "fpprace/discrete.hpp"
#include "fpprace/errors.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace fpprace {

namespace {

// Fenwick tree over remaining half-edge counts.
class CountTree
{
public:
  explicit CountTree(std::span<Degree const> counts) : tree_(counts.size() + 1, 0)
  {
    for (std::size_t i = 0; i < counts.size(); ++i) {
      tree_[i + 1] += counts[i];
      std::size_t const parent = (i + 1) + ((i + 1) & (~(i + 1) + 1));
      if (parent < tree_.size()) tree_[parent] += tree_[i + 1];
    }
    top_ = 1;
    while (top_ * 2 < tree_.size()) top_ *= 2;
  }

  void decrement(std::size_t i)
  {
    for (std::size_t k = i + 1; k < tree_.size(); k += k & (~k + 1)) --tree_[k];
  }

  /// Index whose cumulative range contains x (0 <= x < total).
  std::size_t find(std::uint64_t x) const
  {
    std::size_t pos = 0;
    for (std::size_t step = top_; step > 0; step >>= 1) {
      if (pos + step < tree_.size() && tree_[pos + step] <= x) {
        pos += step;
        x -= tree_[pos];
      }
    }
    return pos;
  }

private:
  std::vector<std::uint64_t> tree_;
  std::size_t top_ = 1;
};

} // namespace

MultiGraph::MultiGraph(std::size_t n, std::vector<Bundle> bundles, std::vector<std::uint64_t> self_loops)
  : self_loops_(std::move(self_loops))
{
  require(self_loops_.size() == n, "MultiGraph: self-loop vector must have one entry per vertex");
  for (auto &b : bundles) {
    require(b.u != b.v, "MultiGraph: bundle endpoints must differ");
    require(b.u < n && b.v < n, "MultiGraph: bundle endpoint out of range");
    require(b.multiplicity >= 1, "MultiGraph: bundle multiplicity must be positive");
    if (b.u > b.v) std::swap(b.u, b.v);
  }
  std::sort(bundles.begin(), bundles.end(), [](Bundle const &a, Bundle const &b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (auto const &b : bundles) {
    if (!bundles_.empty() && bundles_.back().u == b.u && bundles_.back().v == b.v)
      bundles_.back().multiplicity += b.multiplicity;
    else
      bundles_.push_back(b);
  }

  offsets_.assign(n + 1, 0);
  for (auto const &b : bundles_) {
    ++offsets_[b.u + 1];
    ++offsets_[b.v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < bundles_.size(); ++i) {
    auto const &b = bundles_[i];
    adjacency_[fill[b.u]++] = {b.v, static_cast<BundleId>(i)};
    adjacency_[fill[b.v]++] = {b.u, static_cast<BundleId>(i)};
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]),
              [](Incidence const &a, Incidence const &b) { return a.neighbor < b.neighbor; });
  }
}

Degree MultiGraph::degree(VertexId v) const
{
  Degree d = 2 * self_loops_[v];
  for (auto const &inc : incident(v)) d += bundles_[inc.bundle].multiplicity;
  return d;
}

std::optional<BundleId> MultiGraph::find_bundle(VertexId u, VertexId v) const
{
  auto const adj = incident(u);
  auto it = std::lower_bound(adj.begin(), adj.end(), v,
                             [](Incidence const &inc, VertexId x) { return inc.neighbor < x; });
  if (it == adj.end() || it->neighbor != v) return std::nullopt;
  return it->bundle;
}

MultiGraph build_configuration_graph(DegreeSequence const &seq, Rng &rng, Degree sequential_cutoff)
{
  std::size_t const n = seq.n();
  require(seq.total_degree % 2 == 0, "build_configuration_graph: total degree must be even");

  std::vector<Degree> counts = seq.degrees;
  std::uint64_t remaining = seq.total_degree;
  std::vector<std::uint64_t> loops(n, 0);
  std::vector<Bundle> bundles;

  // Phase 1: low-degree vertices, one half-edge at a time.
  CountTree tree(counts);
  std::vector<std::uint64_t> pending(n, 0);
  std::vector<VertexId> touched;
  for (std::size_t v = 0; v < n; ++v) {
    if (counts[v] == 0 || counts[v] > sequential_cutoff) continue;
    while (counts[v] > 0) {
      --counts[v];
      tree.decrement(v);
      --remaining;
      std::size_t const w = tree.find(rng.below(remaining));
      --counts[w];
      tree.decrement(w);
      --remaining;
      if (w == v) {
        ++loops[v];
      } else {
        if (pending[w]++ == 0) touched.push_back(static_cast<VertexId>(w));
      }
    }
    for (VertexId w : touched) {
      bundles.push_back({static_cast<VertexId>(v), w, pending[w]});
      pending[w] = 0;
    }
    touched.clear();
  }

  // Phase 2: the rest, one whole vertex at a time.
  std::vector<VertexId> big;
  for (std::size_t v = 0; v < n; ++v)
    if (counts[v] > 0) big.push_back(static_cast<VertexId>(v));
  for (std::size_t i = 0; i < big.size(); ++i) {
    VertexId const v = big[i];
    std::uint64_t const own = counts[v];
    if (own == 0) continue;
    std::uint64_t const self = sample_loop_count(own, remaining, rng);
    loops[v] += self;
    std::uint64_t outgoing = own - 2 * self;
    std::uint64_t others = remaining - own;
    counts[v] = 0;
    remaining -= own;
    for (std::size_t j = i + 1; j < big.size() && outgoing > 0; ++j) {
      VertexId const w = big[j];
      std::uint64_t const cw = counts[w];
      if (cw == 0) continue;
      std::uint64_t const x = sample_hypergeometric(others, cw, outgoing, rng);
      others -= cw;
      outgoing -= x;
      counts[w] -= x;
      remaining -= x;
      if (x > 0) bundles.push_back({v, w, x});
    }
    require(outgoing == 0, "build_configuration_graph: internal pairing imbalance");
  }

  return MultiGraph(n, std::move(bundles), std::move(loops));
}

MultiGraph erase(MultiGraph const &g)
{
  std::vector<Bundle> bundles(g.bundles().begin(), g.bundles().end());
  for (auto &b : bundles) b.multiplicity = 1;
  return MultiGraph(g.n(), std::move(bundles), std::vector<std::uint64_t>(g.n(), 0));
}

std::uint64_t edge_multiplicity(MultiGraph const &g, VertexId u, VertexId v)
{
  require(u != v, "edge_multiplicity: u and v must differ (use self_loops for loops)");
  auto const b = g.find_bundle(u, v);
  return b ? g.bundle(*b).multiplicity : 0;
}

std::size_t joint_neighbors(MultiGraph const &g, VertexId u, VertexId v)
{
  require(u != v, "joint_neighbors: u and v must differ");
  auto const a = g.incident(u);
  auto const b = g.incident(v);
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->neighbor < ib->neighbor) {
      ++ia;
    } else if (ib->neighbor < ia->neighbor) {
      ++ib;
    } else {
      if (ia->neighbor != u && ia->neighbor != v) ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

std::size_t graph_distance(MultiGraph const &g, VertexId u, VertexId v, std::span<VertexId const> forbidden)
{
  if (u == v) return 0;
  std::vector<std::size_t> dist(g.n(), kUnreachable);
  for (VertexId f : forbidden) {
    require(f != u && f != v, "graph_distance: endpoints may not be forbidden");
    dist[f] = 0; // marks as visited
  }
  std::vector<VertexId> frontier{u};
  dist[u] = 0;
  std::size_t depth = 0;
  while (!frontier.empty()) {
    ++depth;
    std::vector<VertexId> next;
    for (VertexId x : frontier) {
      for (auto const &inc : g.incident(x)) {
        if (inc.neighbor == v) return depth;
        if (dist[inc.neighbor] != kUnreachable) continue;
        dist[inc.neighbor] = depth;
        next.push_back(inc.neighbor);
      }
    }
    frontier.swap(next);
  }
  return kUnreachable;
}

std::size_t count_disjoint_short_paths(MultiGraph const &g, VertexId u, VertexId v, std::size_t max_len)
{
  require(u != v, "count_disjoint_short_paths: u and v must differ");
  require(max_len >= 1, "count_disjoint_short_paths: max_len must be at least 1");

  std::vector<char> removed(g.n(), 0);
  std::vector<std::uint32_t> stamp(g.n(), 0);
  std::vector<VertexId> parent(g.n(), 0);
  std::vector<std::size_t> depth(g.n(), 0);
  bool direct_used = false;
  std::size_t count = 0;

  for (std::uint32_t round = 1;; ++round) {
    std::vector<VertexId> queue{u};
    stamp[u] = round;
    depth[u] = 0;
    std::optional<VertexId> last; // predecessor of v on the path found
    for (std::size_t head = 0; head < queue.size() && !last; ++head) {
      VertexId const x = queue[head];
      for (auto const &inc : g.incident(x)) {
        VertexId const y = inc.neighbor;
        if (y == v) {
          if (x == u && direct_used) continue;
          last = x;
          break;
        }
        if (removed[y] || stamp[y] == round || depth[x] + 1 >= max_len) continue;
        stamp[y] = round;
        depth[y] = depth[x] + 1;
        parent[y] = x;
        queue.push_back(y);
      }
    }
    if (!last) break;
    ++count;
    if (*last == u) {
      direct_used = true;
    } else {
      for (VertexId x = *last; x != u; x = parent[x]) removed[x] = 1;
    }
  }
  return count;
}

void write_graph_dump(std::ostream &out, MultiGraph const &g)
{
  out << "#n " << g.n() << '\n';
  for (auto const &b : g.bundles()) out << (b.u + 1) << ' ' << (b.v + 1) << ' ' << b.multiplicity << '\n';
  for (std::size_t v = 0; v < g.n(); ++v) {
    if (g.self_loops(static_cast<VertexId>(v)) > 0)
      out << (v + 1) << ' ' << (v + 1) << ' ' << g.self_loops(static_cast<VertexId>(v)) << '\n';
  }
  if (!out) throw IoError("failed writing graph dump");
}

MultiGraph read_graph_dump(std::istream &in)
{
  std::string line;
  std::optional<std::size_t> n;
  std::vector<Bundle> bundles;
  std::vector<std::pair<VertexId, std::uint64_t>> loops;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream fields(line);
    if (line[0] == '#') {
      std::string tag;
      fields >> tag;
      if (tag == "#n") {
        std::size_t value = 0;
        if (!(fields >> value)) throw ConfigError("graph dump line " + std::to_string(lineno) + ": bad #n header");
        n = value;
      }
      continue;
    }
    std::uint64_t a = 0, b = 0, m = 0;
    if (!(fields >> a >> b >> m) || a == 0 || b == 0 || m == 0)
      throw ConfigError("graph dump line " + std::to_string(lineno) + ": expected 'u v multiplicity'");
    if (!n || a > *n || b > *n)
      throw ConfigError("graph dump line " + std::to_string(lineno) + ": vertex outside #n range");
    if (a == b)
      loops.emplace_back(static_cast<VertexId>(a - 1), m);
    else
      bundles.push_back({static_cast<VertexId>(a - 1), static_cast<VertexId>(b - 1), m});
  }
  if (!n) throw ConfigError("graph dump: missing '#n <n>' header");
  std::vector<std::uint64_t> self(*n, 0);
  for (auto [v, m] : loops) self[v] += m;
  return MultiGraph(*n, std::move(bundles), std::move(self));
}

} // namespace fpprace
