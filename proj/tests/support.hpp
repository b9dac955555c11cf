#pragma once

// Test-only oracles: brute-force enumeration that never touches the library's
// sampling or search code paths.

#include "fpprace/fpp.hpp"
#include "fpprace/graph.hpp"
#include "fpprace/random.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace fpprace::testing {

/// Canonical text key of a multigraph: sorted bundles then loops.
inline std::string graph_key(MultiGraph const &g)
{
  std::string key;
  for (auto const &b : g.bundles())
    key += std::to_string(b.u) + "-" + std::to_string(b.v) + "x" + std::to_string(b.multiplicity) + ";";
  key += "|";
  for (std::size_t v = 0; v < g.n(); ++v)
    if (g.self_loops(static_cast<VertexId>(v)) > 0)
      key += std::to_string(v) + "o" + std::to_string(g.self_loops(static_cast<VertexId>(v))) + ";";
  return key;
}

/// Probability of every configuration-model multigraph for a small degree
/// sequence, by enumerating all perfect matchings of the half-edges.
inline std::map<std::string, double> matching_distribution(std::vector<Degree> const &degrees)
{
  std::vector<VertexId> owner;
  for (std::size_t v = 0; v < degrees.size(); ++v)
    for (Degree k = 0; k < degrees[v]; ++k) owner.push_back(static_cast<VertexId>(v));
  std::map<std::string, double> counts;
  std::vector<char> used(owner.size(), 0);
  std::vector<std::pair<VertexId, VertexId>> pairs;
  double total = 0.0;
  std::function<void()> recurse = [&] {
    auto const first = std::find(used.begin(), used.end(), 0);
    if (first == used.end()) {
      std::vector<Bundle> bundles;
      std::vector<std::uint64_t> loops(degrees.size(), 0);
      for (auto [a, b] : pairs) {
        if (a == b)
          ++loops[a];
        else
          bundles.push_back({a, b, 1});
      }
      counts[graph_key(MultiGraph(degrees.size(), bundles, loops))] += 1.0;
      total += 1.0;
      return;
    }
    auto const i = static_cast<std::size_t>(first - used.begin());
    used[i] = 1;
    for (std::size_t j = i + 1; j < owner.size(); ++j) {
      if (used[j]) continue;
      used[j] = 1;
      pairs.emplace_back(owner[i], owner[j]);
      recurse();
      pairs.pop_back();
      used[j] = 0;
    }
    used[i] = 0;
  };
  recurse();
  for (auto &[k, c] : counts) c /= total;
  return counts;
}

/// Random small multigraph with bundles of multiplicity 1..4 and occasional loops.
inline MultiGraph random_small_multigraph(Rng &rng, std::size_t n, double edge_prob)
{
  std::vector<Bundle> bundles;
  std::vector<std::uint64_t> loops(n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    if (rng.uniform01() < 0.2) loops[u] = 1 + rng.below(2);
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng.uniform01() < edge_prob)
        bundles.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), 1 + rng.below(4)});
  }
  return MultiGraph(n, std::move(bundles), std::move(loops));
}

inline BundleWeights random_fixed_weights(MultiGraph const &g, Rng &rng)
{
  std::vector<double> w1(g.bundle_count()), w2(g.bundle_count());
  for (auto &w : w1) w = rng.uniform01();
  for (auto &w : w2) w = rng.uniform01();
  return BundleWeights::fixed(std::move(w1), std::move(w2));
}

/// Maximum number of internally vertex-disjoint u-v paths of length <= max_len,
/// by enumerating all simple paths and searching over subsets.
inline std::size_t exact_disjoint_paths(MultiGraph const &g, VertexId u, VertexId v, std::size_t max_len)
{
  std::vector<std::uint32_t> interiors; // bitmask of interior vertices per path
  std::vector<VertexId> stack{u};
  std::uint32_t onpath = 1u << u;
  std::function<void()> dfs = [&] {
    VertexId const x = stack.back();
    for (auto const &inc : g.incident(x)) {
      VertexId const y = inc.neighbor;
      if (y == v) {
        std::uint32_t mask = onpath & ~(1u << u);
        interiors.push_back(mask);
        continue;
      }
      if (onpath & (1u << y)) continue;
      if (stack.size() >= max_len) continue; // y would be interior at depth stack.size()
      stack.push_back(y);
      onpath |= 1u << y;
      dfs();
      onpath &= ~(1u << y);
      stack.pop_back();
    }
  };
  dfs();
  std::size_t best = 0;
  std::function<void(std::size_t, std::uint32_t, std::size_t)> choose = [&](std::size_t i, std::uint32_t usedmask,
                                                                            std::size_t count) {
    best = std::max(best, count);
    for (std::size_t k = i; k < interiors.size(); ++k)
      if ((interiors[k] & usedmask) == 0 && !(interiors[k] == 0 && (usedmask & 0x80000000u)))
        choose(k + 1, usedmask | interiors[k] | (interiors[k] == 0 ? 0x80000000u : 0u), count + 1);
  };
  choose(0, 0, 0);
  return best;
}

/// One random oracle instance: a small multigraph (bundles, loops, possibly
/// seedless components) with random seed counts and recorded weights, raced by
/// both engines. Returns a description of the first disagreement.
inline std::optional<std::string> compare_with_reference(Rng &rng)
{
  std::size_t const n = 2 + rng.below(7);
  auto const g = random_small_multigraph(rng, n, 0.15 + 0.5 * rng.uniform01());
  CompetitionConfig cfg;
  cfg.k1 = 1 + rng.below(n - 1);
  cfg.k2 = 1 + rng.below(n - cfg.k1);
  auto weights = random_fixed_weights(g, rng);
  auto copy = weights;
  auto const fast = run_competition(g, cfg, weights);
  auto const slow = reference_competition(g, cfg, copy);
  std::ostringstream err;
  for (std::size_t v = 0; v < n; ++v) {
    if (fast.type_of[v] != slow.type_of[v]) {
      err << "type mismatch at vertex " << v << " (n=" << n << ")";
      return err.str();
    }
    bool const both_inf = std::isinf(fast.time_of[v]) && std::isinf(slow.time_of[v]);
    if (!both_inf && !(std::abs(fast.time_of[v] - slow.time_of[v]) <= 1e-12)) {
      err << "time mismatch at vertex " << v << ": " << fast.time_of[v] << " vs " << slow.time_of[v];
      return err.str();
    }
  }
  if (fast.N1 != slow.N1 || fast.N2 != slow.N2 || fast.N_un != slow.N_un || fast.Z1 != slow.Z1 || fast.Z2 != slow.Z2)
    return std::string("summary mismatch");
  return std::nullopt;
}

} // namespace fpprace::testing
