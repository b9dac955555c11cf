#pragma once

#include "fpprace/degrees.hpp"
#include "fpprace/random.hpp"

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace fpprace {

using BundleId = std::uint32_t;

/// All parallel edges between one vertex pair, u < v.
struct Bundle
{
  VertexId u = 0;
  VertexId v = 0;
  std::uint64_t multiplicity = 0;

  friend bool operator==(Bundle const &, Bundle const &) = default;
};

/// One entry of a vertex's adjacency: the other endpoint and the bundle joining them.
struct Incidence
{
  VertexId neighbor = 0;
  BundleId bundle = 0;
};

/// Configuration-model multigraph stored as bundles plus per-vertex loop counts.
///
/// Vertex ids are 0-based. Bundles are kept sorted by (u, v); the adjacency of
/// each vertex is sorted by neighbour id. Immutable once built.
class MultiGraph
{
public:
  MultiGraph() = default;
  /// Bundles may arrive unsorted and with duplicate pairs; duplicates are merged.
  MultiGraph(std::size_t n, std::vector<Bundle> bundles, std::vector<std::uint64_t> self_loops);

  std::size_t n() const { return self_loops_.size(); }
  std::span<Bundle const> bundles() const { return bundles_; }
  std::size_t bundle_count() const { return bundles_.size(); }
  Bundle const &bundle(BundleId b) const { return bundles_[b]; }
  std::uint64_t self_loops(VertexId v) const { return self_loops_[v]; }
  std::span<std::uint64_t const> all_self_loops() const { return self_loops_; }
  std::span<Incidence const> incident(VertexId v) const
  {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  /// Sum of incident multiplicities plus twice the loop count.
  Degree degree(VertexId v) const;
  std::optional<BundleId> find_bundle(VertexId u, VertexId v) const;

  friend bool operator==(MultiGraph const &a, MultiGraph const &b)
  {
    return a.bundles_ == b.bundles_ && a.self_loops_ == b.self_loops_;
  }

private:
  std::vector<Bundle> bundles_;
  std::vector<std::uint64_t> self_loops_;
  std::vector<std::size_t> offsets_;
  std::vector<Incidence> adjacency_;
};

/// Degree above which the pairing stops drawing partners one half-edge at a
/// time and switches to aggregated (loop-count + hypergeometric) draws.
inline constexpr Degree kDefaultSequentialCutoff = Degree{1} << 12;

/// Uniform random perfect matching of the half-edges of `seq`.
///
/// Vertices of degree <= `sequential_cutoff` are paired half-edge by
/// half-edge, each partner uniform among the unpaired half-edges. The
/// remaining high-degree vertices are then paired a whole vertex at a time:
/// the number of self-loops is drawn from its exact law, and the outgoing
/// half-edges are split over the other vertices by a multivariate
/// hypergeometric draw. Both steps leave a uniform matching on what remains,
/// so the result has the law of the uniform configuration model while never
/// materialising the half-edges.
MultiGraph build_configuration_graph(DegreeSequence const &seq, Rng &rng,
                                     Degree sequential_cutoff = kDefaultSequentialCutoff);

/// Drops self-loops and collapses every bundle to multiplicity 1.
MultiGraph erase(MultiGraph const &g);

/// Number of parallel edges between u and v (u != v), 0 if not adjacent.
std::uint64_t edge_multiplicity(MultiGraph const &g, VertexId u, VertexId v);

/// |N(u) ∩ N(v)| over neighbour sets, u and v themselves excluded.
std::size_t joint_neighbors(MultiGraph const &g, VertexId u, VertexId v);

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// BFS hop distance from u to v whose interior vertices avoid `forbidden`.
/// Returns kUnreachable when no such path exists.
std::size_t graph_distance(MultiGraph const &g, VertexId u, VertexId v, std::span<VertexId const> forbidden = {});

/// Greedy lower bound on the number of internally vertex-disjoint u-v paths
/// of at most `max_len` edges: take a shortest admissible path, remove its
/// interior, repeat. A direct u-v bundle counts once.
std::size_t count_disjoint_short_paths(MultiGraph const &g, VertexId u, VertexId v, std::size_t max_len);

/// Text dump: "#n <n>" then one "u v multiplicity" line per bundle and
/// "v v loops" per vertex with self-loops. Ids are written 1-based.
void write_graph_dump(std::ostream &out, MultiGraph const &g);
MultiGraph read_graph_dump(std::istream &in);

} // namespace fpprace
