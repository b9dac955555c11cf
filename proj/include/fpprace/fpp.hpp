#pragma once

#include "fpprace/graph.hpp"
#include "fpprace/random.hpp"
#include "fpprace/weights.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fpprace {

enum class Label : std::uint8_t { uninfected = 0, type1 = 1, type2 = 2 };

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline int type_index(Label t) { return t == Label::type1 ? 0 : 1; }
char const *label_name(Label t);

/// Type 1 seeds are vertices [0, k1); type 2 seeds are [k1, k1 + k2).
struct CompetitionConfig
{
  std::size_t k1 = 1;
  std::size_t k2 = 1;
  PassageTimeLaw law1 = PassageTimeLaw::exponential(1.0);
  PassageTimeLaw law2 = PassageTimeLaw::exponential(1.0);

  /// Throws ContractViolation unless k1, k2 >= 1 and k1 + k2 <= n.
  void check(std::size_t n) const;
  Label seed_label(VertexId v) const
  {
    if (v < k1) return Label::type1;
    if (v < k1 + k2) return Label::type2;
    return Label::uninfected;
  }
  PassageTimeLaw const &law(Label t) const { return t == Label::type1 ? law1 : law2; }
};

/// Per-(bundle, type) passage times, each the minimum over the bundle's
/// parallel edges. Either fixed up front or drawn lazily on first use from an
/// owned stream and memoised, so both directions of a bundle see one value.
class BundleWeights
{
public:
  BundleWeights(MultiGraph const &g, PassageTimeLaw law1, PassageTimeLaw law2, std::uint64_t seed);
  static BundleWeights fixed(std::vector<double> type1, std::vector<double> type2);

  double get(BundleId b, Label t);
  bool drawn(BundleId b, Label t) const { return !std::isnan(values_[type_index(t)][b]); }
  std::size_t size() const { return values_[0].size(); }

private:
  BundleWeights() : rng_(0) {}

  std::array<std::vector<double>, 2> values_;
  std::vector<std::uint64_t> multiplicity_;
  std::array<PassageTimeLaw, 2> laws_{};
  Rng rng_;
  bool lazy_ = false;
};

struct CompetitionOutcome
{
  std::vector<Label> type_of;
  std::vector<double> time_of; // +inf for uninfected vertices
  std::size_t N1 = 0;
  std::size_t N2 = 0;
  std::size_t N_un = 0;
  double Z1 = kInfinity;
  double Z2 = kInfinity;

  std::size_t N_los() const { return std::min(N1, N2); }
  /// type1 iff Z1 < Z2, type2 iff Z2 < Z1, uninfected when equal (both seed sets isolated).
  Label first_mover() const;
  /// Type with the larger final count, uninfected on a tie.
  Label winner() const;
};

/// Event-driven two-type race. Ties in time are broken by (type, target id).
CompetitionOutcome run_competition(MultiGraph const &g, CompetitionConfig const &cfg, BundleWeights &weights);
/// Convenience overload drawing weights lazily from a stream seeded by `weights_seed`.
CompetitionOutcome run_competition(MultiGraph const &g, CompetitionConfig const &cfg, std::uint64_t weights_seed);

/// Brute-force race for tiny graphs (n <= 12): repeatedly scans every
/// (infected vertex, incident bundle) pair for the earliest feasible infection.
CompetitionOutcome reference_competition(MultiGraph const &g, CompetitionConfig const &cfg, BundleWeights &weights);

/// Post-hoc check: every infected non-seed vertex is reached at exactly the
/// earliest same-type arrival and no opposite-type arrival comes strictly
/// earlier; seeds sit at time 0; counts and Z_i match. Returns a description
/// of the first violation.
std::optional<std::string> check_local_consistency(MultiGraph const &g, CompetitionConfig const &cfg,
                                                   CompetitionOutcome const &out, BundleWeights &weights);

/// Earliest-arrival times from `sources` using type `t` bundle weights,
/// never entering `forbidden`. Unreachable vertices get +inf.
std::vector<double> one_type_fpp(MultiGraph const &g, BundleWeights &weights, Label t, std::span<VertexId const> sources,
                                 std::span<VertexId const> forbidden = {});

} // namespace fpprace
