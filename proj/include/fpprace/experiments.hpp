#pragma once

#include "fpprace/degrees.hpp"
#include "fpprace/fpp.hpp"
#include "fpprace/graph.hpp"
#include "fpprace/stats.hpp"
#include "fpprace/weights.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fpprace {

enum class GraphVariant { original, erased, conditioned };

char const *variant_name(GraphVariant v);

/// Seed count: a constant, or ceil(n^exponent) when an exponent is given.
struct SeedRule
{
  std::size_t fixed = 1;
  std::optional<double> exponent;

  std::size_t at(std::uint64_t n) const;
  std::string text() const;
};

struct ExperimentPlan
{
  DegreeModel model = DegreeModel::pure(1.5);
  GraphVariant graph_variant = GraphVariant::original;
  std::vector<std::uint64_t> n_grid{1000};
  std::size_t trials = 100;
  SeedRule k1{};
  SeedRule k2{};
  PassageTimeLaw law1 = PassageTimeLaw::exponential(1.0);
  PassageTimeLaw law2 = PassageTimeLaw::exponential(1.0);
  std::uint64_t master_seed = 1;
  EpsRule eps{};
  bool disjoint_paths = true; // diagnostics: count disjoint short paths (conditioned, alpha < 1/tau)
  std::size_t threads = 1;

  /// Throws ConfigError naming the offending key.
  void validate() const;
  CompetitionConfig competition(std::uint64_t n) const;
};

/// Per-trial seed: mix64(mix64(mix64(master) ^ n) ^ trial).
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t n, std::uint64_t trial);

/// The random graph of one trial (degrees, then pairing, then erasure if asked).
struct TrialGraph
{
  DegreeSequence degrees;
  MultiGraph graph;
};
TrialGraph build_trial_graph(ExperimentPlan const &plan, std::uint64_t n, std::uint64_t seed);

struct TrialRecord
{
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t n = 0;
  std::size_t k1 = 0;
  std::size_t k2 = 0;
  std::size_t N1 = 0;
  std::size_t N2 = 0;
  std::size_t N_un = 0;
  double Z1 = kInfinity;
  double Z2 = kInfinity;
  Label first_mover = Label::uninfected;
  Label winner = Label::uninfected;
};

TrialRecord run_trial(ExperimentPlan const &plan, std::uint64_t n, std::size_t trial);

/// Estimates for one n. Counts are commutative sums over trial records.
struct NSummary
{
  std::uint64_t n = 0;
  std::size_t trials = 0;
  Proportion loser_keeps_only_seeds; // {N1 = k1} or {N2 = k2}; equals {N_los = 1} for single seeds
  Proportion n1_is_k1_given_z1_gt_z2;
  Proportion n2_is_k2_given_z1_lt_z2;
  Proportion first_mover_wins;
  Proportion n1_is_k1;
  Proportion n2_is_k2;
  std::size_t z_ties = 0;
  std::uint64_t uninfected_vertices = 0;
};

NSummary summarize_trials(std::uint64_t n, std::span<TrialRecord const> records);

struct TrialBatchReport
{
  std::vector<TrialRecord> records; // ordered by (n, trial)
  std::vector<NSummary> summaries;  // one per n, grid order
};

TrialBatchReport run_trials(ExperimentPlan const &plan);

struct GiantReport
{
  std::size_t trial = 0;
  std::uint64_t n = 0;
  std::size_t num_giants = 0;
  double threshold = 0.0;
  double kn_over_ln = 0.0;
  double neighbor_giant_frac = 0.0; // NaN when vertex 1 has no neighbours
  double t_between_giants = 0.0;    // NaN when h1 or h2 cannot be chosen
  std::optional<std::size_t> giant_distance; // conditioned only; kUnreachable if disconnected
  std::optional<std::size_t> joint_neighbors; // erased only
  std::optional<std::size_t> disjoint_paths;  // conditioned with alpha < 1/tau
};

GiantReport diagnose_trial(ExperimentPlan const &plan, std::uint64_t n, std::size_t trial);

struct DiagnosticsSummary
{
  std::uint64_t n = 0;
  double median_num_giants = 0.0;
  double median_kn_over_ln = 0.0;
  double median_neighbor_giant_frac = 0.0;
  double median_t_between_giants = 0.0;
  double fraction_distance_1 = 0.0;        // over trials with a distance entry
  double fraction_distance_at_most_2 = 0.0;
  double fraction_joint_at_least_sqrt_n = 0.0;
  double median_disjoint_paths = 0.0;
};

DiagnosticsSummary summarize_diagnostics(std::uint64_t n, std::span<GiantReport const> reports);

struct DiagnosticsReport
{
  std::vector<GiantReport> records;
  std::vector<DiagnosticsSummary> summaries;
};

DiagnosticsReport diagnose_structure(ExperimentPlan const &plan);

/// Path-length bound 2(k+1) for the conditioned model, where
/// alpha lies in (1/(tau+k), 1/(tau+k-1)).
std::size_t conditioned_path_bound(double tau, double alpha);

/// Runs fn(i) for i in [0, count) on `threads` workers.
void parallel_for(std::size_t count, std::size_t threads, std::function<void(std::size_t)> const &fn);

/// 12 significant digits; "inf" for infinities, empty for NaN.
std::string format_real(double x);

void write_trials_csv(std::ostream &out, ExperimentPlan const &plan, std::span<TrialRecord const> records);
void write_summary_json(std::ostream &out, ExperimentPlan const &plan, TrialBatchReport const &report);
void write_diagnostics_csv(std::ostream &out, ExperimentPlan const &plan, std::span<GiantReport const> reports);

} // namespace fpprace
