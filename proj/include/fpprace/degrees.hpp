#pragma once

#include "fpprace/random.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace fpprace {

using VertexId = std::uint32_t;
using Degree = std::uint64_t;

enum class DegreeVariant { pure, conditioned };

/// Power-law degree law with tail P(D > x) = x^-(tau-1) at integers x >= 1.
///
/// The conditioned variant restricts the law to {1, ..., floor(n^alpha)}.
struct DegreeModel
{
  double tau = 1.5;
  DegreeVariant variant = DegreeVariant::pure;
  double alpha = 0.0;

  static DegreeModel pure(double tau) { return {tau, DegreeVariant::pure, 0.0}; }
  static DegreeModel conditioned(double tau, double alpha) { return {tau, DegreeVariant::conditioned, alpha}; }

  /// Throws ConfigError when tau is outside (1,2), or, for the conditioned
  /// variant, when alpha <= 0 or alpha = 1/(tau+k) for an integer k >= 0.
  void validate() const;
};

/// Largest degree ever produced for a graph on n vertices. Keeps the total
/// degree below 2^62 so every count fits in 64 bits.
Degree degree_cap(std::uint64_t n);

/// floor(n^alpha), robust against pow() rounding at exact powers.
Degree conditioned_bound(double alpha, std::uint64_t n);

/// Inverse transform of the canonical law: smallest integer D with
/// u >= D^-(tau-1), i.e. D = ceil(u^(-1/(tau-1))), saturated at `cap`.
Degree degree_from_uniform(double tau, double u, Degree cap = ~Degree{0});

/// Probability that one pure draw is accepted by the conditioned rejection loop.
double conditioned_acceptance_probability(DegreeModel const &model, std::uint64_t n);

Degree sample_degree(DegreeModel const &model, std::uint64_t n, Rng &rng);

struct DegreeSequence
{
  std::vector<Degree> degrees;
  Degree total_degree = 0;
  bool parity_fixed = false;
  std::optional<VertexId> parity_vertex;

  std::size_t n() const { return degrees.size(); }
};

/// Wraps raw draws, adding one half-edge at a uniform vertex when the sum is odd.
DegreeSequence make_degree_sequence(std::vector<Degree> raw, Rng &rng);

DegreeSequence sample_degree_sequence(DegreeModel const &model, std::uint64_t n, Rng &rng);

/// How eps_n is chosen. `fixed` uses a constant in (0,1].
struct EpsRule
{
  std::optional<double> fixed;

  double operator()(std::uint64_t n) const;
};

struct GiantThreshold
{
  double u_n = 0.0;   // reference scale (n^(1/(tau-1)), or n^alpha when conditioned)
  double eps_n = 1.0;
  double threshold = 0.0;
};

GiantThreshold giant_threshold(DegreeModel const &model, std::uint64_t n, EpsRule const &eps = {});

/// Vertices whose (pre-erasure) degree is strictly above the threshold.
std::vector<VertexId> giant_set(std::span<Degree const> degrees, GiantThreshold const &thr);
inline std::vector<VertexId> giant_set(DegreeSequence const &seq, GiantThreshold const &thr)
{
  return giant_set(seq.degrees, thr);
}

} // namespace fpprace
