#include "fpprace/degrees.hpp"

#include "fpprace/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fpprace {

void DegreeModel::validate() const
{
  if (!(tau > 1.0 && tau < 2.0)) {
    std::ostringstream msg;
    msg << "tau must lie in the open interval (1,2), got " << tau;
    throw ConfigError(msg.str());
  }
  if (variant != DegreeVariant::conditioned) return;
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    std::ostringstream msg;
    msg << "alpha must be a positive real for the conditioned model, got " << alpha;
    throw ConfigError(msg.str());
  }
  // 1/(tau+k) decreases to 0; only finitely many k can come close to alpha.
  for (int k = 0;; ++k) {
    double const boundary = 1.0 / (tau + k);
    if (std::abs(alpha - boundary) <= 1e-12 * std::max(1.0, alpha)) {
      std::ostringstream msg;
      msg << "alpha = " << alpha << " equals the excluded boundary 1/(tau+" << k << ")";
      throw ConfigError(msg.str());
    }
    if (boundary < alpha * 0.5) break;
  }
}

Degree degree_cap(std::uint64_t n)
{
  std::uint64_t const total = std::uint64_t{1} << 62;
  return total / std::max<std::uint64_t>(n, 1);
}

Degree conditioned_bound(double alpha, std::uint64_t n)
{
  double const p = std::pow(static_cast<double>(n), alpha);
  double const r = std::round(p);
  if (std::abs(p - r) <= 1e-9 * std::max(1.0, r)) return static_cast<Degree>(r);
  return static_cast<Degree>(std::floor(p));
}

Degree degree_from_uniform(double tau, double u, Degree cap)
{
  double const a = tau - 1.0;
  double const y = std::pow(u, -1.0 / a);
  if (!(y < static_cast<double>(cap))) return cap;
  auto d = static_cast<Degree>(std::ceil(y));
  if (d < 2) d = 2;
  if (d < (Degree{1} << 52)) {
    // enforce: D > x  <=>  u < x^-a, at the integers around the estimate
    auto tail = [a](Degree x) { return std::pow(static_cast<double>(x), -a); };
    while (d > 2 && u >= tail(d - 1)) --d;
    while (u < tail(d)) ++d;
  }
  return std::min(d, cap);
}

double conditioned_acceptance_probability(DegreeModel const &model, std::uint64_t n)
{
  if (model.variant == DegreeVariant::pure) return 1.0;
  Degree const bound = conditioned_bound(model.alpha, n);
  if (bound < 1) return 0.0;
  return 1.0 - std::pow(static_cast<double>(bound), -(model.tau - 1.0));
}

Degree sample_degree(DegreeModel const &model, std::uint64_t n, Rng &rng)
{
  model.validate();
  require(n >= 1, "sample_degree: n must be at least 1");
  Degree const cap = degree_cap(n);
  if (model.variant == DegreeVariant::pure) return degree_from_uniform(model.tau, rng.uniform01(), cap);

  Degree const bound = std::min(conditioned_bound(model.alpha, n), cap);
  if (bound < 2) {
    throw ConfigError("conditioned bound floor(n^alpha) is below the minimum degree 2; increase n or alpha");
  }
  for (;;) {
    Degree const d = degree_from_uniform(model.tau, rng.uniform01(), cap);
    if (d <= bound) return d;
  }
}

DegreeSequence make_degree_sequence(std::vector<Degree> raw, Rng &rng)
{
  require(!raw.empty(), "degree sequence needs at least one vertex");
  DegreeSequence seq;
  seq.degrees = std::move(raw);
  for (Degree d : seq.degrees) {
    require(d >= 1, "degrees must be positive");
    seq.total_degree += d;
  }
  if (seq.total_degree % 2 == 1) {
    auto const v = static_cast<VertexId>(rng.below(seq.degrees.size()));
    ++seq.degrees[v];
    ++seq.total_degree;
    seq.parity_fixed = true;
    seq.parity_vertex = v;
  }
  return seq;
}

DegreeSequence sample_degree_sequence(DegreeModel const &model, std::uint64_t n, Rng &rng)
{
  model.validate();
  require(n >= 1, "sample_degree_sequence: n must be at least 1");
  std::vector<Degree> raw(n);
  for (auto &d : raw) d = sample_degree(model, n, rng);
  return make_degree_sequence(std::move(raw), rng);
}

double EpsRule::operator()(std::uint64_t n) const
{
  if (fixed) return *fixed;
  return std::min(1.0, 1.0 / std::log(static_cast<double>(n)));
}

GiantThreshold giant_threshold(DegreeModel const &model, std::uint64_t n, EpsRule const &eps)
{
  require(n >= 2, "giant_threshold: n must be at least 2");
  if (eps.fixed && !(*eps.fixed > 0.0 && *eps.fixed <= 1.0)) throw ConfigError("eps must lie in (0,1]");
  GiantThreshold thr;
  auto const nd = static_cast<double>(n);
  thr.u_n = model.variant == DegreeVariant::conditioned ? std::pow(nd, model.alpha) : std::pow(nd, 1.0 / (model.tau - 1.0));
  thr.eps_n = eps(n);
  thr.threshold = thr.eps_n * thr.u_n;
  return thr;
}

std::vector<VertexId> giant_set(std::span<Degree const> degrees, GiantThreshold const &thr)
{
  std::vector<VertexId> out;
  for (std::size_t v = 0; v < degrees.size(); ++v) {
    if (static_cast<double>(degrees[v]) > thr.threshold) out.push_back(static_cast<VertexId>(v));
  }
  return out;
}

} // namespace fpprace
