#include "fpprace/experiments.hpp"

#include "fpprace/errors.hpp"
#include "fpprace/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace fpprace {

char const *variant_name(GraphVariant v)
{
  switch (v) {
  case GraphVariant::original: return "original";
  case GraphVariant::erased: return "erased";
  case GraphVariant::conditioned: return "conditioned";
  }
  return "?";
}

std::size_t SeedRule::at(std::uint64_t n) const
{
  if (!exponent) return fixed;
  double const p = std::pow(static_cast<double>(n), *exponent);
  double const r = std::round(p);
  if (std::abs(p - r) <= 1e-9 * std::max(1.0, r)) return static_cast<std::size_t>(r);
  return static_cast<std::size_t>(std::ceil(p));
}

std::string SeedRule::text() const
{
  if (!exponent) return std::to_string(fixed);
  std::ostringstream out;
  out << "n^" << *exponent;
  return out.str();
}

void ExperimentPlan::validate() const
{
  auto fail = [](std::string const &key, std::string const &why) { throw ConfigError(key + ": " + why); };
  try {
    model.validate();
  } catch (ConfigError const &e) {
    fail(model.variant == DegreeVariant::conditioned && model.tau > 1.0 && model.tau < 2.0 ? "alpha" : "tau", e.what());
  }
  bool const conditioned = graph_variant == GraphVariant::conditioned;
  if (conditioned != (model.variant == DegreeVariant::conditioned))
    fail("variant", "the conditioned graph variant and the conditioned degree law go together");
  if (trials < 1) fail("trials", "must be at least 1");
  if (n_grid.empty()) fail("n_grid", "needs at least one value");
  if (threads < 1) fail("threads", "must be at least 1");
  if (eps.fixed && !(*eps.fixed > 0.0 && *eps.fixed <= 1.0)) fail("eps", "must lie in (0,1]");
  if (k1.exponent && !(*k1.exponent > 0.0)) fail("k1", "growth exponent must be positive");
  if (k2.exponent && !(*k2.exponent > 0.0)) fail("k2", "growth exponent must be positive");
  law1.validate();
  law2.validate();
  for (std::uint64_t n : n_grid) {
    if (n < 2) fail("n_grid", "every n must be at least 2");
    if (n > std::numeric_limits<VertexId>::max()) fail("n_grid", "n too large");
    std::size_t const a = k1.at(n);
    std::size_t const b = k2.at(n);
    if (a < 1) fail("k1", "must be at least 1");
    if (b < 1) fail("k2", "must be at least 1");
    if (a + b > n) fail("k2", "k1 + k2 exceeds n = " + std::to_string(n));
    if (conditioned && conditioned_bound(model.alpha, n) < 2)
      fail("alpha", "floor(n^alpha) must be at least 2 for n = " + std::to_string(n));
  }
}

CompetitionConfig ExperimentPlan::competition(std::uint64_t n) const { return {k1.at(n), k2.at(n), law1, law2}; }

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t n, std::uint64_t trial)
{
  return mix64(mix64(mix64(master_seed) ^ n) ^ trial);
}

namespace {

// Child streams of a trial seed.
enum StreamTag : std::uint64_t { kDegrees = 1, kPairing = 2, kRace = 3, kPick = 4, kProbe = 5 };

} // namespace

TrialGraph build_trial_graph(ExperimentPlan const &plan, std::uint64_t n, std::uint64_t seed)
{
  Rng degree_rng(derive_seed(seed, kDegrees));
  TrialGraph tg;
  tg.degrees = sample_degree_sequence(plan.model, n, degree_rng);
  Rng pairing_rng(derive_seed(seed, kPairing));
  tg.graph = build_configuration_graph(tg.degrees, pairing_rng);
  if (plan.graph_variant == GraphVariant::erased) tg.graph = erase(tg.graph);
  return tg;
}

TrialRecord run_trial(ExperimentPlan const &plan, std::uint64_t n, std::size_t trial)
{
  std::uint64_t const seed = trial_seed(plan.master_seed, n, trial);
  TrialGraph const tg = build_trial_graph(plan, n, seed);
  CompetitionConfig const cfg = plan.competition(n);
  CompetitionOutcome const out = run_competition(tg.graph, cfg, derive_seed(seed, kRace));

  TrialRecord r;
  r.trial = trial;
  r.seed = seed;
  r.n = n;
  r.k1 = cfg.k1;
  r.k2 = cfg.k2;
  r.N1 = out.N1;
  r.N2 = out.N2;
  r.N_un = out.N_un;
  r.Z1 = out.Z1;
  r.Z2 = out.Z2;
  r.first_mover = out.first_mover();
  r.winner = out.winner();
  return r;
}

NSummary summarize_trials(std::uint64_t n, std::span<TrialRecord const> records)
{
  std::uint64_t only_seeds = 0, z1_gt = 0, n1_given = 0, z1_lt = 0, n2_given = 0;
  std::uint64_t mover_wins = 0, n1k = 0, n2k = 0;
  NSummary s;
  s.n = n;
  for (auto const &r : records) {
    if (r.n != n) continue;
    ++s.trials;
    bool const a = r.N1 == r.k1;
    bool const b = r.N2 == r.k2;
    only_seeds += (a || b);
    n1k += a;
    n2k += b;
    if (r.Z1 > r.Z2) {
      ++z1_gt;
      n1_given += a;
    } else if (r.Z1 < r.Z2) {
      ++z1_lt;
      n2_given += b;
    } else {
      ++s.z_ties;
    }
    mover_wins += (r.first_mover != Label::uninfected && r.first_mover == r.winner);
    s.uninfected_vertices += r.N_un;
  }
  s.loser_keeps_only_seeds = wilson(only_seeds, s.trials);
  s.n1_is_k1_given_z1_gt_z2 = wilson(n1_given, z1_gt);
  s.n2_is_k2_given_z1_lt_z2 = wilson(n2_given, z1_lt);
  s.first_mover_wins = wilson(mover_wins, s.trials);
  s.n1_is_k1 = wilson(n1k, s.trials);
  s.n2_is_k2 = wilson(n2k, s.trials);
  return s;
}

void parallel_for(std::size_t count, std::size_t threads, std::function<void(std::size_t)> const &fn)
{
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> workers;
  for (std::size_t t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  workers.clear();
  if (failure) std::rethrow_exception(failure);
}

TrialBatchReport run_trials(ExperimentPlan const &plan)
{
  plan.validate();
  TrialBatchReport report;
  std::size_t const per_n = plan.trials;
  report.records.resize(plan.n_grid.size() * per_n);
  parallel_for(report.records.size(), plan.threads, [&](std::size_t i) {
    report.records[i] = run_trial(plan, plan.n_grid[i / per_n], i % per_n);
  });
  for (std::size_t k = 0; k < plan.n_grid.size(); ++k) {
    std::span<TrialRecord const> slice(report.records.data() + k * per_n, per_n);
    report.summaries.push_back(summarize_trials(plan.n_grid[k], slice));
  }
  return report;
}

std::size_t conditioned_path_bound(double tau, double alpha)
{
  std::size_t k = 1;
  while (!(alpha > 1.0 / (tau + static_cast<double>(k)))) ++k;
  return 2 * (k + 1);
}

namespace {

// A neighbour of `v` drawn with probability proportional to bundle
// multiplicity, skipping vertices in `excluded`.
std::optional<VertexId> pick_neighbor(MultiGraph const &g, VertexId v, std::span<VertexId const> excluded, Rng &rng)
{
  auto allowed = [&](VertexId w) { return std::find(excluded.begin(), excluded.end(), w) == excluded.end(); };
  std::uint64_t total = 0;
  for (auto const &inc : g.incident(v))
    if (allowed(inc.neighbor)) total += g.bundle(inc.bundle).multiplicity;
  if (total == 0) return std::nullopt;
  std::uint64_t x = rng.below(total);
  for (auto const &inc : g.incident(v)) {
    if (!allowed(inc.neighbor)) continue;
    std::uint64_t const m = g.bundle(inc.bundle).multiplicity;
    if (x < m) return inc.neighbor;
    x -= m;
  }
  return std::nullopt;
}

} // namespace

GiantReport diagnose_trial(ExperimentPlan const &plan, std::uint64_t n, std::size_t trial)
{
  std::uint64_t const seed = trial_seed(plan.master_seed, n, trial);
  TrialGraph const tg = build_trial_graph(plan, n, seed);
  MultiGraph const &g = tg.graph;
  CompetitionConfig const cfg = plan.competition(n);

  GiantReport rep;
  rep.trial = trial;
  rep.n = n;
  GiantThreshold const thr = giant_threshold(plan.model, n, plan.eps);
  rep.threshold = thr.threshold;
  std::vector<VertexId> const giants = giant_set(tg.degrees, thr);
  rep.num_giants = giants.size();
  std::vector<char> is_giant(n, 0);
  for (VertexId h : giants) is_giant[h] = 1;

  std::uint64_t normal_degree = 0;
  for (std::size_t v = 0; v < n; ++v)
    if (!is_giant[v]) normal_degree += tg.degrees.degrees[v];
  rep.kn_over_ln = static_cast<double>(normal_degree) / static_cast<double>(tg.degrees.total_degree);

  auto const first = g.incident(0);
  if (first.empty()) {
    rep.neighbor_giant_frac = std::numeric_limits<double>::quiet_NaN();
  } else {
    std::size_t hits = 0;
    for (auto const &inc : first) hits += is_giant[inc.neighbor];
    rep.neighbor_giant_frac = static_cast<double>(hits) / static_cast<double>(first.size());
  }

  std::vector<VertexId> seeds(cfg.k1 + cfg.k2);
  for (std::size_t s = 0; s < seeds.size(); ++s) seeds[s] = static_cast<VertexId>(s);

  Rng pick_rng(derive_seed(seed, kPick));
  std::optional<VertexId> const h1 = pick_neighbor(g, 0, seeds, pick_rng);
  std::optional<VertexId> h2;
  if (h1) {
    std::vector<VertexId> excluded = seeds;
    excluded.push_back(*h1);
    h2 = pick_neighbor(g, 1, excluded, pick_rng);
  }
  rep.t_between_giants = std::numeric_limits<double>::quiet_NaN();
  if (!h1 || !h2) return rep;

  BundleWeights probe(g, plan.law1, plan.law2, derive_seed(seed, kProbe));
  VertexId const source[] = {*h1};
  rep.t_between_giants = one_type_fpp(g, probe, Label::type1, source, seeds)[*h2];

  if (plan.graph_variant == GraphVariant::erased) rep.joint_neighbors = joint_neighbors(g, *h1, *h2);
  if (plan.graph_variant == GraphVariant::conditioned) {
    rep.giant_distance = graph_distance(g, *h1, *h2, seeds);
    if (plan.disjoint_paths && plan.model.alpha < 1.0 / plan.model.tau)
      rep.disjoint_paths =
        count_disjoint_short_paths(g, *h1, *h2, conditioned_path_bound(plan.model.tau, plan.model.alpha));
  }
  return rep;
}

DiagnosticsSummary summarize_diagnostics(std::uint64_t n, std::span<GiantReport const> reports)
{
  DiagnosticsSummary s;
  s.n = n;
  std::vector<double> giants, kl, frac, t, paths;
  std::size_t with_distance = 0, d1 = 0, d2 = 0, with_joint = 0, joint_big = 0;
  double const root_n = std::sqrt(static_cast<double>(n));
  for (auto const &r : reports) {
    if (r.n != n) continue;
    giants.push_back(static_cast<double>(r.num_giants));
    kl.push_back(r.kn_over_ln);
    frac.push_back(r.neighbor_giant_frac);
    t.push_back(r.t_between_giants);
    if (r.giant_distance) {
      ++with_distance;
      d1 += *r.giant_distance == 1;
      d2 += *r.giant_distance <= 2;
    }
    if (r.joint_neighbors) {
      ++with_joint;
      joint_big += static_cast<double>(*r.joint_neighbors) >= root_n;
    }
    if (r.disjoint_paths) paths.push_back(static_cast<double>(*r.disjoint_paths));
  }
  auto ratio = [](std::size_t a, std::size_t b) {
    return b == 0 ? std::numeric_limits<double>::quiet_NaN() : static_cast<double>(a) / static_cast<double>(b);
  };
  s.median_num_giants = median(giants);
  s.median_kn_over_ln = median(kl);
  s.median_neighbor_giant_frac = median(frac);
  s.median_t_between_giants = median(t);
  s.fraction_distance_1 = ratio(d1, with_distance);
  s.fraction_distance_at_most_2 = ratio(d2, with_distance);
  s.fraction_joint_at_least_sqrt_n = ratio(joint_big, with_joint);
  s.median_disjoint_paths = median(paths);
  return s;
}

DiagnosticsReport diagnose_structure(ExperimentPlan const &plan)
{
  plan.validate();
  DiagnosticsReport report;
  std::size_t const per_n = plan.trials;
  report.records.resize(plan.n_grid.size() * per_n);
  parallel_for(report.records.size(), plan.threads, [&](std::size_t i) {
    report.records[i] = diagnose_trial(plan, plan.n_grid[i / per_n], i % per_n);
  });
  for (std::size_t k = 0; k < plan.n_grid.size(); ++k) {
    std::span<GiantReport const> slice(report.records.data() + k * per_n, per_n);
    report.summaries.push_back(summarize_diagnostics(plan.n_grid[k], slice));
  }
  return report;
}

std::string format_real(double x)
{
  if (std::isnan(x)) return {};
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_trials_csv(std::ostream &out, ExperimentPlan const &plan, std::span<TrialRecord const> records)
{
  out << "trial,seed,n,tau,variant,k1,k2,N1,N2,N_un,Z1,Z2,first_mover,winner\n";
  std::string const tau = format_real(plan.model.tau);
  char const *variant = variant_name(plan.graph_variant);
  for (auto const &r : records) {
    out << r.trial << ',' << r.seed << ',' << r.n << ',' << tau << ',' << variant << ',' << r.k1 << ',' << r.k2 << ','
        << r.N1 << ',' << r.N2 << ',' << r.N_un << ',' << format_real(r.Z1) << ',' << format_real(r.Z2) << ','
        << label_name(r.first_mover) << ',' << label_name(r.winner) << '\n';
  }
  if (!out) throw IoError("failed writing trials CSV");
}

namespace {

nlohmann::ordered_json proportion_json(Proportion const &p)
{
  nlohmann::ordered_json j;
  j["estimate"] = p.estimate;
  j["lower"] = p.lower;
  j["upper"] = p.upper;
  j["successes"] = p.successes;
  j["count"] = p.count;
  return j;
}

} // namespace

void write_summary_json(std::ostream &out, ExperimentPlan const &plan, TrialBatchReport const &report)
{
  nlohmann::ordered_json j;
  j["tau"] = plan.model.tau;
  j["variant"] = variant_name(plan.graph_variant);
  if (plan.model.variant == DegreeVariant::conditioned) j["alpha"] = plan.model.alpha;
  j["k1"] = plan.k1.text();
  j["k2"] = plan.k2.text();
  j["law1"] = format_law(plan.law1);
  j["law2"] = format_law(plan.law2);
  j["master_seed"] = plan.master_seed;
  j["trials_per_n"] = plan.trials;
  j["interval"] = "wilson95";
  j["uninfected_convention"] = "vertices in seedless components count in N_un, never in N1 or N2";
  auto &results = j["results"] = nlohmann::ordered_json::array();
  for (auto const &s : report.summaries) {
    nlohmann::ordered_json r;
    r["n"] = s.n;
    r["k1"] = plan.k1.at(s.n);
    r["k2"] = plan.k2.at(s.n);
    r["trials"] = s.trials;
    auto &e = r["estimates"];
    e["loser_keeps_only_seeds"] = proportion_json(s.loser_keeps_only_seeds);
    e["N1_eq_k1_given_Z1_gt_Z2"] = proportion_json(s.n1_is_k1_given_z1_gt_z2);
    e["N2_eq_k2_given_Z1_lt_Z2"] = proportion_json(s.n2_is_k2_given_z1_lt_z2);
    e["first_mover_wins"] = proportion_json(s.first_mover_wins);
    e["N1_eq_k1"] = proportion_json(s.n1_is_k1);
    e["N2_eq_k2"] = proportion_json(s.n2_is_k2);
    r["z_ties"] = s.z_ties;
    r["uninfected_vertices"] = s.uninfected_vertices;
    results.push_back(std::move(r));
  }
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing summary JSON");
}

void write_diagnostics_csv(std::ostream &out, ExperimentPlan const &plan, std::span<GiantReport const> reports)
{
  out << "trial,n,variant,num_giants,threshold,Kn_over_Ln,neighbor_giant_frac,T_between_giants,giant_distance,"
         "joint_neighbors,disjoint_paths\n";
  auto count = [](std::optional<std::size_t> const &c) -> std::string {
    if (!c) return {};
    if (*c == kUnreachable) return "inf";
    return std::to_string(*c);
  };
  char const *variant = variant_name(plan.graph_variant);
  for (auto const &r : reports) {
    out << r.trial << ',' << r.n << ',' << variant << ',' << r.num_giants << ',' << format_real(r.threshold) << ','
        << format_real(r.kn_over_ln) << ',' << format_real(r.neighbor_giant_frac) << ','
        << format_real(r.t_between_giants) << ',' << count(r.giant_distance) << ',' << count(r.joint_neighbors) << ','
        << count(r.disjoint_paths) << '\n';
  }
  if (!out) throw IoError("failed writing diagnostics CSV");
}

} // namespace fpprace
