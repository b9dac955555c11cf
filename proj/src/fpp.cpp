#include "fpprace/fpp.hpp"

#include "fpprace/errors.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <tuple>

namespace fpprace {

char const *label_name(Label t)
{
  switch (t) {
  case Label::type1: return "type1";
  case Label::type2: return "type2";
  case Label::uninfected: break;
  }
  return "none";
}

void CompetitionConfig::check(std::size_t n) const
{
  require(k1 >= 1 && k2 >= 1, "competition needs at least one seed of each type");
  require(k1 + k2 <= n, "competition seeds exceed the number of vertices");
}

BundleWeights::BundleWeights(MultiGraph const &g, PassageTimeLaw law1, PassageTimeLaw law2, std::uint64_t seed)
  : laws_{law1, law2}, rng_(seed), lazy_(true)
{
  law1.validate();
  law2.validate();
  double const unset = std::numeric_limits<double>::quiet_NaN();
  values_[0].assign(g.bundle_count(), unset);
  values_[1].assign(g.bundle_count(), unset);
  multiplicity_.reserve(g.bundle_count());
  for (auto const &b : g.bundles()) multiplicity_.push_back(b.multiplicity);
}

BundleWeights BundleWeights::fixed(std::vector<double> type1, std::vector<double> type2)
{
  require(type1.size() == type2.size(), "fixed weights need one value per bundle and type");
  for (auto const *vec : {&type1, &type2})
    for (double w : *vec) require(w > 0.0 && std::isfinite(w), "fixed weights must be positive and finite");
  BundleWeights w;
  w.values_ = {std::move(type1), std::move(type2)};
  return w;
}

double BundleWeights::get(BundleId b, Label t)
{
  double &slot = values_[type_index(t)][b];
  if (std::isnan(slot)) {
    require(lazy_, "BundleWeights: missing fixed weight");
    slot = sample_bundle_min(laws_[type_index(t)], multiplicity_[b], rng_);
  }
  return slot;
}

Label CompetitionOutcome::first_mover() const
{
  if (Z1 < Z2) return Label::type1;
  if (Z2 < Z1) return Label::type2;
  return Label::uninfected;
}

Label CompetitionOutcome::winner() const
{
  if (N1 > N2) return Label::type1;
  if (N2 > N1) return Label::type2;
  return Label::uninfected;
}

namespace {

CompetitionOutcome seeded_outcome(MultiGraph const &g, CompetitionConfig const &cfg)
{
  cfg.check(g.n());
  CompetitionOutcome out;
  out.type_of.assign(g.n(), Label::uninfected);
  out.time_of.assign(g.n(), kInfinity);
  for (std::size_t v = 0; v < cfg.k1 + cfg.k2; ++v) {
    out.type_of[v] = cfg.seed_label(static_cast<VertexId>(v));
    out.time_of[v] = 0.0;
  }
  return out;
}

// Z_i over the (non-loop) bundles incident to the type-i seeds.
void compute_first_moves(MultiGraph const &g, CompetitionConfig const &cfg, CompetitionOutcome &out,
                         BundleWeights &weights)
{
  for (std::size_t s = 0; s < cfg.k1 + cfg.k2; ++s) {
    Label const t = cfg.seed_label(static_cast<VertexId>(s));
    double &z = t == Label::type1 ? out.Z1 : out.Z2;
    for (auto const &inc : g.incident(static_cast<VertexId>(s))) z = std::min(z, weights.get(inc.bundle, t));
  }
}

void tally(CompetitionOutcome &out)
{
  out.N1 = out.N2 = out.N_un = 0;
  for (Label t : out.type_of) {
    if (t == Label::type1)
      ++out.N1;
    else if (t == Label::type2)
      ++out.N2;
    else
      ++out.N_un;
  }
}

struct Event
{
  double time;
  Label type;
  VertexId target;

  bool operator>(Event const &o) const
  {
    return std::tie(time, type, target) > std::tie(o.time, o.type, o.target);
  }
};

} // namespace

CompetitionOutcome run_competition(MultiGraph const &g, CompetitionConfig const &cfg, BundleWeights &weights)
{
  CompetitionOutcome out = seeded_outcome(g, cfg);
  compute_first_moves(g, cfg, out, weights);

  std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
  auto activate = [&](VertexId v) {
    Label const t = out.type_of[v];
    double const base = out.time_of[v];
    for (auto const &inc : g.incident(v)) {
      if (out.type_of[inc.neighbor] != Label::uninfected) continue;
      events.push({base + weights.get(inc.bundle, t), t, inc.neighbor});
    }
  };
  for (std::size_t s = 0; s < cfg.k1 + cfg.k2; ++s) activate(static_cast<VertexId>(s));

  while (!events.empty()) {
    Event const e = events.top();
    events.pop();
    if (out.type_of[e.target] != Label::uninfected) continue;
    out.type_of[e.target] = e.type;
    out.time_of[e.target] = e.time;
    activate(e.target);
  }
  tally(out);
  return out;
}

CompetitionOutcome run_competition(MultiGraph const &g, CompetitionConfig const &cfg, std::uint64_t weights_seed)
{
  BundleWeights weights(g, cfg.law1, cfg.law2, weights_seed);
  return run_competition(g, cfg, weights);
}

CompetitionOutcome reference_competition(MultiGraph const &g, CompetitionConfig const &cfg, BundleWeights &weights)
{
  require(g.n() <= 12, "reference_competition is limited to graphs with at most 12 vertices");
  CompetitionOutcome out = seeded_outcome(g, cfg);
  compute_first_moves(g, cfg, out, weights);

  for (;;) {
    std::optional<Event> best;
    for (std::size_t u = 0; u < g.n(); ++u) {
      Label const t = out.type_of[u];
      if (t == Label::uninfected) continue;
      for (auto const &b_id : g.incident(static_cast<VertexId>(u))) {
        if (out.type_of[b_id.neighbor] != Label::uninfected) continue;
        Event const cand{out.time_of[u] + weights.get(b_id.bundle, t), t, b_id.neighbor};
        if (!best || *best > cand) best = cand;
      }
    }
    if (!best) break;
    out.type_of[best->target] = best->type;
    out.time_of[best->target] = best->time;
  }
  tally(out);
  return out;
}

std::optional<std::string> check_local_consistency(MultiGraph const &g, CompetitionConfig const &cfg,
                                                   CompetitionOutcome const &out, BundleWeights &weights)
{
  std::ostringstream err;
  if (out.type_of.size() != g.n() || out.time_of.size() != g.n()) return "outcome size does not match graph";
  if (out.N1 + out.N2 + out.N_un != g.n()) return "N1 + N2 + N_un != n";

  std::size_t counts[3] = {0, 0, 0};
  for (std::size_t v = 0; v < g.n(); ++v) {
    auto const vid = static_cast<VertexId>(v);
    Label const t = out.type_of[v];
    ++counts[static_cast<int>(t)];
    Label const seed = cfg.seed_label(vid);
    if (seed != Label::uninfected) {
      if (t != seed || out.time_of[v] != 0.0) {
        err << "seed " << v << " lost its label or time";
        return err.str();
      }
      continue;
    }
    if (t == Label::uninfected) {
      for (auto const &inc : g.incident(vid)) {
        if (out.type_of[inc.neighbor] != Label::uninfected) {
          err << "vertex " << v << " is uninfected but has infected neighbour " << inc.neighbor;
          return err.str();
        }
      }
      continue;
    }
    double best_same = kInfinity;
    for (auto const &inc : g.incident(vid)) {
      Label const tu = out.type_of[inc.neighbor];
      if (tu == Label::uninfected) continue;
      double const arrival = out.time_of[inc.neighbor] + weights.get(inc.bundle, tu);
      if (tu == t) {
        best_same = std::min(best_same, arrival);
      } else if (arrival < out.time_of[v]) {
        err << "vertex " << v << " (" << label_name(t) << " at " << out.time_of[v] << ") had an earlier "
            << label_name(tu) << " arrival at " << arrival;
        return err.str();
      }
    }
    if (best_same != out.time_of[v]) {
      err << "vertex " << v << " time " << out.time_of[v] << " differs from earliest same-type arrival " << best_same;
      return err.str();
    }
  }
  if (counts[1] != out.N1 || counts[2] != out.N2 || counts[0] != out.N_un) return "counts do not match labels";

  CompetitionOutcome z;
  compute_first_moves(g, cfg, z, weights);
  if (z.Z1 != out.Z1 || z.Z2 != out.Z2) return "first-move times do not match seed bundle minima";
  return std::nullopt;
}

std::vector<double> one_type_fpp(MultiGraph const &g, BundleWeights &weights, Label t, std::span<VertexId const> sources,
                                 std::span<VertexId const> forbidden)
{
  require(t != Label::uninfected, "one_type_fpp needs an infection type");
  std::vector<double> time(g.n(), kInfinity);
  std::vector<char> blocked(g.n(), 0);
  for (VertexId f : forbidden) blocked[f] = 1;
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (VertexId s : sources) {
    require(!blocked[s], "one_type_fpp: a source is forbidden");
    time[s] = 0.0;
    queue.emplace(0.0, s);
  }
  std::vector<char> done(g.n(), 0);
  while (!queue.empty()) {
    auto const [d, v] = queue.top();
    queue.pop();
    if (done[v]) continue;
    done[v] = 1;
    for (auto const &inc : g.incident(v)) {
      if (blocked[inc.neighbor] || done[inc.neighbor]) continue;
      double const cand = d + weights.get(inc.bundle, t);
      if (cand < time[inc.neighbor]) {
        time[inc.neighbor] = cand;
        queue.emplace(cand, inc.neighbor);
      }
    }
  }
  return time;
}

} // namespace fpprace
