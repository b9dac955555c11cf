#include "fpprace/cli.hpp"

#include "fpprace/config.hpp"
#include "fpprace/errors.hpp"
#include "fpprace/experiments.hpp"
#include "fpprace/graph.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace fpprace {

namespace {

namespace fs = std::filesystem;

std::string read_file(std::string const &path)
{
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::ofstream open_output(fs::path const &path)
{
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

struct Options
{
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::vector<std::string> overrides;
  std::string graph_path;
};

RunConfig load(Options const &opt)
{
  ConfigEntries entries;
  if (!opt.config_path.empty()) entries = parse_config_text(read_file(opt.config_path));
  for (auto const &o : opt.overrides) apply_override(entries, o);
  std::optional<std::uint64_t> seed = opt.seed;
  if (!seed) {
    if (char const *env = std::getenv("FPP_RACE_SEED"); env && *env) {
      apply_override(entries, std::string("master_seed=") + env);
    }
  } else {
    entries.insert_or_assign("master_seed", std::to_string(*seed));
  }
  if (opt.out_dir) entries.insert_or_assign("out", *opt.out_dir);
  return make_run_config(entries);
}

void print_outcome(std::ostream &out, MultiGraph const &g, CompetitionConfig const &cfg, CompetitionOutcome const &o)
{
  std::uint64_t loops = 0;
  for (auto l : g.all_self_loops()) loops += l;
  out << "graph: n=" << g.n() << " bundles=" << g.bundle_count() << " self_loops=" << loops << '\n';
  out << "seeds: k1=" << cfg.k1 << " k2=" << cfg.k2 << " law1=" << format_law(cfg.law1)
      << " law2=" << format_law(cfg.law2) << '\n';
  out << "N1=" << o.N1 << " N2=" << o.N2 << " N_un=" << o.N_un << " N_los=" << o.N_los() << '\n';
  out << "Z1=" << format_real(o.Z1) << " Z2=" << format_real(o.Z2) << '\n';
  out << "first_mover=" << label_name(o.first_mover()) << " winner=" << label_name(o.winner()) << '\n';
}

int dispatch(std::string const &command, Options const &opt, std::ostream &out)
{
  RunConfig const rc = load(opt);
  ExperimentPlan const &plan = rc.plan;
  fs::path const dir(rc.out_dir);
  std::uint64_t const n = plan.n_grid.front();
  std::uint64_t const seed = trial_seed(plan.master_seed, n, 0);

  if (command == "generate") {
    TrialGraph const tg = build_trial_graph(plan, n, seed);
    auto file = open_output(dir / "graph.txt");
    write_graph_dump(file, tg.graph);
    out << "wrote " << (dir / "graph.txt").string() << " (n=" << n << ", L_n=" << tg.degrees.total_degree
        << ", bundles=" << tg.graph.bundle_count() << ")\n";
  } else if (command == "simulate") {
    MultiGraph g;
    if (!opt.graph_path.empty()) {
      std::ifstream in(opt.graph_path);
      if (!in) throw IoError("cannot open '" + opt.graph_path + "'");
      g = read_graph_dump(in);
    } else {
      g = build_trial_graph(plan, n, seed).graph;
    }
    CompetitionConfig cfg = plan.competition(g.n());
    if (cfg.k1 + cfg.k2 > g.n()) throw ConfigError("k2: k1 + k2 exceeds the graph's vertex count");
    CompetitionOutcome const o = run_competition(g, cfg, derive_seed(seed, 3));
    print_outcome(out, g, cfg, o);
  } else if (command == "experiment") {
    TrialBatchReport const report = run_trials(plan);
    {
      auto file = open_output(dir / "trials.csv");
      write_trials_csv(file, plan, report.records);
    }
    {
      auto file = open_output(dir / "summary.json");
      write_summary_json(file, plan, report);
    }
    for (auto const &s : report.summaries) {
      out << "n=" << s.n << " P(loser keeps only seeds)=" << format_real(s.loser_keeps_only_seeds.estimate) << " ["
          << format_real(s.loser_keeps_only_seeds.lower) << ", " << format_real(s.loser_keeps_only_seeds.upper)
          << "]\n";
    }
    out << "wrote " << (dir / "trials.csv").string() << " and " << (dir / "summary.json").string() << '\n';
  } else if (command == "diagnose") {
    DiagnosticsReport const report = diagnose_structure(plan);
    auto file = open_output(dir / "diagnostics.csv");
    write_diagnostics_csv(file, plan, report.records);
    for (auto const &s : report.summaries) {
      out << "n=" << s.n << " median |H_n|=" << format_real(s.median_num_giants)
          << " median K_n/L_n=" << format_real(s.median_kn_over_ln)
          << " median neighbour-giant fraction=" << format_real(s.median_neighbor_giant_frac)
          << " median T(h1,h2)=" << format_real(s.median_t_between_giants) << '\n';
    }
    out << "wrote " << (dir / "diagnostics.csv").string() << '\n';
  }
  return kExitOk;
}

} // namespace

int run_cli(std::vector<std::string> const &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Competing first-passage percolation on infinite-mean configuration models", "fpp_race"};
  app.require_subcommand(1);
  Options opt;
  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--config", opt.config_path, "Configuration file (key = value lines)");
    sub->add_option("--seed", opt.seed, "Master seed (overrides FPP_RACE_SEED and the config)");
    sub->add_option("--out", opt.out_dir, "Output directory");
    sub->add_option("--set", opt.overrides, "Override one key, key=value (repeatable)");
  };
  auto *generate = app.add_subcommand("generate", "Sample a degree sequence and graph, write the graph dump");
  auto *simulate = app.add_subcommand("simulate", "Run one race and print the outcome");
  auto *experiment = app.add_subcommand("experiment", "Run Monte Carlo trials, write trials.csv and summary.json");
  auto *diagnose = app.add_subcommand("diagnose", "Run structural diagnostics, write diagnostics.csv");
  for (auto *sub : {generate, simulate, experiment, diagnose}) add_common(sub);
  simulate->add_option("--graph", opt.graph_path, "Graph dump to race on instead of sampling one");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (CLI::CallForHelp const &) {
    out << app.help();
    return kExitOk;
  } catch (CLI::ParseError const &e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  std::string const command = app.get_subcommands().front()->get_name();
  try {
    return dispatch(command, opt, out);
  } catch (ConfigError const &e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (ContractViolation const &e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (IoError const &e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }
}

} // namespace fpprace
