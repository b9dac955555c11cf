#pragma once

#include "fpprace/experiments.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fpprace {

/// Textual experiment configuration: flat `key = value` lines, `#` comments.
///
/// Keys: tau, variant (original|erased|conditioned), alpha, n_grid (comma
/// list), trials, k1, k2 (integer or `n^x` for ceil(n^x)), law1, law2,
/// master_seed, eps (number, or `1/ln` for the default), threads,
/// disjoint_paths (true|false), out, verbosity. Unknown keys are rejected.
struct RunConfig
{
  ExperimentPlan plan;
  std::string out_dir = ".";
  int verbosity = 0;
};

using ConfigEntries = std::map<std::string, std::string, std::less<>>;

ConfigEntries parse_config_text(std::string_view text);
/// Applies one `key=value` override.
void apply_override(ConfigEntries &entries, std::string_view assignment);
/// Builds and validates a RunConfig; throws ConfigError naming the key at fault.
RunConfig make_run_config(ConfigEntries const &entries);

} // namespace fpprace
