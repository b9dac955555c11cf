#include "fpprace/config.hpp"

#include "fpprace/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>

namespace fpprace {

namespace {

constexpr std::array kKnownKeys{"tau",    "variant", "alpha", "n_grid", "trials",         "k1",  "k2",
                                "law1",   "law2",    "master_seed", "eps", "threads", "disjoint_paths", "out",
                                "verbosity"};

std::string_view trim(std::string_view s)
{
  auto const first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  auto const last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad(std::string_view key, std::string const &why)
{
  throw ConfigError(std::string(key) + ": " + why);
}

template <typename T> T parse_integer(std::string_view key, std::string_view text)
{
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    bad(key, "'" + std::string(text) + "' is not a non-negative integer");
  return value;
}

double parse_real(std::string_view key, std::string_view text)
{
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    bad(key, "'" + std::string(text) + "' is not a number");
  return value;
}

SeedRule parse_seed_rule(std::string_view key, std::string_view text)
{
  SeedRule rule;
  if (text.starts_with("n^")) {
    rule.exponent = parse_real(key, text.substr(2));
  } else {
    rule.fixed = parse_integer<std::size_t>(key, text);
  }
  return rule;
}

bool parse_bool(std::string_view key, std::string_view text)
{
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  bad(key, "expected true or false");
}

} // namespace

ConfigEntries parse_config_text(std::string_view text)
{
  ConfigEntries entries;
  std::size_t lineno = 0;
  while (!text.empty()) {
    auto const eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++lineno;
    if (auto const hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto const eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    apply_override(entries, line);
  }
  return entries;
}

void apply_override(ConfigEntries &entries, std::string_view assignment)
{
  auto const eq = assignment.find('=');
  if (eq == std::string_view::npos) throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
  auto const key = trim(assignment.substr(0, eq));
  auto const value = trim(assignment.substr(eq + 1));
  if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
    throw ConfigError(std::string(key) + ": unknown configuration key");
  entries.insert_or_assign(std::string(key), std::string(value));
}

RunConfig make_run_config(ConfigEntries const &entries)
{
  RunConfig rc;
  ExperimentPlan &plan = rc.plan;
  auto get = [&](std::string_view key) -> std::optional<std::string_view> {
    auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    return std::string_view(it->second);
  };

  for (auto const &[key, value] : entries)
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) bad(key, "unknown configuration key");

  if (auto v = get("tau")) plan.model.tau = parse_real("tau", *v);
  if (auto v = get("variant")) {
    if (*v == "original")
      plan.graph_variant = GraphVariant::original;
    else if (*v == "erased")
      plan.graph_variant = GraphVariant::erased;
    else if (*v == "conditioned")
      plan.graph_variant = GraphVariant::conditioned;
    else
      bad("variant", "expected original, erased or conditioned");
  }
  if (plan.graph_variant == GraphVariant::conditioned) {
    plan.model.variant = DegreeVariant::conditioned;
    auto v = get("alpha");
    if (!v) bad("alpha", "required for the conditioned variant");
    plan.model.alpha = parse_real("alpha", *v);
  } else if (get("alpha")) {
    bad("alpha", "only meaningful for the conditioned variant");
  }
  if (auto v = get("n_grid")) {
    plan.n_grid.clear();
    std::string_view rest = *v;
    while (!rest.empty()) {
      auto const comma = rest.find(',');
      plan.n_grid.push_back(parse_integer<std::uint64_t>("n_grid", trim(rest.substr(0, comma))));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }
  if (auto v = get("trials")) plan.trials = parse_integer<std::size_t>("trials", *v);
  if (auto v = get("k1")) plan.k1 = parse_seed_rule("k1", *v);
  if (auto v = get("k2")) plan.k2 = parse_seed_rule("k2", *v);
  try {
    if (auto v = get("law1")) plan.law1 = parse_law(*v);
  } catch (ConfigError const &e) {
    bad("law1", e.what());
  }
  try {
    if (auto v = get("law2")) plan.law2 = parse_law(*v);
  } catch (ConfigError const &e) {
    bad("law2", e.what());
  }
  if (auto v = get("master_seed")) plan.master_seed = parse_integer<std::uint64_t>("master_seed", *v);
  if (auto v = get("eps"); v && *v != "1/ln") plan.eps.fixed = parse_real("eps", *v);
  if (auto v = get("threads")) plan.threads = parse_integer<std::size_t>("threads", *v);
  if (auto v = get("disjoint_paths")) plan.disjoint_paths = parse_bool("disjoint_paths", *v);
  if (auto v = get("out")) rc.out_dir = std::string(*v);
  if (auto v = get("verbosity")) rc.verbosity = parse_integer<int>("verbosity", *v);

  plan.validate();
  return rc;
}

} // namespace fpprace
