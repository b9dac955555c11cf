#include "fpprace/weights.hpp"

#include "fpprace/errors.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

namespace fpprace {

namespace {

double parse_number(std::string_view token, std::string_view whole)
{
  double value = 0.0;
  auto const *first = token.data();
  auto const *last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (token.empty() || ec != std::errc{} || ptr != last)
    throw ConfigError("law '" + std::string(whole) + "': '" + std::string(token) + "' is not a number");
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
  std::vector<std::string_view> parts;
  for (;;) {
    auto const pos = text.find(sep);
    parts.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return parts;
}

// 1 - (1-u)^(1/m): the u-quantile of the min of m standard uniforms.
double min_uniform_quantile(std::uint64_t m, double u)
{
  return -std::expm1(std::log1p(-u) / static_cast<double>(m));
}

} // namespace

void PassageTimeLaw::validate() const
{
  auto positive = [](double x) { return x > 0.0 && std::isfinite(x); };
  bool ok = positive(p1) && shift >= 0.0 && std::isfinite(shift);
  if (family == LawFamily::weibull) ok = ok && positive(p2);
  if (!ok) throw ConfigError("invalid passage-time law parameters: " + format_law(*this));
}

double PassageTimeLaw::cdf(double x) const
{
  double const y = x - shift;
  if (y <= 0.0) return 0.0;
  switch (family) {
  case LawFamily::exponential: return -std::expm1(-p1 * y);
  case LawFamily::uniform: return y >= p1 ? 1.0 : y / p1;
  case LawFamily::weibull: return -std::expm1(-std::pow(y / p2, p1));
  case LawFamily::power: return y >= 1.0 ? 1.0 : std::pow(y, p1);
  }
  return 0.0;
}

PassageTimeLaw parse_law(std::string_view text)
{
  auto const parts = split(text, ':');
  auto const &head = parts.front();
  PassageTimeLaw law;
  if (head == "shift") {
    if (parts.size() < 3) throw ConfigError("law '" + std::string(text) + "': expected shift:<law>:eta");
    auto const last = text.rfind(':');
    auto const inner = text.substr(6, last - 6);
    law = parse_law(inner).shifted(parse_number(text.substr(last + 1), text));
  } else if (head == "exp" && parts.size() == 2) {
    law = PassageTimeLaw::exponential(parse_number(parts[1], text));
  } else if (head == "unif" && parts.size() == 2) {
    law = PassageTimeLaw::uniform(parse_number(parts[1], text));
  } else if (head == "weibull" && parts.size() == 3) {
    law = PassageTimeLaw::weibull(parse_number(parts[1], text), parse_number(parts[2], text));
  } else if (head == "power" && parts.size() == 2) {
    law = PassageTimeLaw::power(parse_number(parts[1], text));
  } else {
    throw ConfigError("unrecognised passage-time law '" + std::string(text) +
                      "' (expected exp:rate, unif:b, weibull:shape:scale, power:a or shift:<law>:eta)");
  }
  law.validate();
  return law;
}

std::string format_law(PassageTimeLaw const &law)
{
  // shortest text that parses back to the same double
  auto num = [](double x) {
    char buf[32];
    auto const res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
  };
  std::ostringstream out;
  if (law.shift != 0.0) out << "shift:";
  switch (law.family) {
  case LawFamily::exponential: out << "exp:" << num(law.p1); break;
  case LawFamily::uniform: out << "unif:" << num(law.p1); break;
  case LawFamily::weibull: out << "weibull:" << num(law.p1) << ':' << num(law.p2); break;
  case LawFamily::power: out << "power:" << num(law.p1); break;
  }
  if (law.shift != 0.0) out << ':' << num(law.shift);
  return out.str();
}

double bundle_min_quantile(PassageTimeLaw const &law, std::uint64_t m, double u)
{
  require(m >= 1, "bundle-min needs at least one edge");
  auto const md = static_cast<double>(m);
  double x = 0.0;
  switch (law.family) {
  case LawFamily::exponential: x = -std::log1p(-u) / (law.p1 * md); break;
  case LawFamily::uniform: x = law.p1 * min_uniform_quantile(m, u); break;
  case LawFamily::weibull: x = law.p2 * std::pow(-std::log1p(-u) / md, 1.0 / law.p1); break;
  case LawFamily::power: x = std::pow(min_uniform_quantile(m, u), 1.0 / law.p1); break;
  }
  return law.shift + x;
}

double sample_weight(PassageTimeLaw const &law, Rng &rng) { return bundle_min_quantile(law, 1, rng.uniform01()); }

double sample_bundle_min(PassageTimeLaw const &law, std::uint64_t m, Rng &rng)
{
  return bundle_min_quantile(law, m, rng.uniform01());
}

} // namespace fpprace
