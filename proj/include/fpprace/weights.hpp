#pragma once

#include "fpprace/random.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace fpprace {

enum class LawFamily { exponential, uniform, weibull, power };

/// Continuous positive passage-time law, optionally shifted by eta >= 0.
///
/// exponential(rate), uniform(0,b), weibull(shape, scale) and power(a) with
/// X = U^(1/a). Every family has a closed-form inverse CDF, and so does the
/// law of the minimum of m i.i.d. copies.
struct PassageTimeLaw
{
  LawFamily family = LawFamily::exponential;
  double p1 = 1.0; // rate | b | shape | a
  double p2 = 0.0; // scale (weibull only)
  double shift = 0.0;

  static PassageTimeLaw exponential(double rate) { return {LawFamily::exponential, rate, 0.0, 0.0}; }
  static PassageTimeLaw uniform(double b) { return {LawFamily::uniform, b, 0.0, 0.0}; }
  static PassageTimeLaw weibull(double shape, double scale) { return {LawFamily::weibull, shape, scale, 0.0}; }
  static PassageTimeLaw power(double a) { return {LawFamily::power, a, 0.0, 0.0}; }
  PassageTimeLaw shifted(double eta) const
  {
    auto law = *this;
    law.shift += eta;
    return law;
  }

  /// Infimum of the support is 0 (the regime the competition results cover).
  bool satisfies_assumption() const { return shift == 0.0; }
  void validate() const;
  double cdf(double x) const;

  friend bool operator==(PassageTimeLaw const &, PassageTimeLaw const &) = default;
};

/// Parses `exp:rate`, `unif:b`, `weibull:shape:scale`, `power:a`, `shift:<law>:eta`.
PassageTimeLaw parse_law(std::string_view text);
std::string format_law(PassageTimeLaw const &law);

/// Inverse CDF of the minimum of m i.i.d. draws, evaluated at u in (0,1).
double bundle_min_quantile(PassageTimeLaw const &law, std::uint64_t m, double u);
inline double weight_quantile(PassageTimeLaw const &law, double u) { return bundle_min_quantile(law, 1, u); }

double sample_weight(PassageTimeLaw const &law, Rng &rng);
/// One uniform consumed regardless of m.
double sample_bundle_min(PassageTimeLaw const &law, std::uint64_t m, Rng &rng);

} // namespace fpprace
