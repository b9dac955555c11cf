#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fpprace {

/// Proportion estimate with a 95% Wilson score interval.
struct Proportion
{
  std::uint64_t successes = 0;
  std::uint64_t count = 0;
  double estimate = 0.0; // 0 when count == 0
  double lower = 0.0;
  double upper = 1.0;
};

Proportion wilson(std::uint64_t successes, std::uint64_t count, double z = 1.959963984540054);

/// True when the two intervals intersect.
bool overlaps(Proportion const &a, Proportion const &b);

/// Exact two-sided binomial test p-value (sum of outcomes no more likely than k).
double binomial_two_sided_p(std::uint64_t k, std::uint64_t n, double p);

/// Upper tail P(chi2_df > x).
double chi_square_survival(double x, double df);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);
/// Asymptotic critical value of the two-sample statistic at significance `alpha`.
double ks_critical(std::size_t na, std::size_t nb, double alpha);

/// Median ignoring NaN entries (which mark "not applicable"); NaN when none remain.
double median(std::vector<double> values);

} // namespace fpprace
