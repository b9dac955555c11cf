#include "fpprace/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>

namespace fpprace {

Proportion wilson(std::uint64_t successes, std::uint64_t count, double z)
{
  Proportion p;
  p.successes = successes;
  p.count = count;
  if (count == 0) return p;
  double const n = static_cast<double>(count);
  double const phat = static_cast<double>(successes) / n;
  double const z2 = z * z;
  double const denom = 1.0 + z2 / n;
  double const centre = (phat + z2 / (2.0 * n)) / denom;
  double const half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  p.estimate = phat;
  p.lower = std::max(0.0, centre - half);
  p.upper = std::min(1.0, centre + half);
  return p;
}

bool overlaps(Proportion const &a, Proportion const &b) { return a.lower <= b.upper && b.lower <= a.upper; }

double binomial_two_sided_p(std::uint64_t k, std::uint64_t n, double p)
{
  auto logpmf = [&](std::uint64_t i) {
    double const nd = static_cast<double>(n);
    double const id = static_cast<double>(i);
    return std::lgamma(nd + 1.0) - std::lgamma(id + 1.0) - std::lgamma(nd - id + 1.0) + id * std::log(p) +
           (nd - id) * std::log1p(-p);
  };
  double const observed = logpmf(k);
  double total = 0.0;
  for (std::uint64_t i = 0; i <= n; ++i) {
    double const lp = logpmf(i);
    if (lp <= observed + 1e-9) total += std::exp(lp);
  }
  return std::min(1.0, total);
}

double chi_square_survival(double x, double df)
{
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(df / 2.0, x / 2.0);
}

double ks_statistic(std::vector<double> a, std::vector<double> b)
{
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double const na = static_cast<double>(a.size());
  double const nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    double const x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical(std::size_t na, std::size_t nb, double alpha)
{
  double const c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  double const a = static_cast<double>(na);
  double const b = static_cast<double>(nb);
  return c * std::sqrt((a + b) / (a * b));
}

double median(std::vector<double> values)
{
  std::erase_if(values, [](double x) { return std::isnan(x); });
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  std::size_t const mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

} // namespace fpprace
