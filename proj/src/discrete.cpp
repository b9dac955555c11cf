#include "fpprace/discrete.hpp"

#include "fpprace/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fpprace {

namespace {

// Stirling correction lgamma(z) - [(z-1/2)ln z - z + ln(2 pi)/2], z >= 16.
double stirling_tail(double z)
{
  double const iz = 1.0 / z;
  double const iz2 = iz * iz;
  return iz * (1.0 / 12.0 - iz2 * (1.0 / 360.0 - iz2 * (1.0 / 1260.0 - iz2 / 1680.0)));
}

// Smallest k in [lo, hi) with ratio(k) = p(k+1)/p(k) <= 1, or hi.
template <typename Ratio> std::uint64_t find_mode(std::uint64_t lo, std::uint64_t hi, Ratio ratio)
{
  while (lo < hi) {
    std::uint64_t const mid = lo + (hi - lo) / 2;
    if (ratio(mid) <= 1.0)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

} // namespace

double log_factorial_delta(std::uint64_t x, std::int64_t d)
{
  if (d == 0) return 0.0;
  if (d < 0) {
    std::uint64_t const down = static_cast<std::uint64_t>(-d);
    require(down <= x, "log_factorial_delta: x + d must be non-negative");
    return -log_factorial_delta(x - down, -d);
  }
  if (d <= 16) {
    double acc = 0.0;
    for (std::int64_t i = 1; i <= d; ++i) acc += std::log(static_cast<double>(x) + static_cast<double>(i));
    return acc;
  }
  double const y = static_cast<double>(x) + 1.0;
  double const dd = static_cast<double>(d);
  if (y < 16.0) return std::lgamma(y + dd) - std::lgamma(y);
  return (y + dd - 0.5) * std::log1p(dd / y) + dd * std::log(y) - dd + stirling_tail(y + dd) - stirling_tail(y);
}

std::uint64_t sample_log_concave(std::uint64_t lo, std::uint64_t hi, std::uint64_t mode,
                                 std::function<double(std::uint64_t)> const &rel, Rng &rng)
{
  require(lo <= mode && mode <= hi, "sample_log_concave: mode outside support");
  if (lo == hi) return lo;

  if (hi - lo < 64) {
    std::vector<double> w(hi - lo + 1);
    double total = 0.0;
    for (std::uint64_t k = lo; k <= hi; ++k) total += (w[k - lo] = std::exp(std::min(0.0, rel(k))));
    double u = rng.uniform01() * total;
    for (std::uint64_t k = lo; k < hi; ++k) {
      u -= w[k - lo];
      if (u < 0.0) return k;
    }
    return hi;
  }

  // Anchors: first points (doubling outwards) where the log-pmf has dropped by 1.
  std::uint64_t right = mode;
  double rel_right = 0.0;
  double slope_right = 0.0; // < 0 when a geometric right tail is used
  if (mode < hi) {
    std::uint64_t d = 1;
    for (;;) {
      right = (hi - mode > d) ? mode + d : hi;
      rel_right = rel(right);
      if (rel_right <= -1.0 || right == hi) break;
      d *= 2;
    }
    if (rel_right <= -1.0 && right < hi) slope_right = rel_right - rel(right - 1);
  }
  std::uint64_t left = mode;
  double rel_left = 0.0;
  double slope_left = 0.0;
  if (mode > lo) {
    std::uint64_t d = 1;
    for (;;) {
      left = (mode - lo > d) ? mode - d : lo;
      rel_left = rel(left);
      if (rel_left <= -1.0 || left == lo) break;
      d *= 2;
    }
    if (rel_left <= -1.0 && left > lo) slope_left = rel_left - rel(left + 1);
  }

  double const centre_mass = static_cast<double>(right - left + 1);
  double const right_mass = slope_right < 0.0 ? std::exp(rel_right) / std::expm1(-slope_right) : 0.0;
  double const left_mass = slope_left < 0.0 ? std::exp(rel_left) / std::expm1(-slope_left) : 0.0;
  double const total_mass = centre_mass + right_mass + left_mass;

  for (;;) {
    double const pick = rng.uniform01() * total_mass;
    std::uint64_t k = 0;
    double env = 0.0;
    if (pick < centre_mass) {
      k = left + rng.below(right - left + 1);
    } else {
      bool const to_right = pick < centre_mass + right_mass;
      double const slope = to_right ? slope_right : slope_left;
      // geometric offset j >= 1 with P(j > t) = exp(slope * t)
      double const j = 1.0 + std::floor(std::log(rng.uniform01()) / slope);
      double const room = to_right ? static_cast<double>(hi - right) : static_cast<double>(left - lo);
      if (j > room) continue;
      auto const step = static_cast<std::uint64_t>(j);
      k = to_right ? right + step : left - step;
      env = (to_right ? rel_right : rel_left) + slope * j;
    }
    if (std::log(rng.uniform01()) < rel(k) - env) return k;
  }
}

std::uint64_t sample_hypergeometric(std::uint64_t population, std::uint64_t marked, std::uint64_t draws, Rng &rng)
{
  require(marked <= population && draws <= population, "sample_hypergeometric: invalid parameters");
  std::uint64_t const unmarked = population - marked;
  std::uint64_t const lo = draws > unmarked ? draws - unmarked : 0;
  std::uint64_t const hi = std::min(marked, draws);
  if (lo == hi) return lo;

  auto const K = static_cast<double>(marked);
  auto const n = static_cast<double>(draws);
  auto const U = static_cast<double>(unmarked);
  auto ratio = [&](std::uint64_t x) {
    double const xd = static_cast<double>(x);
    return (K - xd) * (n - xd) / ((xd + 1.0) * (U - n + xd + 1.0));
  };
  std::uint64_t const mode = find_mode(lo, hi, ratio);

  // log p(x) = -[x! (K-x)! (n-x)! (U-n+x)!] + const
  auto rel = [&](std::uint64_t x) {
    auto const dx = static_cast<std::int64_t>(x) - static_cast<std::int64_t>(mode);
    return -(log_factorial_delta(mode, dx) + log_factorial_delta(marked - mode, -dx) +
             log_factorial_delta(draws - mode, -dx) + log_factorial_delta(unmarked - (draws - mode), dx));
  };
  return sample_log_concave(lo, hi, mode, rel, rng);
}

std::uint64_t sample_loop_count(std::uint64_t own, std::uint64_t total, Rng &rng)
{
  require(total % 2 == 0 && own <= total, "sample_loop_count: invalid parameters");
  std::uint64_t const others = total - own;
  std::uint64_t const lo = own > others ? (own - others + 1) / 2 : 0;
  std::uint64_t const hi = own / 2;
  if (lo >= hi) return hi;

  // With s loops: k = own - 2s half-edges leave the vertex and j = (others - k)/2
  // pairs form among the others; p(s) is proportional to 1 / (k! s! j! 4^s).
  auto out_of = [&](std::uint64_t s) { return own - 2 * s; };
  auto pairs_among = [&](std::uint64_t s) { return (others - out_of(s)) / 2; };
  auto ratio = [&](std::uint64_t s) {
    double const k = static_cast<double>(out_of(s));
    return k * (k - 1.0) / (4.0 * (static_cast<double>(s) + 1.0) * (static_cast<double>(pairs_among(s)) + 1.0));
  };
  std::uint64_t const mode = find_mode(lo, hi, ratio);
  double const log4 = std::log(4.0);
  auto rel = [&](std::uint64_t s) {
    auto const ds = static_cast<std::int64_t>(s) - static_cast<std::int64_t>(mode);
    return -(log_factorial_delta(out_of(mode), -2 * ds) + log_factorial_delta(mode, ds) +
             log_factorial_delta(pairs_among(mode), ds) + static_cast<double>(ds) * log4);
  };
  return sample_log_concave(lo, hi, mode, rel, rng);
}

} // namespace fpprace
