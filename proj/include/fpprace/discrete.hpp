#pragma once

#include "fpprace/random.hpp"

#include <cstdint>
#include <functional>

namespace fpprace {

/// log((x+d)!) - log(x!) for x >= 0, x + d >= 0, accurate for large x.
double log_factorial_delta(std::uint64_t x, std::int64_t d);

/// Exact sampler for a log-concave pmf on the integers [lo, hi].
///
/// `rel(k)` must return log p(k) - log p(mode). Small supports are sampled by
/// inversion; larger ones by rejection from a flat-centre/geometric-tail
/// envelope whose slopes come from log-concavity.
std::uint64_t sample_log_concave(std::uint64_t lo, std::uint64_t hi, std::uint64_t mode,
                                 std::function<double(std::uint64_t)> const &rel, Rng &rng);

/// Number of marked items in `draws` draws without replacement from a
/// population of `population` items of which `marked` are marked.
std::uint64_t sample_hypergeometric(std::uint64_t population, std::uint64_t marked, std::uint64_t draws, Rng &rng);

/// Number of self-loops formed among the `own` half-edges of one vertex when
/// `total` half-edges (own included, even) are paired uniformly at random.
std::uint64_t sample_loop_count(std::uint64_t own, std::uint64_t total, Rng &rng);

} // namespace fpprace
