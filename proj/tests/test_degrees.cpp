#include "fpprace/degrees.hpp"
#include "fpprace/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace fpprace;

TEST_CASE("inverse transform of the canonical law")
{
  CHECK(degree_from_uniform(1.5, 0.2) == 25);
  CHECK(degree_from_uniform(1.5, 0.5) == 4);
  // just above / below the atom boundaries at x = 25: P(D > 25) = 0.2
  CHECK(degree_from_uniform(1.5, std::nextafter(0.2, 0.0)) == 26);
  CHECK(degree_from_uniform(1.5, 0.999999) == 2);
}

TEST_CASE("tail is exact at integers for fixed quantiles")
{
  for (double tau : {1.2, 1.5, 1.8}) {
    for (Degree x : {1, 2, 3, 7, 10, 100, 12345}) {
      double const tail = std::pow(static_cast<double>(x), -(tau - 1.0));
      // u slightly below the tail probability gives D > x, slightly above gives D <= x
      CHECK(degree_from_uniform(tau, tail * (1 - 1e-9)) > x);
      if (x >= 2) CHECK(degree_from_uniform(tau, std::min(tail * (1 + 1e-9), 0.999999)) <= x);
    }
  }
}

TEST_CASE("conditioned acceptance probability")
{
  auto const m = DegreeModel::conditioned(1.5, 0.5);
  CHECK(conditioned_bound(0.5, 625) == 25);
  CHECK(conditioned_acceptance_probability(m, 625) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(conditioned_bound(0.5, 10000) == 100);
}

TEST_CASE("model validation")
{
  CHECK_THROWS_AS(DegreeModel::pure(1.0).validate(), ConfigError);
  CHECK_THROWS_AS(DegreeModel::pure(2.0).validate(), ConfigError);
  CHECK_NOTHROW(DegreeModel::pure(1.5).validate());
  CHECK_THROWS_AS(DegreeModel::conditioned(1.5, 0.0).validate(), ConfigError);
  CHECK_THROWS_AS(DegreeModel::conditioned(1.5, 1.0 / 1.5).validate(), ConfigError);
  CHECK_THROWS_AS(DegreeModel::conditioned(1.5, 1.0 / 4.5).validate(), ConfigError);
  CHECK_NOTHROW(DegreeModel::conditioned(1.5, 0.5).validate());
  CHECK_NOTHROW(DegreeModel::conditioned(1.5, 0.35).validate());
}

TEST_CASE("parity fix")
{
  Rng rng(1);
  auto one = make_degree_sequence({3}, rng);
  CHECK(one.degrees == std::vector<Degree>{4});
  CHECK(one.parity_fixed);
  CHECK(one.parity_vertex == VertexId{0});
  CHECK(one.total_degree == 4);

  auto two = make_degree_sequence({2, 2}, rng);
  CHECK(two.degrees == std::vector<Degree>{2, 2});
  CHECK_FALSE(two.parity_fixed);
  CHECK_FALSE(two.parity_vertex.has_value());
}

TEST_CASE("sampled sequences: parity, support, minimum degree")
{
  Rng rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    auto const seq = sample_degree_sequence(DegreeModel::pure(1.5), 101, rng);
    CHECK(seq.total_degree % 2 == 0);
    Degree sum = 0;
    for (Degree d : seq.degrees) {
      CHECK(d >= 2);
      sum += d;
    }
    CHECK(sum == seq.total_degree);
  }
  auto const cond = DegreeModel::conditioned(1.5, 0.5);
  for (int rep = 0; rep < 20; ++rep) {
    auto const seq = sample_degree_sequence(cond, 400, rng);
    for (std::size_t v = 0; v < seq.n(); ++v) {
      bool const bumped = seq.parity_vertex && *seq.parity_vertex == v;
      CHECK(seq.degrees[v] <= 20 + (bumped ? 1 : 0));
    }
  }
}

TEST_CASE("empirical tail matches x^-(tau-1) within 3 binomial standard errors")
{
  Rng rng(2024);
  std::size_t const n = 10000;
  std::vector<Degree> draws(n);
  for (auto &d : draws) d = sample_degree(DegreeModel::pure(1.5), n, rng);
  for (Degree x : {2, 4, 8, 16}) {
    double const p = std::pow(static_cast<double>(x), -0.5);
    double hits = 0;
    for (Degree d : draws) hits += d > x;
    double const se = std::sqrt(p * (1 - p) / n);
    CHECK(std::abs(hits / n - p) < 3 * se);
  }
}

TEST_CASE("conditioned law is the renormalised pure law on small values")
{
  Rng rng(99);
  auto const model = DegreeModel::conditioned(1.5, 0.5);
  std::uint64_t const n = 625; // bound 25, acceptance 0.8
  std::size_t const draws = 20000;
  std::vector<double> freq(26, 0.0);
  for (std::size_t i = 0; i < draws; ++i) {
    Degree const d = sample_degree(model, n, rng);
    REQUIRE(d <= 25);
    freq[d] += 1.0;
  }
  for (Degree j : {2, 3, 4}) {
    double const pure = std::pow(j - 1.0, -0.5) - std::pow(static_cast<double>(j), -0.5);
    double const p = pure / 0.8;
    double const se = std::sqrt(p * (1 - p) / draws);
    CHECK(std::abs(freq[j] / draws - p) < 4 * se);
  }
}

TEST_CASE("giant threshold and giant set")
{
  auto const thr = giant_threshold(DegreeModel::pure(1.5), 100);
  CHECK(thr.u_n == doctest::Approx(10000.0));
  CHECK(thr.eps_n == doctest::Approx(1.0 / std::log(100.0)));
  CHECK(thr.threshold == doctest::Approx(2171.47241).epsilon(1e-6));

  auto const cthr = giant_threshold(DegreeModel::conditioned(1.5, 0.5), 10000);
  CHECK(cthr.u_n == doctest::Approx(100.0));

  std::vector<Degree> const degrees{1, 2, 10000};
  CHECK(giant_set(degrees, thr) == std::vector<VertexId>{2});
  std::vector<Degree> const small{1, 2, 3};
  CHECK(giant_set(small, thr).empty());
  GiantThreshold tiny{1.0, 1e-300, 1e-300};
  CHECK(giant_set(small, tiny).size() == 3);
}

TEST_CASE("default eps rule is non-increasing and vanishing")
{
  EpsRule rule;
  double prev = 1.0;
  for (std::uint64_t n = 2; n < 1000000000ULL; n = n * 3 + 1) {
    double const e = rule(n);
    CHECK(e > 0.0);
    CHECK(e <= 1.0);
    CHECK(e <= prev);
    prev = e;
  }
  CHECK(rule(1000000000ULL) < 0.05);
}
