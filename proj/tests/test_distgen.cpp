#include <doctest.h>

#include <cmath>
#include <numeric>

#include "uaeval/distgen.hpp"
#include "uaeval/error.hpp"
#include "uaeval/theory.hpp"

using namespace uaeval;

namespace {

struct Moments {
  double mean;
  double sd;
};

Moments sample_moments(std::span<const double> v) {
  long double s = 0, ss = 0;
  for (double x : v) s += x;
  const long double mean = s / v.size();
  for (double x : v) ss += (x - mean) * (x - mean);
  return {static_cast<double>(mean), static_cast<double>(std::sqrt(ss / (v.size() - 1)))};
}

}  // namespace

TEST_CASE("DistSpec validation and defaults") {
  CHECK_THROWS_AS(DistSpec::normal(0, 0), InputError);
  CHECK_THROWS_AS(DistSpec::normal(0, -1), InputError);
  CHECK_THROWS_AS(DistSpec::lognormal(0, 0), InputError);
  CHECK_THROWS_AS(DistSpec::exponential(0), InputError);
  CHECK_THROWS_AS(DistSpec::uniform(1, 1), InputError);
  CHECK_THROWS_AS(DistSpec::uniform(2, 1), InputError);
  CHECK_THROWS_AS(DistSpec::normal(NAN, 1), InputError);

  CHECK(DistSpec::from_params(Family::exponential, {}) == DistSpec::exponential(1.0));
  CHECK(DistSpec::from_params(Family::lognormal, {}) == DistSpec::lognormal(0.0, 1.0));
  const std::vector<double> two{-1.0, 2.0};
  CHECK(DistSpec::from_params(Family::uniform, two) == DistSpec::uniform(-1.0, 2.0));
  CHECK_THROWS_AS(DistSpec::from_params(Family::exponential, two), InputError);
  CHECK(DistSpec::normal(0, 1).describe() == "normal(0,1)");
  CHECK(parse_family("lognormal") == Family::lognormal);
  CHECK_THROWS_AS(parse_family("cauchy"), InputError);
}

TEST_CASE("gen_errors examples") {
  const ErrorVector n = gen_errors(DistSpec::normal(), 10000, 12345);
  const Moments m = sample_moments(n.values());
  CHECK(std::fabs(m.mean) <= 0.05);
  CHECK(std::fabs(m.sd - 1.0) <= 0.05);

  const ErrorVector u = gen_errors(DistSpec::uniform(), 10000, 777);
  for (double x : u) {
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  CHECK(std::fabs(sample_moments(u.values()).mean - 0.5) <= 0.02);

  CHECK(gen_errors(DistSpec::lognormal(), 1000, 5) == gen_errors(DistSpec::lognormal(), 1000, 5));
  CHECK_FALSE(gen_errors(DistSpec::lognormal(), 1000, 5) == gen_errors(DistSpec::lognormal(), 1000, 6));
  CHECK_THROWS_AS(gen_errors(DistSpec::normal(), 0, 1), InputError);
}

TEST_CASE("gen_errors prefix stability and odd counts") {
  // Draws are consumed in pairs, so a shorter run is a prefix of a longer one.
  const ErrorVector long_run = gen_errors(DistSpec::normal(2.0, 3.0), 101, 9);
  const ErrorVector short_run = gen_errors(DistSpec::normal(2.0, 3.0), 7, 9);
  for (std::size_t i = 0; i < short_run.size(); ++i) CHECK(short_run[i] == long_run[i]);
  for (double x : gen_errors(DistSpec::exponential(2.0), 1000, 3)) CHECK(x >= 0.0);
  for (double x : gen_errors(DistSpec::lognormal(), 1000, 3)) CHECK(x > 0.0);
  for (double x : gen_errors(DistSpec::uniform(-3.0, -2.0), 1000, 3)) {
    CHECK(x >= -3.0);
    CHECK(x < -2.0);
  }
}

TEST_CASE("property: moment convergence against closed forms at 10000 draws") {
  const std::vector<DistSpec> specs = {DistSpec::normal(),      DistSpec::normal(1.5, 0.5),
                                       DistSpec::exponential(), DistSpec::exponential(4.0),
                                       DistSpec::lognormal(),   DistSpec::lognormal(-1.0, 0.5),
                                       DistSpec::uniform(),     DistSpec::uniform(-1.0, 3.0)};
  std::uint64_t seed = 100;
  for (const DistSpec& spec : specs) {
    CAPTURE(spec.describe());
    const ErrorVector e = gen_errors(spec, 10000, seed++);
    std::vector<double> abs_e(e.size()), sq(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      abs_e[i] = std::fabs(e[i]);
      sq[i] = e[i] * e[i];
    }
    const AnalyticMoments a = analytic_moments(spec);
    const Moments ma = sample_moments(abs_e);
    const Moments ms = sample_moments(sq);
    const double root = std::sqrt(10000.0);
    CHECK(std::fabs(ma.mean - a.mean_abs) <= 5.0 * ma.sd / root);
    CHECK(std::fabs(ms.mean - a.rms * a.rms) <= 5.0 * ms.sd / root);
  }
}

TEST_CASE("histogram examples") {
  const Histogram h = histogram(std::vector{0.0, 0.5, 1.0}, 2);
  CHECK(h.edges == std::vector{0.0, 0.5, 1.0});
  CHECK(h.counts == std::vector<std::size_t>{1, 2});

  const Histogram flat = histogram(std::vector{3.0, 3.0, 3.0}, 4);
  CHECK(flat.counts == std::vector<std::size_t>{3});
  REQUIRE(flat.edges.size() == 2);
  CHECK(flat.edges[0] < 3.0);
  CHECK(flat.edges[1] > 3.0);

  const ErrorVector e = gen_errors(DistSpec::normal(), 10000, 31);
  const Histogram g = histogram(e, 50);
  const auto mode = static_cast<std::size_t>(std::max_element(g.counts.begin(), g.counts.end()) - g.counts.begin());
  // The modal bin is the one straddling 0, or a direct neighbour of it.
  std::size_t zero_bin = 0;
  while (!(g.edges[zero_bin] <= 0.0 && 0.0 < g.edges[zero_bin + 1])) ++zero_bin;
  CHECK(g.edges[mode] <= 0.0 + (g.edges[1] - g.edges[0]));
  CHECK(g.edges[mode + 1] >= 0.0 - (g.edges[1] - g.edges[0]));
  CHECK((mode + 1 >= zero_bin && mode <= zero_bin + 1));

  CHECK_THROWS_AS(histogram(std::vector<double>{}, 3), InputError);
  CHECK_THROWS_AS(histogram(std::vector{1.0}, 0), InputError);
}

TEST_CASE("property: histogram counts sum to the input size") {
  std::uint64_t seed = 1;
  for (std::size_t bins : {1u, 2u, 7u, 50u, 333u}) {
    for (const DistSpec& spec : {DistSpec::normal(), DistSpec::lognormal(), DistSpec::uniform(-5, 5)}) {
      const ErrorVector e = gen_errors(spec, 1 + 997 * seed % 5000, seed);
      ++seed;
      const Histogram h = histogram(e, bins);
      CHECK(std::accumulate(h.counts.begin(), h.counts.end(), std::size_t{0}) == e.size());
      CHECK(h.edges.size() == h.counts.size() + 1);
      for (std::size_t i = 1; i < h.edges.size(); ++i) CHECK(h.edges[i - 1] < h.edges[i]);
      // Every value falls inside the bin it was counted in.
      for (double x : e) {
        CHECK(x >= h.edges.front());
        CHECK(x <= h.edges.back());
      }
    }
  }
}

TEST_CASE("transform_errors") {
  const ErrorVector e{1, -2};
  CHECK(transform_errors(e, Transform::absolute) == ErrorVector{1, 2});
  CHECK(transform_errors(e, Transform::squared) == ErrorVector{1, 4});
  CHECK(transform_errors(e, Transform::identity) == e);
  const ErrorVector sq = transform_errors(ErrorVector{0.1, 10}, Transform::squared);
  CHECK(sq[0] == doctest::Approx(0.01));
  CHECK(sq[1] == 100.0);
  CHECK(parse_transform("squared") == Transform::squared);
  CHECK_THROWS_AS(parse_transform("cubed"), InputError);
}
