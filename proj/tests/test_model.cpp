#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "paoi/model.hpp"

using namespace paoi;

TEST_CASE("unit conversions") {
  CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3).epsilon(1e-14));
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(dbm_to_watts(23.0) == doctest::Approx(0.199526231).epsilon(1e-8));
  CHECK(db_to_linear(0.0) == doctest::Approx(1.0));
  CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
  CHECK(db_to_linear(-3.0) == doctest::Approx(0.501187234).epsilon(1e-8));
}

TEST_CASE("PhyParams validation") {
  PhyParams p = PhyParams::from_db(23.0, 1e-5, 4.5, 0.8, 0.0);
  CHECK(p.delta() == doctest::Approx(2.0 / 4.5));
  CHECK(p.sinr_threshold == doctest::Approx(1.0));

  CHECK_THROWS_AS(PhyParams::from_db(23.0, 1e-5, 2.0, 0.8, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(PhyParams::from_db(23.0, 1e-5, 4.5, 0.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(PhyParams::from_db(23.0, 1e-5, 4.5, 1.2, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(PhyParams::from_db(23.0, 0.0, 4.5, 0.8, 0.0),
                  std::invalid_argument);
}

TEST_CASE("TrafficParams bounds") {
  CHECK_NOTHROW(TrafficParams{0.05}.validate());
  CHECK_THROWS_AS(TrafficParams{0.0}.validate(), std::invalid_argument);
  CHECK_THROWS_AS(TrafficParams{1.0}.validate(), std::invalid_argument);
}

TEST_CASE("zipf popularity") {
  const auto p = zipf_popularity(30, 0.8);
  CHECK(p.size() == 30);
  CHECK(std::accumulate(p.begin(), p.end(), 0.0) ==
        doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t f = 1; f < p.size(); ++f) CHECK(p[f] <= p[f - 1]);
  // skew 0 is uniform
  for (double v : zipf_popularity(7, 0.0)) CHECK(v == doctest::Approx(1.0 / 7));
  // explicit two-file check: p1/p2 = 2^skew
  const auto q = zipf_popularity(2, 1.0);
  CHECK(q[0] / q[1] == doctest::Approx(2.0));
  CHECK_THROWS_AS(zipf_popularity(0, 0.8), std::domain_error);
  CHECK_THROWS_AS(zipf_popularity(5, -0.1), std::domain_error);
}

TEST_CASE("catalog validation") {
  CHECK_NOTHROW(make_catalog(zipf_popularity(10, 0.8), 3));
  CHECK_THROWS_AS(make_catalog(zipf_popularity(10, 0.8), 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_catalog(zipf_popularity(10, 0.8), 11),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_catalog({0.5, 0.4}, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_catalog({0.4, 0.6}, 1), std::invalid_argument);
}

TEST_CASE("policy set membership accepts exactly the box-capacity set") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  // Random feasible points: draw box values, rescale toward sum C while
  // respecting the box; accept only when rescaling succeeds.
  for (int trial = 0; trial < 100; ++trial) {
    const int F = 3 + static_cast<int>(rng() % 8);
    const int C = 1 + static_cast<int>(rng() % F);
    std::vector<double> q(F);
    for (double& v : q) v = u(rng);
    double sum = std::accumulate(q.begin(), q.end(), 0.0);
    for (double& v : q) v *= C / sum;
    if (*std::max_element(q.begin(), q.end()) > 1.0) continue;
    CHECK_NOTHROW(make_policy(q, C));

    // Off-set perturbations must be rejected with the matching error kind.
    std::vector<double> bad = q;
    for (double& v : bad) v *= 0.9;  // stays in the box, misses the capacity
    try {
      make_policy(bad, C);
      FAIL("capacity violation accepted");
    } catch (const PolicyError& e) {
      CHECK(e.kind() == PolicyError::Kind::capacity);
    }
    bad = q;
    bad[0] = -0.01;
    try {
      make_policy(bad, C);
      FAIL("box violation accepted");
    } catch (const PolicyError& e) {
      CHECK(e.kind() == PolicyError::Kind::box);
    }
  }
}
