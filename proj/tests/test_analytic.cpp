#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "paoi/analytic.hpp"
#include "quadrature.hpp"

using namespace paoi;

namespace {

PhyParams phy_lin(double alpha, double beta, double theta) {
  PhyParams p;
  p.tx_power = 0.2;
  p.bs_density = 1e-5;
  p.pathloss_exp = alpha;
  p.active_prob = beta;
  p.sinr_threshold = theta;
  return p;
}

// Independent integral form of the cached-interferer coefficient:
// zeta^n beta^{-(n+1)} delta int_0^1 t^{-delta-1} [(1+w)^{n+1} - 1] dt
// with w = beta*theta*t / (1 + (1-beta)*theta*t). Collapsing the binomial
// sum before integrating sidesteps the hypergeometric evaluation entirely.
double gamma_oracle(int n, double alpha, double beta, double theta,
                    double zeta) {
  const double d = 2.0 / alpha;
  const double integral = oracle::integrate(
      [=](double t) {
        const double w = beta * theta * t / (1.0 + (1.0 - beta) * theta * t);
        // expm1/log1p keep the bracket accurate when w is tiny near t = 0.
        return std::pow(t, -d - 1.0) * std::expm1((n + 1.0) * std::log1p(w));
      },
      0.0, 1.0);
  return std::pow(zeta, n) * std::pow(beta, -(n + 1.0)) * d * integral;
}

// Same reduction for the uncached-interferer coefficient, from the Beta
// integral over (0, inf) split at 1 with s -> 1/v on the outer piece.
double eps_oracle(int n, double alpha, double beta, double theta, double zeta) {
  const double d = 2.0 / alpha;
  auto bracket = [=](double s) {
    return std::expm1((n + 1.0) * std::log1p(beta / (1.0 + s)));
  };
  const double inner = oracle::integrate(
      [=](double s) { return std::pow(s, d - 1.0) * bracket(s); }, 0.0, 1.0);
  const double outer = oracle::integrate(
      [=](double v) { return std::pow(v, -d - 1.0) * bracket(1.0 / v); }, 0.0,
      1.0);
  return std::pow(zeta, n) * std::pow(beta, -(n + 1.0)) * d *
         std::pow(theta, d) * (inner + outer);
}

// Mean STP by direct radial-integral reduction: the exclusion-zone and
// full-plane interference integrals both scale as r^2, so the spatial
// average collapses to beta*q / (q(1+rho_in) + (1-q)rho_all).
double stp_oracle(double q, double alpha, double beta, double theta) {
  auto kernel = [=](double u) {
    return std::pow(u, alpha - 3.0) / (1.0 + theta * std::pow(u, alpha));
  };
  const double inside = oracle::integrate(kernel, 0.0, 1.0);
  const double tail = oracle::integrate(
      [=](double v) { return v / (std::pow(v, alpha) + theta); }, 0.0, 1.0);
  const double rho_in = 2.0 * beta * theta * inside;
  const double rho_all = rho_in + 2.0 * beta * theta * tail;
  return beta * q / (q * (1.0 + rho_in) + (1.0 - q) * rho_all);
}

}  // namespace

TEST_CASE("queue_peak_age closed form and boundary") {
  CHECK(queue_peak_age(0.2, 1.0) == doctest::Approx(1.0 / 0.2 + 0.8 / 0.8));
  CHECK(queue_peak_age(0.1, 0.6) ==
        doctest::Approx(10.0 + 0.9 / 0.5).epsilon(1e-14));
  CHECK(std::isinf(queue_peak_age(0.3, 0.3)));
  CHECK(std::isinf(queue_peak_age(0.3, 0.2)));
  CHECK_THROWS_AS(queue_peak_age(0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(queue_peak_age(0.5, 1.1), std::domain_error);
}

TEST_CASE("w_term and v_term against Euler-integral oracles") {
  for (double alpha : {3.5, 4.5}) {
    for (double beta : {0.6, 1.0}) {
      const double d = 2.0 / alpha;
      const PhyParams phy = phy_lin(alpha, beta, 2.0);
      for (int m = 1; m <= 5; ++m) {
        CHECK(w_term(m, phy) ==
              doctest::Approx(oracle::hyp2f1_c_eq_b_plus_1(
                                  m, m - d, -(1.0 - beta) * 2.0))
                  .epsilon(1e-9));
        CHECK(v_term(m, phy) ==
              doctest::Approx(oracle::beta_integral(d, m - d)).epsilon(1e-9));
      }
    }
  }
  CHECK_THROWS_AS(w_term(0, phy_lin(4.5, 1.0, 1.0)), std::domain_error);
}

TEST_CASE("interference series coefficients match quadrature oracles") {
  for (double alpha : {3.5, 4.5}) {
    for (double beta : {0.6, 1.0}) {
      for (double theta : {0.3, 1.0, 3.0}) {
        for (double zeta : {0.02, 0.15}) {
          CAPTURE(alpha);
          CAPTURE(beta);
          CAPTURE(theta);
          CAPTURE(zeta);
          const auto s = interference_series(phy_lin(alpha, beta, theta),
                                             TrafficParams{zeta});
          REQUIRE(s.terms() >= 2);
          const int upto = std::min(s.terms(), 5);
          for (int n = 0; n < upto; ++n) {
            CHECK(s.gamma[n] ==
                  doctest::Approx(gamma_oracle(n, alpha, beta, theta, zeta))
                      .epsilon(1e-8));
            CHECK(s.eps[n] ==
                  doctest::Approx(eps_oracle(n, alpha, beta, theta, zeta))
                      .epsilon(1e-8));
          }
        }
      }
    }
  }
}

TEST_CASE("series truncation control") {
  const auto s =
      interference_series(phy_lin(4.5, 0.8, 0.5), TrafficParams{0.1});
  CHECK(s.terms() >= 2);
  CHECK_FALSE(s.diverged);
  const double last = s.gamma.back() + s.eps.back();
  CHECK(last <= 1e-12 * (s.g() + s.e()));

  SeriesControl loose;
  loose.rel_tol = 1e-6;
  const auto sl =
      interference_series(phy_lin(4.5, 0.8, 0.5), TrafficParams{0.1}, loose);
  CHECK(sl.terms() <= s.terms());
}

TEST_CASE("per-file peak age: denominator identity and feasibility edge") {
  const auto s = interference_series(phy_lin(4.5, 0.9, 0.8), TrafficParams{0.05});
  const double G = s.g(), E = s.e();
  const double qc = E / (1.0 - G + E);
  REQUIRE(qc < 1.0);
  for (double q : {qc + 0.02, 0.5 * (qc + 1.0), 1.0}) {
    if (q > 1.0) continue;
    const double direct = per_file_paoi_general(q, s);
    const double via_ge =
        1.0 / s.zeta + (1.0 - s.zeta) * q / (q * (1.0 - G + E) - E);
    CHECK(direct == doctest::Approx(via_ge).epsilon(1e-12));
  }
  CHECK(std::isinf(per_file_paoi_general(qc - 1e-6, s)));
  CHECK(std::isfinite(per_file_paoi_general(qc + 1e-4, s)));
  // peak age decreases with caching probability above the floor
  CHECK(per_file_paoi_general(qc + 0.1, s) > per_file_paoi_general(1.0, s));
}

TEST_CASE("mean_stp against radial-integral oracle") {
  for (double alpha : {3.5, 4.5}) {
    for (double beta : {0.5, 0.8, 1.0}) {
      for (double theta : {0.316, 1.0, 3.162}) {
        for (double q : {0.3, 1.0}) {
          CAPTURE(alpha);
          CAPTURE(beta);
          CAPTURE(theta);
          CAPTURE(q);
          CHECK(mean_stp(q, phy_lin(alpha, beta, theta)) ==
                doctest::Approx(stp_oracle(q, alpha, beta, theta))
                    .epsilon(1e-9));
        }
      }
    }
  }
  // The muting-scaled hypergeometric argument disagrees with the oracle
  // whenever beta < 1: it belongs to the peak-age series, not the STP.
  const double wrong = mean_stp(1.0, phy_lin(4.5, 0.5, 1.0), {},
                                StpArgVariant::muting_scaled);
  CHECK(std::abs(wrong / stp_oracle(1.0, 4.5, 0.5, 1.0) - 1.0) > 0.02);
  CHECK_THROWS_AS(mean_stp(0.0, phy_lin(4.5, 1.0, 1.0)), std::domain_error);
}

TEST_CASE("diagnostic variants") {
  const PhyParams phy = phy_lin(4.5, 0.7, 1.0);
  const TrafficParams tr{0.05};
  const auto base = interference_series(phy, tr);
  AnalyticVariant flip;
  flip.flip_interference_sign = true;
  const auto flipped = interference_series(phy, tr, {}, flip);
  // Mis-signed interference inflates the denominator: always feasible and
  // strictly below the correct value.
  const double v0 = per_file_paoi_general(1.0, base);
  const double v1 = per_file_paoi_general(1.0, flipped);
  CHECK(std::isfinite(v1));
  CHECK(v1 < v0);
  CHECK(per_file_paoi_general(0.01, flipped) <
        std::numeric_limits<double>::infinity());

  AnalyticVariant unw;
  unw.unscaled_w_argument = true;
  const auto unscaled = interference_series(phy, tr, {}, unw);
  // Larger |z| shrinks the (1 - zt)^{-m} kernel, so every W factor drops.
  CHECK(unscaled.gamma[0] < base.gamma[0]);
  CHECK(unscaled.eps[0] == doctest::Approx(base.eps[0]));
}

TEST_CASE("corollary tracks theorem well inside the stability region") {
  const PhyParams phy = phy_lin(4.5, 1.0, 0.01);
  const TrafficParams tr{0.01};
  const auto s = interference_series(phy, tr);
  // q stays above the (higher) stability floor of the two-term form.
  for (double q : {0.5, 0.75, 1.0}) {
    const double thm = per_file_paoi_general(q, s);
    const double cor = per_file_paoi_simplified(q, s);
    CHECK(std::abs(cor - thm) / thm < 0.01);
  }
}

TEST_CASE("weighted report and zero-probability files") {
  const PhyParams phy = phy_lin(4.5, 1.0, 0.05);
  const TrafficParams tr{0.05};
  const Catalog cat = make_catalog({0.5, 0.3, 0.2}, 1);
  const CachingPolicy pol{{0.6, 0.4, 0.0}, 1};
  const auto rep = paoi_theorem1(pol, cat, phy, tr);
  REQUIRE(rep.per_file_paoi.size() == 3);
  CHECK_FALSE(rep.per_file_feasible[2]);
  CHECK(std::isinf(rep.per_file_paoi[2]));
  // uncovered file contributes only the 1/zeta baseline
  const double expect = 1.0 / 0.05 +
                        0.5 * (rep.per_file_paoi[0] - 20.0) +
                        0.3 * (rep.per_file_paoi[1] - 20.0);
  CHECK(rep.weighted_paoi == doctest::Approx(expect).epsilon(1e-12));
  const double expect_cached =
      1.0 / 0.05 + (0.5 * (rep.per_file_paoi[0] - 20.0) +
                    0.3 * (rep.per_file_paoi[1] - 20.0)) /
                       0.8;
  CHECK(rep.weighted_paoi_cached ==
        doctest::Approx(expect_cached).epsilon(1e-12));
}

TEST_CASE("stability thresholds") {
  const PhyParams phy = phy_lin(4.5, 0.8, 0.6);
  const TrafficParams tr{0.05};
  const auto st = stability_thresholds(phy, tr, {}, 3, true);
  CHECK(st.critical_q.size() == 3);
  CHECK(st.critical_q[0] ==
        doctest::Approx(st.e_value / (1.0 - st.g_value + st.e_value)));
  REQUIRE(st.critical_theta.has_value());
  // At the critical threshold the fully cached file sits on G = 1.
  PhyParams at_c = phy;
  at_c.sinr_threshold = *st.critical_theta;
  const auto sc = interference_series(at_c, tr);
  CHECK(sc.g() == doctest::Approx(1.0).epsilon(1e-5));

  // The critical threshold shrinks as traffic grows.
  const auto st2 = stability_thresholds(phy, TrafficParams{0.2}, {}, 1, true);
  CHECK(*st2.critical_theta < *st.critical_theta);
}

TEST_CASE("divergence is detected and flagged") {
  // Far beyond the stability region the outer series grows without bound.
  const auto s =
      interference_series(phy_lin(3.5, 1.0, 30.0), TrafficParams{0.6});
  CHECK(s.diverged);
  CHECK(std::isinf(per_file_paoi_general(1.0, s)));
  CHECK_THROWS_AS(
      stability_thresholds(phy_lin(3.5, 1.0, 30.0), TrafficParams{0.6}),
      InfeasibleError);
}
