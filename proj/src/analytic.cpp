#include "paoi/analytic.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace paoi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_binomial(int n, int k) {
  return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

}  // namespace

double InterferenceSeries::g() const {
  return std::accumulate(gamma.begin(), gamma.end(), 0.0);
}

double InterferenceSeries::e() const {
  return std::accumulate(eps.begin(), eps.end(), 0.0);
}

double queue_peak_age(double arrival_rate, double service_prob) {
  if (!(arrival_rate > 0.0) || !(arrival_rate < 1.0))
    throw std::domain_error("queue_peak_age: arrival_rate must lie in (0, 1)");
  if (!(service_prob > 0.0) || !(service_prob <= 1.0))
    throw std::domain_error("queue_peak_age: service_prob must lie in (0, 1]");
  if (service_prob <= arrival_rate) return kInf;
  return 1.0 / arrival_rate +
         (1.0 - arrival_rate) / (service_prob - arrival_rate);
}

double w_term(int m, const PhyParams& phy, const SeriesControl& ctl) {
  if (m < 1) throw std::domain_error("w_term: m must be >= 1");
  phy.validate();
  const double d = phy.delta();
  const double z = -(1.0 - phy.active_prob) * phy.sinr_threshold;
  return gauss_2f1(m, m - d, m - d + 1.0, z, ctl);
}

double v_term(int m, const PhyParams& phy) {
  if (m < 1) throw std::domain_error("v_term: m must be >= 1");
  phy.validate();
  const double d = phy.delta();
  return beta_fn(d, m - d);
}

double mean_stp(double q_f, const PhyParams& phy, const SeriesControl& ctl,
                StpArgVariant variant) {
  phy.validate();
  if (!(q_f > 0.0) || !(q_f <= 1.0))
    throw std::domain_error("mean_stp: q_f must lie in (0, 1]; q_f = 0 has no association");
  const double d = phy.delta();
  const double beta = phy.active_prob;
  const double theta = phy.sinr_threshold;
  const double z = variant == StpArgVariant::threshold
                       ? -theta
                       : -(1.0 - beta) * theta;
  const double rho_cached =
      d * beta * theta * gauss_2f1(1.0, 1.0 - d, 2.0 - d, z, ctl) / (1.0 - d);
  const double rho_uncached = d * beta * std::pow(theta, d) * beta_fn(d, 1.0 - d);
  return beta * q_f / (q_f * (1.0 + rho_cached) + (1.0 - q_f) * rho_uncached);
}

InterferenceSeries interference_series(const PhyParams& phy,
                                       const TrafficParams& traffic,
                                       const SeriesControl& ctl,
                                       const AnalyticVariant& variant) {
  phy.validate();
  traffic.validate();
  ctl.validate();

  const double d = phy.delta();
  const double beta = phy.active_prob;
  const double theta = phy.sinr_threshold;
  const double zeta = traffic.arrival_rate;
  const double sign = variant.flip_interference_sign ? -1.0 : 1.0;
  const double warg = variant.unscaled_w_argument ? -theta
                                                  : -(1.0 - beta) * theta;

  InterferenceSeries out;
  out.zeta = zeta;

  // Order-m factors, cached and extended as the outer series deepens.
  std::vector<double> log_w, log_v;
  auto ensure_order = [&](int m_max) {
    while (static_cast<int>(log_w.size()) < m_max) {
      const int m = static_cast<int>(log_w.size()) + 1;
      log_w.push_back(std::log(gauss_2f1(m, m - d, m - d + 1.0, warg, ctl)));
      log_v.push_back(std::log(beta_fn(d, m - d)));
    }
  };

  const double log_bt = std::log(beta * theta);
  const double log_b = std::log(beta);
  const double log_t = std::log(theta);
  const double log_d = std::log(d);

  double total = 0.0;
  double prev_term = kInf;
  int grew = 0;
  for (int n = 0; n < ctl.max_terms; ++n) {
    ensure_order(n + 1);
    // All summands are positive; evaluate in log space so intermediate
    // binomial growth cannot overflow before the zeta^n damping applies.
    const double lpre = log_d + n * std::log(zeta) - (n + 1) * log_b;
    double g_n = 0.0, e_n = 0.0;
    for (int m = 1; m <= n + 1; ++m) {
      const double lc = log_binomial(n + 1, m);
      g_n += std::exp(lpre + lc + m * log_bt + log_w[m - 1] -
                      std::log(m - d));
      e_n += std::exp(lpre + lc + m * log_b + d * log_t + log_v[m - 1]);
    }
    out.gamma.push_back(sign * g_n);
    out.eps.push_back(sign * e_n);
    const double term = g_n + e_n;
    total += term;

    if (term >= prev_term && n >= 2) {
      if (++grew >= 2) {
        out.diverged = true;
        return out;
      }
    } else {
      grew = 0;
    }
    if (n >= 1 && term <= ctl.rel_tol * total) return out;
    prev_term = term;
  }
  throw SeriesError("interference_series: outer series did not converge",
                    total, ctl.max_terms);
}

double per_file_paoi_general(double q, const InterferenceSeries& series) {
  if (series.diverged) return kInf;
  double interference = 0.0;
  for (int n = 0; n < series.terms(); ++n)
    interference += q * series.gamma[n] + (1.0 - q) * series.eps[n];
  const double den = q - interference;
  if (!(den > 0.0)) return kInf;
  const double zeta = series.zeta;
  return 1.0 / zeta + (1.0 - zeta) * q / den;
}

double per_file_paoi_simplified(double q, const InterferenceSeries& series) {
  if (series.terms() < 2)
    throw std::logic_error("per_file_paoi_simplified: series carries fewer than two orders");
  const double zeta = series.zeta;
  const double den1 = q - (q * series.gamma[0] + (1.0 - q) * series.eps[0]);
  const double den2 =
      q - (q * series.gamma[1] + (1.0 - q) * series.eps[1]) / zeta;
  if (!(den1 > 0.0) || !(den2 > 0.0)) return kInf;
  return 1.0 / zeta + (1.0 - zeta) * q / den1 +
         (1.0 - zeta) * zeta * q / den2;
}

namespace {

PaoiReport assemble_report(const CachingPolicy& policy, const Catalog& catalog,
                           const InterferenceSeries& series,
                           double (*per_file)(double, const InterferenceSeries&)) {
  catalog.validate();
  if (static_cast<int>(policy.probs.size()) != catalog.num_files)
    throw std::invalid_argument("policy size does not match catalog");

  PaoiReport rep;
  const double zeta = series.zeta;
  rep.truncation_terms_used = series.terms();
  rep.per_file_paoi.resize(catalog.num_files);
  rep.per_file_feasible.resize(catalog.num_files);

  double excess = 0.0;          // popularity-weighted sojourn beyond 1/zeta
  double cached_mass = 0.0;
  bool any_infeasible_cached = false;
  for (int f = 0; f < catalog.num_files; ++f) {
    const double q = policy.probs[f];
    if (q <= 0.0) {
      // Never delivered; contributes only the baseline to the weighted sum.
      rep.per_file_paoi[f] = kInf;
      rep.per_file_feasible[f] = false;
      continue;
    }
    const double a = per_file(q, series);
    rep.per_file_paoi[f] = a;
    rep.per_file_feasible[f] = std::isfinite(a);
    cached_mass += catalog.popularity[f];
    if (std::isfinite(a)) {
      excess += catalog.popularity[f] * (a - 1.0 / zeta);
    } else {
      any_infeasible_cached = true;
    }
  }
  if (any_infeasible_cached) {
    rep.weighted_paoi = kInf;
    rep.weighted_paoi_cached = kInf;
  } else {
    rep.weighted_paoi = 1.0 / zeta + excess;
    rep.weighted_paoi_cached =
        cached_mass > 0.0 ? 1.0 / zeta + excess / cached_mass : kInf;
  }
  return rep;
}

}  // namespace

PaoiReport paoi_theorem1(const CachingPolicy& policy, const Catalog& catalog,
                         const PhyParams& phy, const TrafficParams& traffic,
                         const SeriesControl& ctl, const AnalyticVariant& variant) {
  const InterferenceSeries series = interference_series(phy, traffic, ctl, variant);
  return assemble_report(policy, catalog, series, per_file_paoi_general);
}

PaoiReport paoi_corollary1(const CachingPolicy& policy, const Catalog& catalog,
                           const PhyParams& phy, const TrafficParams& traffic,
                           const SeriesControl& ctl) {
  const InterferenceSeries series = interference_series(phy, traffic, ctl);
  return assemble_report(policy, catalog, series, per_file_paoi_simplified);
}

StabilityThresholds stability_thresholds(const PhyParams& phy,
                                         const TrafficParams& traffic,
                                         const SeriesControl& ctl,
                                         int num_files,
                                         bool want_critical_theta) {
  if (num_files < 1)
    throw std::invalid_argument("stability_thresholds: num_files must be >= 1");
  const InterferenceSeries series = interference_series(phy, traffic, ctl);
  if (series.diverged)
    throw InfeasibleError("stability_thresholds: interference series diverges");
  StabilityThresholds out;
  out.g_value = series.g();
  out.e_value = series.e();
  const double den = 1.0 - out.g_value + out.e_value;
  if (!(den > 0.0))
    throw InfeasibleError("stability_thresholds: no caching probability achieves stability");
  out.critical_q.assign(num_files, out.e_value / den);

  if (want_critical_theta) {
    // The fully cached file (q = 1) is stable iff G(theta) < 1; bisect the
    // crossing. Slow series convergence far past the boundary counts as
    // unstable.
    auto stable_at = [&](double theta) {
      PhyParams p = phy;
      p.sinr_threshold = theta;
      try {
        const InterferenceSeries s = interference_series(p, traffic, ctl);
        return !s.diverged && s.g() < 1.0;
      } catch (const SeriesError&) {
        return false;
      }
    };
    double lo = 1e-12;
    if (!stable_at(lo)) {
      out.critical_theta = lo;
      return out;
    }
    double hi = 1.0;
    while (stable_at(hi)) {
      hi *= 2.0;
      if (hi > 1e9)
        throw std::runtime_error("stability_thresholds: no finite critical threshold found");
    }
    while (hi - lo > 1e-7 * std::max(1.0, lo)) {
      const double mid = 0.5 * (lo + hi);
      (stable_at(mid) ? lo : hi) = mid;
    }
    out.critical_theta = 0.5 * (lo + hi);
  }
  return out;
}

}  // namespace paoi
