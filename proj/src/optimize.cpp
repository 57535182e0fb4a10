#include "paoi/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace paoi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp(double v, double lo, double hi) {
  return std::min(std::max(v, lo), hi);
}

// Spread the residual capacity over coordinates strictly between their
// bounds so the policy sums to C exactly, not just to bisection tolerance.
void exact_sum_fixup(std::vector<double>& q, const std::vector<double>& lo,
                     double hi, double budget) {
  const double sum = std::accumulate(q.begin(), q.end(), 0.0);
  const double residual = budget - sum;
  if (residual == 0.0) return;
  std::vector<std::size_t> interior;
  for (std::size_t f = 0; f < q.size(); ++f) {
    if (q[f] > lo[f] + 1e-12 && q[f] < hi - 1e-12) interior.push_back(f);
  }
  if (interior.empty()) return;
  const double shift = residual / static_cast<double>(interior.size());
  for (std::size_t f : interior) q[f] = clamp(q[f] + shift, lo[f], hi);
}

struct Stability {
  InterferenceSeries series;
  double g = 0.0, e = 0.0, qc = 0.0;
};

Stability stable_setup(const Catalog& catalog, const PhyParams& phy,
                       const TrafficParams& traffic, const SeriesControl& ctl) {
  catalog.validate();
  Stability s;
  s.series = interference_series(phy, traffic, ctl);
  if (s.series.diverged)
    throw InfeasibleError("optimal caching: interference series diverges; no stable policy");
  s.g = s.series.g();
  s.e = s.series.e();
  const double den = 1.0 - s.g + s.e;
  if (!(den > 0.0))
    throw InfeasibleError("optimal caching: 1 - G + E <= 0; no caching probability is stable");
  s.qc = s.e / den;
  if (catalog.num_files * s.qc > catalog.cache_size + 1e-12)
    throw InfeasibleError(
        "optimal caching: capacity constraint infeasible, F * q^c = " +
        std::to_string(catalog.num_files * s.qc) + " exceeds C = " +
        std::to_string(catalog.cache_size));
  return s;
}

}  // namespace

std::vector<double> project_capped_simplex(std::vector<double> q,
                                           const std::vector<double>& lo,
                                           double hi, double budget) {
  if (q.size() != lo.size())
    throw std::invalid_argument("project_capped_simplex: size mismatch");
  double lo_sum = 0.0;
  for (std::size_t f = 0; f < q.size(); ++f) {
    if (lo[f] > hi)
      throw std::invalid_argument("project_capped_simplex: empty box");
    lo_sum += lo[f];
  }
  if (budget < lo_sum - 1e-9 || budget > hi * static_cast<double>(q.size()) + 1e-9)
    throw std::invalid_argument("project_capped_simplex: budget outside the box");

  auto sum_at = [&](double tau) {
    double s = 0.0;
    for (std::size_t f = 0; f < q.size(); ++f)
      s += clamp(q[f] - tau, lo[f], hi);
    return s;
  };
  double tlo = *std::max_element(q.begin(), q.end()) - *std::min_element(lo.begin(), lo.end());
  double thi = tlo;
  tlo = -(hi - *std::min_element(q.begin(), q.end())) - 1.0;
  thi += 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (tlo + thi);
    (sum_at(mid) > budget ? tlo : thi) = mid;
  }
  const double tau = 0.5 * (tlo + thi);
  for (std::size_t f = 0; f < q.size(); ++f) q[f] = clamp(q[f] - tau, lo[f], hi);
  exact_sum_fixup(q, lo, hi, budget);
  return q;
}

OptimizationResult optimal_caching(const Catalog& catalog, const PhyParams& phy,
                                   const TrafficParams& traffic,
                                   const SeriesControl& ctl) {
  const Stability st = stable_setup(catalog, phy, traffic, ctl);
  const double zeta = traffic.arrival_rate;
  const double beta = phy.active_prob;
  const double den = 1.0 - st.g + st.e;
  const double a = (1.0 - zeta) / (beta * den);
  const double b = (1.0 - zeta) * st.e / (beta * den);
  const int F = catalog.num_files;
  const double C = catalog.cache_size;

  auto fill = [&](double eta, std::vector<double>& q) {
    double s = 0.0;
    for (int f = 0; f < F; ++f) {
      q[f] = clamp(a * std::sqrt(catalog.popularity[f] * st.e / eta) + b,
                   st.qc, 1.0);
      s += q[f];
    }
    return s;
  };

  std::vector<double> q(F);
  double root_mass = 0.0;
  for (int f = 0; f < F; ++f)
    root_mass += std::sqrt(catalog.popularity[f] * st.e);
  double eta_lo = 1e-12;
  if (b < 1.0) {
    const double r = a * root_mass / (F * (1.0 - b));
    if (r > 0.0) eta_lo = r * r;
  }
  while (fill(eta_lo, q) < C - 1e-10) {
    eta_lo *= 0.25;
    if (eta_lo < 1e-300)
      throw std::runtime_error("optimal_caching: multiplier bracket failure (low side)");
  }
  double s_lo = fill(eta_lo, q);
  double eta = eta_lo, s = s_lo;
  int iterations = 0;
  if (std::abs(s_lo - C) > 1e-10) {
    double eta_hi = std::max(2.0 * eta_lo, 1.0);
    while (fill(eta_hi, q) > C + 1e-10) {
      eta_hi *= 2.0;
      if (eta_hi > 1e300)
        throw std::runtime_error("optimal_caching: multiplier bracket failure (high side)");
    }
    double s_hi = fill(eta_hi, q);
    for (;;) {
      ++iterations;
      eta = 0.5 * (eta_lo + eta_hi);
      s = fill(eta, q);
      if (s > s_lo + 1e-9 || s < s_hi - 1e-9)
        throw std::runtime_error("optimal_caching: capacity sum not monotone in the multiplier");
      if (std::abs(s - C) <= 1e-10) break;
      if (s > C) {
        eta_lo = eta;
        s_lo = s;
      } else {
        eta_hi = eta;
        s_hi = s;
      }
      if ((eta_hi - eta_lo) <= 1e-16 * eta_hi || iterations > 5000)
        throw std::runtime_error("optimal_caching: multiplier bisection stalled, |sum - C| = " +
                                 std::to_string(std::abs(s - C)));
    }
  }

  OptimizationResult out;
  out.multiplier = eta;
  out.iterations = iterations;
  const std::vector<double> lo(F, st.qc);
  for (int f = 0; f < F; ++f) {
    if (q[f] <= st.qc + 1e-12) out.clamped_low.push_back(f);
    if (q[f] >= 1.0 - 1e-12) out.clamped_high.push_back(f);
  }
  exact_sum_fixup(q, lo, 1.0, C);
  out.policy = make_policy(q, catalog.cache_size);
  // Report the full-series value: the truncated form steering the solver
  // can be infinite for lightly cached files even when the network is fine.
  out.objective =
      paoi_theorem1(out.policy, catalog, phy, traffic, ctl).weighted_paoi;
  return out;
}

OptimizationResult numeric_optimal_caching(const Catalog& catalog,
                                           const PhyParams& phy,
                                           const TrafficParams& traffic,
                                           ObjectiveForm objective_choice,
                                           const SeriesControl& ctl) {
  const Stability st = stable_setup(catalog, phy, traffic, ctl);
  const int F = catalog.num_files;
  const double C = catalog.cache_size;
  const double zeta = traffic.arrival_rate;
  double (*per_file)(double, const InterferenceSeries&) =
      objective_choice == ObjectiveForm::theorem1 ? per_file_paoi_general
                                                  : per_file_paoi_simplified;

  auto objective = [&](const std::vector<double>& q) {
    double excess = 0.0;
    for (int f = 0; f < F; ++f) {
      const double a = per_file(q[f], st.series);
      if (!std::isfinite(a)) return kInf;
      excess += catalog.popularity[f] * (a - 1.0 / zeta);
    }
    return 1.0 / zeta + excess;
  };
  // The objective is separable, so each partial derivative needs only the
  // file's own term.
  auto partial = [&](double qf, double pf) {
    const double h = 1e-6 * std::max(std::abs(qf), 1.0);
    const double up = per_file(qf + h, st.series);
    const double down = qf - h > st.qc ? per_file(qf - h, st.series)
                                       : per_file(qf, st.series);
    const double step = qf - h > st.qc ? 2.0 * h : h;
    return pf * (up - down) / step;
  };

  const std::vector<double> lo(F, st.qc);
  std::vector<double> q =
      project_capped_simplex(std::vector<double>(F, C / F), lo, 1.0, C);
  std::vector<double> grad(F), trial(F), pg(F);
  double fval = objective(q);
  double step = 1.0;
  int it = 0;
  for (; it < 100000; ++it) {
    for (int f = 0; f < F; ++f)
      grad[f] = partial(q[f], catalog.popularity[f]);

    for (int f = 0; f < F; ++f) trial[f] = q[f] - grad[f];
    pg = project_capped_simplex(trial, lo, 1.0, C);
    double pg_norm = 0.0;
    for (int f = 0; f < F; ++f) pg_norm += (q[f] - pg[f]) * (q[f] - pg[f]);
    if (std::sqrt(pg_norm) < 1e-8) break;

    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (int f = 0; f < F; ++f) trial[f] = q[f] - step * grad[f];
      trial = project_capped_simplex(trial, lo, 1.0, C);
      const double ftrial = objective(trial);
      double model = fval;
      double dist2 = 0.0;
      for (int f = 0; f < F; ++f) {
        model += grad[f] * (trial[f] - q[f]);
        dist2 += (trial[f] - q[f]) * (trial[f] - q[f]);
      }
      if (std::isfinite(ftrial) && ftrial <= model + 0.5 / step * dist2) {
        q.swap(trial);
        fval = ftrial;
        accepted = true;
        step *= 2.0;
        break;
      }
      step *= 0.5;
    }
    if (!accepted)
      throw std::runtime_error(
          "numeric_optimal_caching: line search failed at iteration " +
          std::to_string(it) + ", objective " + std::to_string(fval));
  }
  if (it >= 100000)
    throw std::runtime_error(
        "numeric_optimal_caching: no convergence in 100000 iterations, "
        "objective " + std::to_string(fval));

  OptimizationResult out;
  out.iterations = it;
  double dual = 0.0;
  int interior = 0;
  for (int f = 0; f < F; ++f) {
    if (q[f] <= st.qc + 1e-9) {
      out.clamped_low.push_back(f);
    } else if (q[f] >= 1.0 - 1e-9) {
      out.clamped_high.push_back(f);
    } else {
      dual -= partial(q[f], catalog.popularity[f]);
      ++interior;
    }
  }
  out.multiplier = interior > 0 ? dual / interior : 0.0;
  exact_sum_fixup(q, lo, 1.0, C);
  out.policy = make_policy(q, catalog.cache_size);
  out.objective = objective(out.policy.probs);
  return out;
}

CachingPolicy mpc_policy(const Catalog& catalog) {
  catalog.validate();
  std::vector<double> q(catalog.num_files, 0.0);
  std::fill(q.begin(), q.begin() + catalog.cache_size, 1.0);
  return make_policy(std::move(q), catalog.cache_size);
}

CachingPolicy uc_policy(const Catalog& catalog) {
  catalog.validate();
  std::vector<double> q(catalog.num_files,
                        static_cast<double>(catalog.cache_size) /
                            catalog.num_files);
  return make_policy(std::move(q), catalog.cache_size);
}

}  // namespace paoi
