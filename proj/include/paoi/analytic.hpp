#pragma once

#include <optional>
#include <span>
#include <vector>

#include "paoi/model.hpp"
#include "paoi/specialfn.hpp"

namespace paoi {

// Configuration that cannot reach a finite peak age (or an optimizer
// constraint set that is empty).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Diagnostic variants of the closed-form engine, used by the validation
// harness as negative controls. Production code leaves both flags off.
struct AnalyticVariant {
  // Flip the sign of the interference contribution in the radial integral
  // denominator (q + terms instead of q - terms).
  bool flip_interference_sign = false;
  // Drop the muting scale from the hypergeometric argument of the
  // interference series (use -theta instead of -(1-beta)*theta).
  bool unscaled_w_argument = false;
};

// Coefficients of the arrival-rate expansion of the spatially averaged
// peak-age denominator. For caching probability q the denominator is
//   D(q) = q - sum_n [ q * gamma[n] + (1 - q) * eps[n] ]
// where gamma[n] collects the interference of stations caching the file and
// eps[n] the interference of the remaining stations; the zeta^n factor is
// folded into the coefficients. G = sum gamma, E = sum eps are the
// stability functions, so D(q) = q (1 - G + E) - E.
struct InterferenceSeries {
  std::vector<double> gamma;
  std::vector<double> eps;
  double zeta = 0.0;
  bool diverged = false;

  int terms() const { return static_cast<int>(gamma.size()); }
  double g() const;
  double e() const;
};

InterferenceSeries interference_series(const PhyParams& phy,
                                       const TrafficParams& traffic,
                                       const SeriesControl& ctl = {},
                                       const AnalyticVariant& variant = {});

struct PaoiReport {
  std::vector<double> per_file_paoi;      // slots, +inf when infeasible
  std::vector<bool> per_file_feasible;
  double weighted_paoi = 0.0;             // zero-probability files add only 1/zeta
  double weighted_paoi_cached = 0.0;      // renormalized over files with q_f > 0
  int truncation_terms_used = 0;
};

struct StabilityThresholds {
  double g_value = 0.0;
  double e_value = 0.0;
  std::vector<double> critical_q;          // identical entries, one per file
  std::optional<double> critical_theta;    // linear SINR
};

// Mean peak age of a discrete-time queue with Bernoulli arrivals and
// per-slot service success probability: 1/zeta + (1-zeta)/(mu-zeta), or
// +inf at or below the stability boundary.
double queue_peak_age(double arrival_rate, double service_prob);

// Hypergeometric factor of order m of the interference series:
// 2F1(m, m-delta; m-delta+1; -(1-beta)*theta).
double w_term(int m, const PhyParams& phy, const SeriesControl& ctl = {});

// Beta factor of order m: B(delta, m-delta).
double v_term(int m, const PhyParams& phy);

// Argument convention of the hypergeometric factor inside the mean STP.
// The Laplace-functional average produces -theta; the muting-scaled variant
// is kept as a negative control for the simulation arbitration.
enum class StpArgVariant { threshold, muting_scaled };

// Spatially averaged successful transmission probability for a file cached
// with probability q_f: beta times the distance-averaged product of the two
// interference Laplace transforms. Independent of density and power.
double mean_stp(double q_f, const PhyParams& phy, const SeriesControl& ctl = {},
                StpArgVariant variant = StpArgVariant::threshold);

// Per-file peak age from precomputed series coefficients; +inf when the
// denominator is non-positive or the series diverged. Requires q > 0.
double per_file_paoi_general(double q, const InterferenceSeries& series);

// Two-term (arrival-rate first order) closed form; requires series to carry
// at least two coefficients.
double per_file_paoi_simplified(double q, const InterferenceSeries& series);

PaoiReport paoi_theorem1(const CachingPolicy& policy, const Catalog& catalog,
                         const PhyParams& phy, const TrafficParams& traffic,
                         const SeriesControl& ctl = {},
                         const AnalyticVariant& variant = {});

PaoiReport paoi_corollary1(const CachingPolicy& policy, const Catalog& catalog,
                           const PhyParams& phy, const TrafficParams& traffic,
                           const SeriesControl& ctl = {});

StabilityThresholds stability_thresholds(const PhyParams& phy,
                                         const TrafficParams& traffic,
                                         const SeriesControl& ctl = {},
                                         int num_files = 1,
                                         bool want_critical_theta = false);

}  // namespace paoi
