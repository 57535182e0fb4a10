#pragma once

#include <vector>

#include "paoi/analytic.hpp"
#include "paoi/model.hpp"

namespace paoi {

struct OptimizationResult {
  CachingPolicy policy;
  double multiplier = 0.0;        // capacity-constraint dual variable
  double objective = 0.0;         // weighted peak age at policy, slots
                                  // (full series for optimal_caching, the
                                  // solver's own form for the numeric path)
  std::vector<int> clamped_low;   // files pinned at the stability floor q^c
  std::vector<int> clamped_high;  // files pinned at 1
  int iterations = 0;
};

// Closed-form optimum: square-root water-filling
//   q_f(eta) = clamp(a * sqrt(p_f E / eta) + b, q^c, 1)
// with the multiplier bisected until the capacity constraint binds.
OptimizationResult optimal_caching(const Catalog& catalog, const PhyParams& phy,
                                   const TrafficParams& traffic,
                                   const SeriesControl& ctl = {});

enum class ObjectiveForm { theorem1, corollary1 };

// Independent cross-check: projected gradient descent of the analytic
// weighted peak age over {q^c <= q <= 1, sum q = C}, gradients by central
// finite differences. Authoritative when the two solvers disagree.
OptimizationResult numeric_optimal_caching(
    const Catalog& catalog, const PhyParams& phy, const TrafficParams& traffic,
    ObjectiveForm objective_choice = ObjectiveForm::corollary1,
    const SeriesControl& ctl = {});

// Cache the C most popular files deterministically.
CachingPolicy mpc_policy(const Catalog& catalog);

// Cache every file with probability C/F.
CachingPolicy uc_policy(const Catalog& catalog);

// Euclidean projection onto {lo_f <= q_f <= hi, sum q = budget} by bisecting
// the water level. Exposed for property tests.
std::vector<double> project_capped_simplex(std::vector<double> q,
                                           const std::vector<double>& lo,
                                           double hi, double budget);

}  // namespace paoi
