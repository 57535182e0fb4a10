#pragma once

#include <stdexcept>
#include <vector>

namespace paoi {

double dbm_to_watts(double dbm);
double db_to_linear(double db);

// Physical-layer configuration. All fields are linear units; use from_db()
// to construct from the dBm/dB values a config file carries.
struct PhyParams {
  double tx_power = 0.0;        // watts
  double bs_density = 0.0;      // BSs per unit area
  double pathloss_exp = 0.0;    // alpha, must exceed 2
  double active_prob = 0.0;     // beta, in (0, 1]
  double sinr_threshold = 0.0;  // theta, linear

  double delta() const { return 2.0 / pathloss_exp; }

  void validate() const;

  static PhyParams from_db(double tx_power_dbm, double bs_density,
                           double pathloss_exp, double active_prob,
                           double sinr_threshold_db);
};

struct TrafficParams {
  double arrival_rate = 0.0;  // zeta, probability per slot, in (0, 1)

  void validate() const;
};

// File universe with popularity distribution and per-BS cache capacity.
struct Catalog {
  int num_files = 0;
  std::vector<double> popularity;  // non-increasing, sums to 1
  int cache_size = 0;

  void validate() const;
};

Catalog make_catalog(std::vector<double> popularity, int cache_size);

// Per-file caching probabilities; 0 <= q_f <= 1 and sum q_f = C.
struct CachingPolicy {
  std::vector<double> probs;
  int cache_size = 0;
};

class PolicyError : public std::invalid_argument {
 public:
  enum class Kind { box, capacity };
  PolicyError(Kind kind, const std::string& msg)
      : std::invalid_argument(msg), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

CachingPolicy make_policy(std::vector<double> probs, int cache_size);

// Zipf popularity p_f = f^{-skew} / sum_j j^{-skew}.
std::vector<double> zipf_popularity(int num_files, double skew);

}  // namespace paoi
