#include "paoi/model.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace paoi {

double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

void PhyParams::validate() const {
  if (!(pathloss_exp > 2.0))
    throw std::invalid_argument("PhyParams.pathloss_exp must exceed 2");
  if (!(active_prob > 0.0) || !(active_prob <= 1.0))
    throw std::invalid_argument("PhyParams.active_prob must lie in (0, 1]");
  if (!(bs_density > 0.0))
    throw std::invalid_argument("PhyParams.bs_density must be positive");
  if (!(sinr_threshold > 0.0))
    throw std::invalid_argument("PhyParams.sinr_threshold must be positive");
  if (!(tx_power > 0.0))
    throw std::invalid_argument("PhyParams.tx_power must be positive");
}

PhyParams PhyParams::from_db(double tx_power_dbm, double bs_density,
                             double pathloss_exp, double active_prob,
                             double sinr_threshold_db) {
  PhyParams p;
  p.tx_power = dbm_to_watts(tx_power_dbm);
  p.bs_density = bs_density;
  p.pathloss_exp = pathloss_exp;
  p.active_prob = active_prob;
  p.sinr_threshold = db_to_linear(sinr_threshold_db);
  p.validate();
  return p;
}

void TrafficParams::validate() const {
  if (!(arrival_rate > 0.0) || !(arrival_rate < 1.0))
    throw std::invalid_argument("TrafficParams.arrival_rate must lie in (0, 1)");
}

void Catalog::validate() const {
  if (num_files < 1 || static_cast<int>(popularity.size()) != num_files)
    throw std::invalid_argument("Catalog.popularity size must equal num_files >= 1");
  if (cache_size < 1 || cache_size > num_files)
    throw std::invalid_argument("Catalog.cache_size must lie in [1, num_files]");
  double sum = 0.0;
  for (std::size_t f = 0; f < popularity.size(); ++f) {
    if (!(popularity[f] >= 0.0))
      throw std::invalid_argument("Catalog.popularity must be non-negative");
    if (f > 0 && popularity[f] > popularity[f - 1] + 1e-15)
      throw std::invalid_argument("Catalog.popularity must be non-increasing");
    sum += popularity[f];
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("Catalog.popularity must sum to 1 within 1e-12");
}

Catalog make_catalog(std::vector<double> popularity, int cache_size) {
  Catalog c;
  c.num_files = static_cast<int>(popularity.size());
  c.popularity = std::move(popularity);
  c.cache_size = cache_size;
  c.validate();
  return c;
}

CachingPolicy make_policy(std::vector<double> probs, int cache_size) {
  double sum = 0.0;
  for (std::size_t f = 0; f < probs.size(); ++f) {
    if (!(probs[f] >= 0.0) || !(probs[f] <= 1.0))
      throw PolicyError(PolicyError::Kind::box,
                        "caching probability out of [0,1] at file " + std::to_string(f));
    sum += probs[f];
  }
  if (std::abs(sum - cache_size) > 1e-9)
    throw PolicyError(PolicyError::Kind::capacity,
                      "caching probabilities sum to " + std::to_string(sum) +
                          ", capacity is " + std::to_string(cache_size));
  return CachingPolicy{std::move(probs), cache_size};
}

std::vector<double> zipf_popularity(int num_files, double skew) {
  if (num_files < 1) throw std::domain_error("zipf_popularity: num_files must be >= 1");
  if (!(skew >= 0.0)) throw std::domain_error("zipf_popularity: skew must be non-negative");
  std::vector<double> p(num_files);
  double norm = 0.0;
  for (int f = 0; f < num_files; ++f) {
    p[f] = std::pow(static_cast<double>(f + 1), -skew);
    norm += p[f];
  }
  for (double& v : p) v /= norm;
  return p;
}

}  // namespace paoi
