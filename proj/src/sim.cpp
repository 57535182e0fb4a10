#include "paoi/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "paoi/kernels.hpp"
#include "paoi/util.hpp"

namespace paoi {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Uniform on the open interval (0, 1); the half-ulp offset keeps log() of a
// draw finite.
inline double u01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

void SimConfig::validate(const PhyParams& phy) const {
  phy.validate();
  if (!(region_radius > 0.0))
    throw std::invalid_argument("SimConfig.region_radius must be positive");
  const double expected = phy.bs_density * kPi * region_radius * region_radius;
  if (expected < 100.0)
    throw std::invalid_argument(
        "SimConfig.region_radius too small: expected BS count " +
        std::to_string(expected) + " < 100");
  if (num_realizations < 1)
    throw std::invalid_argument("SimConfig.num_realizations must be >= 1");
  if (slots_per_realization < 1)
    throw std::invalid_argument("SimConfig.slots_per_realization must be >= 1");
  if (warmup_slots < 0 || warmup_slots >= slots_per_realization)
    throw std::invalid_argument(
        "SimConfig.warmup_slots must lie in [0, slots_per_realization)");
  if (queue_guard < 1)
    throw std::invalid_argument("SimConfig.queue_guard must be >= 1");
}

std::vector<Point> sample_ppp(double density, double radius,
                              std::mt19937_64& rng) {
  if (!(density > 0.0) || !(radius > 0.0))
    throw std::invalid_argument("sample_ppp: density and radius must be positive");
  std::poisson_distribution<int> count(density * kPi * radius * radius);
  const int n = count(rng);
  std::vector<Point> pts(n);
  for (int i = 0; i < n; ++i) {
    const double r = radius * std::sqrt(u01(rng));
    const double phi = 2.0 * kPi * u01(rng);
    pts[i] = {r * std::cos(phi), r * std::sin(phi)};
  }
  return pts;
}

std::vector<std::vector<int>> assign_caches(const CachingPolicy& policy,
                                            int num_bs, std::mt19937_64& rng) {
  const int F = static_cast<int>(policy.probs.size());
  const int C = policy.cache_size;
  std::vector<double> cum(F + 1, 0.0);
  for (int f = 0; f < F; ++f) cum[f + 1] = cum[f] + policy.probs[f];
  cum[F] = static_cast<double>(C);  // absorb rounding at the last edge

  std::vector<std::vector<int>> caches(num_bs);
  for (int b = 0; b < num_bs; ++b) {
    const double u = u01(rng);
    auto& cache = caches[b];
    cache.reserve(C);
    for (int k = 0; k < C; ++k) {
      const double p = u + k;  // in [0, C); every tile has length <= 1
      const int f = static_cast<int>(
          std::upper_bound(cum.begin(), cum.end(), p) - cum.begin() - 1);
      cache.push_back(std::min(f, F - 1));
    }
    std::sort(cache.begin(), cache.end());
  }
  return caches;
}

int associate(const std::vector<Point>& bs_positions,
              const std::vector<std::vector<int>>& bs_cache, int file) {
  int best = -1;
  double best_d2 = kInf;
  for (std::size_t b = 0; b < bs_positions.size(); ++b) {
    if (!std::binary_search(bs_cache[b].begin(), bs_cache[b].end(), file))
      continue;
    const double d2 = bs_positions[b].x * bs_positions[b].x +
                      bs_positions[b].y * bs_positions[b].y;
    if (d2 < best_d2) {
      best_d2 = d2;
      best = static_cast<int>(b);
    }
  }
  return best;
}

SpatialRealization make_realization(const CachingPolicy& policy,
                                    const PhyParams& phy, double region_radius,
                                    std::mt19937_64& rng) {
  SpatialRealization real;
  real.bs_positions = sample_ppp(phy.bs_density, region_radius, rng);
  real.bs_cache = assign_caches(policy,
                                static_cast<int>(real.bs_positions.size()), rng);
  const int F = static_cast<int>(policy.probs.size());
  real.serving_bs.resize(F);
  for (int f = 0; f < F; ++f)
    real.serving_bs[f] = associate(real.bs_positions, real.bs_cache, f);
  return real;
}

TraceStats run_temporal(const SpatialRealization& realization, int file,
                        const PhyParams& phy, const TrafficParams& traffic,
                        const SimConfig& config, std::mt19937_64& rng) {
  const int serving = realization.serving_bs[file];
  if (serving < 0)
    throw std::logic_error("run_temporal: no serving BS for the file");

  const double alpha = phy.pathloss_exp;
  const double beta = phy.active_prob;
  const double theta = phy.sinr_threshold;
  const double zeta = traffic.arrival_rate;
  const Point sp = realization.bs_positions[serving];
  const double r2 = sp.x * sp.x + sp.y * sp.y;
  // Transmit power cancels in the SIR; weights are plain pathloss factors.
  const double serving_weight = std::pow(std::max(r2, 1e-12), -alpha / 2.0);

  std::vector<double> weights;
  weights.reserve(realization.bs_positions.size());
  for (std::size_t b = 0; b < realization.bs_positions.size(); ++b) {
    if (static_cast<int>(b) == serving) continue;
    const Point p = realization.bs_positions[b];
    weights.push_back(std::pow(p.x * p.x + p.y * p.y, -alpha / 2.0));
  }
  const std::size_t n_int = weights.size();
  std::vector<double> uniforms(n_int);

  TraceStats st;
  std::deque<long> queue;
  long prev_gen = -1;  // generation slot of the previously delivered packet
  long age = 0;

  for (int t = 0; t < config.slots_per_realization; ++t) {
    if (u01(rng) < zeta) {
      queue.push_back(t);
      ++st.arrivals;
      if (static_cast<long>(queue.size()) > config.queue_guard) {
        st.unstable = true;
        break;
      }
    }

    const double us = u01(rng);
    for (std::size_t i = 0; i < n_int; ++i) uniforms[i] = u01(rng);
    bool success = false;
    if (us < beta) {
      const double h0 = -std::log(us / beta);
      const double interference =
          kernels::interference_sum(weights.data(), uniforms.data(), n_int, beta);
      success = h0 * serving_weight > theta * interference;
    }
    if (t >= config.warmup_slots) {
      ++st.stp_slots;
      if (success) ++st.stp_success;
    }

    if (success && !queue.empty()) {
      const long gen = queue.front();
      queue.pop_front();
      ++st.departures;
      age = t - gen + 1;
      if (t >= config.warmup_slots && prev_gen >= 0) {
        st.peak_sum += static_cast<double>(age + (gen - prev_gen));
        ++st.peak_count;
      }
      prev_gen = gen;
    } else {
      ++age;
    }
    if (t >= config.warmup_slots) {
      st.age_sum += static_cast<double>(age);
      ++st.age_slots;
    }
  }
  st.queue_final = static_cast<long>(queue.size());
  return st;
}

SimResult estimate(const CachingPolicy& policy, const Catalog& catalog,
                   const PhyParams& phy, const TrafficParams& traffic,
                   const SimConfig& config) {
  catalog.validate();
  traffic.validate();
  config.validate(phy);
  if (static_cast<int>(policy.probs.size()) != catalog.num_files)
    throw std::invalid_argument("estimate: policy size does not match catalog");

  std::vector<int> tracked = config.track_files;
  if (tracked.empty()) {
    tracked.resize(catalog.num_files);
    std::iota(tracked.begin(), tracked.end(), 0);
  }
  for (int f : tracked) {
    if (f < 0 || f >= catalog.num_files)
      throw std::invalid_argument("estimate: tracked file index out of range");
  }

  const int R = config.num_realizations;
  const int T = static_cast<int>(tracked.size());
  std::vector<std::vector<TraceStats>> stats(R, std::vector<TraceStats>(T));
  std::vector<std::vector<char>> served(R, std::vector<char>(T, 0));

  parallel_for(static_cast<std::size_t>(R), [&](std::size_t r) {
    const std::uint64_t real_seed = child_seed(config.rng_seed, r);
    std::mt19937_64 spatial_rng(child_seed(real_seed, 0));
    const SpatialRealization real =
        make_realization(policy, phy, config.region_radius, spatial_rng);
    for (int i = 0; i < T; ++i) {
      const int f = tracked[i];
      std::mt19937_64 trace_rng(child_seed(real_seed, 1 + f));
      if (real.serving_bs[f] < 0) {
        // No coverage for this file: the STP probe fails every slot.
        stats[r][i].stp_slots =
            config.slots_per_realization - config.warmup_slots;
        continue;
      }
      served[r][i] = 1;
      stats[r][i] = run_temporal(real, f, phy, traffic, config, trace_rng);
      const TraceStats& st = stats[r][i];
      if (!st.unstable && st.arrivals != st.departures + st.queue_final)
        throw std::logic_error("estimate: packet conservation violated");
    }
  });

  SimResult out;
  const int F = catalog.num_files;
  out.per_file_stp.resize(F);
  out.per_file_peak_age.resize(F);
  out.per_file_mean_age.resize(F);
  out.sample_counts.assign(F, 0);
  out.unstable_realizations.assign(F, 0);

  auto summarize = [](const std::vector<double>& means, long pooled) {
    Estimate e;
    e.n = pooled;
    const int k = static_cast<int>(means.size());
    if (k == 0) return e;
    e.mean = std::accumulate(means.begin(), means.end(), 0.0) / k;
    if (k >= 2) {
      double ss = 0.0;
      for (double m : means) ss += (m - e.mean) * (m - e.mean);
      e.ci_half = 1.96 * std::sqrt(ss / (k - 1)) / std::sqrt(static_cast<double>(k));
    }
    return e;
  };

  int files_with_estimates = 0;
  for (int i = 0; i < T; ++i) {
    const int f = tracked[i];
    std::vector<double> stp_means, peak_means, age_means;
    long stp_n = 0, peak_n = 0, age_n = 0;
    int unstable = 0;
    for (int r = 0; r < R; ++r) {
      const TraceStats& st = stats[r][i];
      if (st.stp_slots > 0) {
        stp_means.push_back(static_cast<double>(st.stp_success) / st.stp_slots);
        stp_n += st.stp_slots;
      }
      if (st.unstable) {
        ++unstable;
        continue;
      }
      if (st.peak_count > 0) {
        peak_means.push_back(st.peak_sum / st.peak_count);
        peak_n += st.peak_count;
      }
      if (served[r][i] && st.age_slots > 0) {
        age_means.push_back(st.age_sum / st.age_slots);
        age_n += st.age_slots;
      }
    }
    out.per_file_stp[f] = summarize(stp_means, stp_n);
    out.unstable_realizations[f] = unstable;
    if (unstable > 0) {
      out.unstable_files.push_back(f);
      out.per_file_peak_age[f] = Estimate{kInf, 0.0, 0};
      out.per_file_mean_age[f] = Estimate{kInf, 0.0, 0};
    } else {
      out.per_file_peak_age[f] = summarize(peak_means, peak_n);
      out.per_file_mean_age[f] = summarize(age_means, age_n);
      out.sample_counts[f] = peak_n;
      if (peak_n > 0) ++files_with_estimates;
    }
  }
  if (files_with_estimates == 0 && !out.unstable_files.empty())
    throw std::runtime_error("estimate: every tracked file was unstable");
  return out;
}

}  // namespace paoi
