#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "paoi/model.hpp"

namespace paoi {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// One spatial draw: BS positions, per-BS cache contents, and the
// content-conditioned serving BS (nearest among those caching the file;
// equal transmit powers make max average received power equal min distance).
struct SpatialRealization {
  std::vector<Point> bs_positions;
  std::vector<std::vector<int>> bs_cache;  // exactly C distinct files per BS
  std::vector<int> serving_bs;             // per file; -1 when no BS caches it
};

struct SimConfig {
  double region_radius = 0.0;     // meters
  int num_realizations = 0;
  int slots_per_realization = 0;
  int warmup_slots = 0;
  std::uint64_t rng_seed = 1;
  std::vector<int> track_files;   // empty = all files
  long queue_guard = 1000000;

  void validate(const PhyParams& phy) const;
};

struct Estimate {
  double mean = 0.0;
  double ci_half = 0.0;  // 95% normal interval across realizations
  long n = 0;            // pooled sample count
};

struct SimResult {
  std::vector<Estimate> per_file_stp;
  std::vector<Estimate> per_file_peak_age;   // slots; inf for unstable files
  std::vector<Estimate> per_file_mean_age;   // time-average AoI, slots
  std::vector<int> unstable_files;
  std::vector<long> sample_counts;           // peak-age samples per file
  std::vector<int> unstable_realizations;    // per file, diagnostics
};

// Per-trace sufficient statistics from one (realization, file) temporal run.
struct TraceStats {
  double peak_sum = 0.0;
  long peak_count = 0;
  double age_sum = 0.0;
  long age_slots = 0;
  long stp_success = 0;
  long stp_slots = 0;
  long arrivals = 0;
  long departures = 0;
  long queue_final = 0;
  bool unstable = false;
};

std::vector<Point> sample_ppp(double density, double radius,
                              std::mt19937_64& rng);

// Interval-partition placement: tile [0, C) with the caching probabilities,
// draw one uniform per BS, and pick the C files whose tiles contain
// u + k mod C. Exactly C distinct files with exact marginals q_f.
std::vector<std::vector<int>> assign_caches(const CachingPolicy& policy,
                                            int num_bs, std::mt19937_64& rng);

// Cache lists must be sorted (assign_caches guarantees this).
int associate(const std::vector<Point>& bs_positions,
              const std::vector<std::vector<int>>& bs_cache, int file);

SpatialRealization make_realization(const CachingPolicy& policy,
                                    const PhyParams& phy, double region_radius,
                                    std::mt19937_64& rng);

// Slot loop: Bernoulli(zeta) arrivals into a FIFO timestamp queue, per-slot
// Bernoulli(beta) muting for every BS, Rayleigh-faded SIR against the
// threshold. A delivery in slot t of the packet generated at slot g records
// the peak sample (t - g + 1) + (g - g_prev) and resets the age to t - g + 1.
// An independent per-slot probe (success iff the serving BS is active and
// its SIR clears the threshold, regardless of queue state) estimates the
// mean STP including the muting factor.
TraceStats run_temporal(const SpatialRealization& realization, int file,
                        const PhyParams& phy, const TrafficParams& traffic,
                        const SimConfig& config, std::mt19937_64& rng);

SimResult estimate(const CachingPolicy& policy, const Catalog& catalog,
                   const PhyParams& phy, const TrafficParams& traffic,
                   const SimConfig& config);

}  // namespace paoi
