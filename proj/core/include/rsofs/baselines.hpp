#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rsofs/data.hpp"
#include "rsofs/fitness.hpp"
#include "rsofs/optimizer.hpp"

namespace rsofs {

/// Samples `budget` uniform nonempty masks and keeps the best.
SearchRun run_random_search(std::size_t n_features, std::size_t budget,
                            std::uint64_t seed, const FitnessOracle& fitness);

OptimizerResult run_random_baseline(const SplitDataset& data,
                                    std::size_t budget, std::uint64_t seed,
                                    std::size_t knn_k, double feature_weight);

struct BPSOParams {
  std::size_t swarm_size = 8;
  double inertia = 0.7;
  double cognitive = 1.5;
  double social = 1.5;
  double v_max = 4.0;
  /// Fitness calls, cache hits included.
  std::size_t budget = 881;
  std::uint64_t seed = 42;
};

struct SwarmRun {
  SearchRun run;
  /// Final particle velocities.
  std::vector<std::vector<double>> velocities;
};

/// Binary PSO: v <- w v + c1 r1 (pbest - x) + c2 r2 (gbest - x), clamped to
/// [-v_max, v_max]; each bit is then resampled as 1 with probability
/// sigmoid(v). Velocities start at 0.
SwarmRun run_bpso(std::size_t n_features, const BPSOParams& params,
                  const FitnessOracle& fitness);

OptimizerResult run_bpso_baseline(const SplitDataset& data,
                                  const BPSOParams& params, std::size_t knn_k,
                                  double feature_weight);

}  // namespace rsofs
