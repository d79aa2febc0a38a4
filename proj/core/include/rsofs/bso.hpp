#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rsofs/data.hpp"
#include "rsofs/feature_mask.hpp"
#include "rsofs/fitness.hpp"
#include "rsofs/optimizer.hpp"
#include "rsofs/rng.hpp"

namespace rsofs {

struct BSOParams {
  std::size_t flip = 5;
  std::size_t chance_max = 5;
  std::size_t max_iter = 10;
  std::size_t num_bees = 8;
  std::size_t ls_iter = 10;
  std::uint64_t seed = 42;
  /// Worker threads for the per-bee searches of one colony step.
  std::size_t threads = 1;

  /// Throws InvalidArgument when a count parameter is zero.
  void validate() const;
};

/// Candidates sampled when diversification picks a fresh reference.
inline constexpr std::size_t kDiversificationCandidates = 100;

struct BeeColonyState {
  FeatureMask reference;
  /// Previously used references, in insertion order, no duplicates.
  std::vector<FeatureMask> tab;
  /// This iteration's bee results, best first.
  std::vector<ScoredMask> dance;
  std::size_t chances_left = 0;
  std::size_t iteration = 0;
  ScoredMask best;
  bool diversified = false;
  std::vector<std::string> warnings;
};

/// Bernoulli(0.5) bits, resampled while empty.
FeatureMask initial_reference(std::size_t n_features, Rng& rng);

/// Determined search region: mask k flips the index class {i : i mod flip ==
/// k mod flip}; masks with k >= flip also toggle bit (k / flip) mod n. A mask
/// that comes out empty gets bit 0 set.
std::vector<FeatureMask> generate_search_region(const FeatureMask& reference,
                                                std::size_t flip,
                                                std::size_t num_bees);

/// Single-bit-flip hill climbing: each round flips one random bit and keeps
/// the neighbour only on strict scalar improvement.
ScoredMask local_search(const FeatureMask& start, const FitnessOracle& fitness,
                        std::size_t ls_iter, Rng& rng);

/// Per-bee search: (bee index, start mask, bee generator) -> best found.
using BeeSearch =
    std::function<ScoredMask(std::size_t, const FeatureMask&, Rng&)>;

/// Draws the first reference from `rng` and scores it as the initial best.
BeeColonyState init_colony(std::size_t n_features, const BSOParams& params,
                           const FitnessOracle& fitness, Rng& rng);

/// Generator for the colony-level draws (first reference, diversification).
Rng colony_rng(const BSOParams& params);

/// One colony iteration with a caller-supplied bee search. Bee generators are
/// derived from (params.seed, iteration, bee) so the outcome does not depend
/// on params.threads. `rng` drives diversification only.
BeeColonyState colony_step(BeeColonyState state, const BSOParams& params,
                           const BeeSearch& search, Rng& rng);

/// One BSO iteration using local_search for every bee.
BeeColonyState bso_step(BeeColonyState state, const BSOParams& params,
                        const FitnessOracle& fitness, Rng& rng);

/// True once `value` reaches the oracle's ceiling.
bool reached_ceiling(const FitnessOracle& fitness, double value);

SearchRun run_bso(std::size_t n_features, const BSOParams& params,
                  const FitnessOracle& fitness);

OptimizerResult run_bso(const SplitDataset& data, const BSOParams& params,
                        std::size_t knn_k, double feature_weight);

}  // namespace rsofs
