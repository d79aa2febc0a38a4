#pragma once

#include <cstddef>
#include <vector>

#include "rsofs/bso.hpp"
#include "rsofs/data.hpp"
#include "rsofs/fitness.hpp"
#include "rsofs/optimizer.hpp"
#include "rsofs/rl.hpp"

namespace rsofs {

struct RSOParams {
  BSOParams bso;
  RLParams rl;
  std::size_t knn_k = 5;
  double feature_weight = 0.01;
  /// Move to a worse neighbour inside an episode instead of staying put.
  bool accept_worse = false;

  void validate() const;
};

struct Transition {
  FeatureMask state;
  std::size_t action = 0;
  double reward = 0.0;
  FeatureMask next;
};

struct EpisodeResult {
  ScoredMask best;
  /// Every Q-update applied during the episode, in order.
  std::vector<Transition> transitions;
};

/// Q-learning walk of params.bso.ls_iter steps from `start`, updating `table`
/// in place. A worse neighbour is learned from but not moved to (unless
/// accept_worse). Returns the best mask visited.
EpisodeResult rl_episode(const FeatureMask& start, QTable& table,
                         const RSOParams& params, const FitnessOracle& fitness,
                         Rng& rng);

struct RsoSearchRun {
  SearchRun run;
  QTable table;
};

/// Colony search whose bees run rl_episode against one shared table. Within a
/// step every bee learns on a private copy of the table as it stood at the
/// start of the step; the logged updates are then replayed onto the shared
/// table in (bee, step) order.
RsoSearchRun run_rso(std::size_t n_features, const RSOParams& params,
                     const FitnessOracle& fitness);

OptimizerResult run_rso(const SplitDataset& data, const RSOParams& params);

/// max_iter * num_bees * (ls_iter + 1) + 1
std::size_t evaluation_budget(const BSOParams& params);

}  // namespace rsofs
