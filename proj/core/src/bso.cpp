#include "rsofs/bso.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "rsofs/error.hpp"
#include "rsofs/parallel.hpp"

namespace rsofs {

namespace {
constexpr std::uint64_t kColonyStream = 0xC01041;
}

void BSOParams::validate() const {
  if (flip == 0 || chance_max == 0 || max_iter == 0 || num_bees == 0) {
    throw Error(ErrorCode::InvalidArgument,
                "flip, chance_max, max_iter and num_bees must be positive");
  }
}

FeatureMask initial_reference(std::size_t n_features, Rng& rng) {
  if (n_features == 0) {
    throw Error(ErrorCode::InvalidArgument, "mask needs at least one feature");
  }
  FeatureMask m(n_features);
  do {
    for (std::size_t i = 0; i < n_features; ++i) m.set(i, rng.bernoulli(0.5));
  } while (m.none());
  return m;
}

std::vector<FeatureMask> generate_search_region(const FeatureMask& reference,
                                                std::size_t flip,
                                                std::size_t num_bees) {
  if (flip == 0) throw Error(ErrorCode::InvalidArgument, "flip must be positive");
  const std::size_t n = reference.size();
  std::vector<FeatureMask> region;
  region.reserve(num_bees);
  for (std::size_t k = 0; k < num_bees; ++k) {
    FeatureMask m = reference;
    for (std::size_t i = k % flip; i < n; i += flip) m.flip(i);
    if (k >= flip && n > 0) m.flip((k / flip) % n);
    if (n > 0 && m.none()) m.set(0);
    region.push_back(std::move(m));
  }
  return region;
}

ScoredMask local_search(const FeatureMask& start, const FitnessOracle& fitness,
                        std::size_t ls_iter, Rng& rng) {
  ScoredMask current{start, fitness(start)};
  const std::size_t n = start.size();
  for (std::size_t round = 0; round < ls_iter; ++round) {
    FeatureMask neighbour = current.mask;
    neighbour.flip(rng.uniform_index(n));
    if (neighbour.none()) continue;
    const auto f = fitness(neighbour);
    if (f.scalar > current.fitness.scalar) current = {std::move(neighbour), f};
  }
  return current;
}

Rng colony_rng(const BSOParams& params) {
  return Rng(derive_seed(params.seed, {kColonyStream}));
}

BeeColonyState init_colony(std::size_t n_features, const BSOParams& params,
                           const FitnessOracle& fitness, Rng& rng) {
  params.validate();
  BeeColonyState state;
  state.reference = initial_reference(n_features, rng);
  state.best = {state.reference, fitness(state.reference)};
  state.chances_left = params.chance_max;
  return state;
}

namespace {

bool in_tab(const std::vector<FeatureMask>& tab, const FeatureMask& m) {
  return std::find(tab.begin(), tab.end(), m) != tab.end();
}

// Largest minimum Hamming distance to the taboo list among random candidates.
FeatureMask diversify(const std::vector<FeatureMask>& tab, std::size_t n,
                      Rng& rng) {
  FeatureMask chosen;
  std::size_t chosen_score = 0;
  for (std::size_t c = 0; c < kDiversificationCandidates; ++c) {
    FeatureMask cand = initial_reference(n, rng);
    std::size_t score = std::numeric_limits<std::size_t>::max();
    for (const auto& t : tab) score = std::min(score, hamming_distance(cand, t));
    if (c == 0 || score > chosen_score) {
      chosen = std::move(cand);
      chosen_score = score;
    }
  }
  return chosen;
}

}  // namespace

BeeColonyState colony_step(BeeColonyState state, const BSOParams& params,
                           const BeeSearch& search, Rng& rng) {
  params.validate();
  state.diversified = false;
  if (!in_tab(state.tab, state.reference)) state.tab.push_back(state.reference);

  const auto region =
      generate_search_region(state.reference, params.flip, params.num_bees);
  std::vector<ScoredMask> results(params.num_bees);
  const std::uint64_t iteration = state.iteration;
  parallel_for(params.num_bees, params.threads, [&](std::size_t bee) {
    Rng bee_rng(derive_seed(params.seed, {iteration, bee}));
    results[bee] = search(bee, region[bee], bee_rng);
  });
  std::sort(results.begin(), results.end(), ranks_before);
  state.dance = std::move(results);

  const ScoredMask& top = state.dance.front();
  const bool improved = top.fitness.scalar > state.best.fitness.scalar;
  if (improved) {
    state.best = top;
    state.chances_left = params.chance_max;
  }

  if (!improved && state.chances_left == 0) {
    state.reference = diversify(state.tab, state.reference.size(), rng);
    state.chances_left = params.chance_max;
    state.diversified = true;
  } else {
    if (!improved) --state.chances_left;
    auto next = std::find_if(state.dance.begin(), state.dance.end(),
                             [&](const ScoredMask& s) { return !in_tab(state.tab, s.mask); });
    if (next == state.dance.end()) {
      state.warnings.push_back("iteration " + std::to_string(state.iteration) +
                               ": every dance entry is taboo; reusing the best");
      state.reference = top.mask;
    } else {
      state.reference = next->mask;
    }
  }
  ++state.iteration;
  return state;
}

BeeColonyState bso_step(BeeColonyState state, const BSOParams& params,
                        const FitnessOracle& fitness, Rng& rng) {
  const BeeSearch search = [&](std::size_t, const FeatureMask& start, Rng& r) {
    return local_search(start, fitness, params.ls_iter, r);
  };
  return colony_step(std::move(state), params, search, rng);
}

bool reached_ceiling(const FitnessOracle& fitness, double value) {
  const auto c = fitness.ceiling();
  return c.has_value() && value >= *c - 1e-12;
}

SearchRun run_bso(std::size_t n_features, const BSOParams& params,
                  const FitnessOracle& fitness) {
  Rng rng = colony_rng(params);
  auto state = init_colony(n_features, params, fitness, rng);
  SearchRun run;
  while (state.iteration < params.max_iter) {
    state = bso_step(std::move(state), params, fitness, rng);
    run.trajectory.push_back(state.best.fitness.scalar);
    if (reached_ceiling(fitness, state.best.fitness.scalar)) break;
  }
  run.best = state.best;
  run.iterations = state.iteration;
  run.evaluations = fitness.evaluations();
  run.warnings = state.warnings;
  return run;
}

OptimizerResult run_bso(const SplitDataset& data, const BSOParams& params,
                        std::size_t knn_k, double feature_weight) {
  const auto fitness = make_wrapper_oracle(data, knn_k, feature_weight);
  const auto t0 = std::chrono::steady_clock::now();
  const auto run = run_bso(data.train.num_attributes(), params, fitness);
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  return make_result(run, data, knn_k, dt.count());
}

}  // namespace rsofs
