#include "rsofs/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "rsofs/bso.hpp"
#include "rsofs/error.hpp"
#include "rsofs/rng.hpp"

namespace rsofs {

namespace {
constexpr std::uint64_t kRandomStream = 0xBA5E;
constexpr std::uint64_t kSwarmStream = 0xB950;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}
}  // namespace

SearchRun run_random_search(std::size_t n_features, std::size_t budget,
                            std::uint64_t seed, const FitnessOracle& fitness) {
  if (budget == 0) throw Error(ErrorCode::InvalidArgument, "budget must be positive");
  Rng rng(derive_seed(seed, {kRandomStream}));
  SearchRun run;
  for (std::size_t draw = 0; draw < budget; ++draw) {
    FeatureMask m = initial_reference(n_features, rng);
    const FitnessValue f = fitness(m);
    if (draw == 0 || f.scalar > run.best.fitness.scalar) run.best = {std::move(m), f};
    run.trajectory.push_back(run.best.fitness.scalar);
    ++run.iterations;
    if (reached_ceiling(fitness, run.best.fitness.scalar)) break;
  }
  run.evaluations = fitness.evaluations();
  return run;
}

OptimizerResult run_random_baseline(const SplitDataset& data,
                                    std::size_t budget, std::uint64_t seed,
                                    std::size_t knn_k, double feature_weight) {
  const auto fitness = make_wrapper_oracle(data, knn_k, feature_weight);
  const auto t0 = std::chrono::steady_clock::now();
  const auto run = run_random_search(data.train.num_attributes(), budget, seed, fitness);
  return make_result(run, data, knn_k, seconds_since(t0));
}

SwarmRun run_bpso(std::size_t n_features, const BPSOParams& params,
                  const FitnessOracle& fitness) {
  if (params.swarm_size == 0 || params.budget < params.swarm_size) {
    throw Error(ErrorCode::InvalidArgument,
                "BPSO needs a nonempty swarm and a budget of at least one sweep");
  }
  Rng rng(derive_seed(params.seed, {kSwarmStream}));
  const std::size_t swarm = params.swarm_size;
  std::vector<FeatureMask> x(swarm);
  std::vector<ScoredMask> pbest(swarm);
  SwarmRun out;
  out.velocities.assign(swarm, std::vector<double>(n_features, 0.0));
  SearchRun& run = out.run;

  std::size_t calls = 0;
  for (std::size_t p = 0; p < swarm; ++p) {
    x[p] = initial_reference(n_features, rng);
    pbest[p] = {x[p], fitness(x[p])};
    ++calls;
    if (p == 0 || pbest[p].fitness.scalar > run.best.fitness.scalar) run.best = pbest[p];
  }
  run.trajectory.push_back(run.best.fitness.scalar);
  ++run.iterations;

  while (calls < params.budget && !reached_ceiling(fitness, run.best.fitness.scalar)) {
    for (std::size_t p = 0; p < swarm && calls < params.budget; ++p) {
      auto& v = out.velocities[p];
      for (std::size_t i = 0; i < n_features; ++i) {
        const double xi = x[p].test(i) ? 1.0 : 0.0;
        const double pi = pbest[p].mask.test(i) ? 1.0 : 0.0;
        const double gi = run.best.mask.test(i) ? 1.0 : 0.0;
        const double r1 = rng.uniform01();
        const double r2 = rng.uniform01();
        v[i] = params.inertia * v[i] + params.cognitive * r1 * (pi - xi) +
               params.social * r2 * (gi - xi);
        v[i] = std::clamp(v[i], -params.v_max, params.v_max);
        x[p].set(i, rng.uniform01() < 1.0 / (1.0 + std::exp(-v[i])));
      }
      if (x[p].none()) {
        x[p].set(static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin()));
      }
      const FitnessValue f = fitness(x[p]);
      ++calls;
      if (f.scalar > pbest[p].fitness.scalar) pbest[p] = {x[p], f};
      if (f.scalar > run.best.fitness.scalar) run.best = {x[p], f};
    }
    run.trajectory.push_back(run.best.fitness.scalar);
    ++run.iterations;
  }
  run.evaluations = fitness.evaluations();
  return out;
}

OptimizerResult run_bpso_baseline(const SplitDataset& data,
                                  const BPSOParams& params, std::size_t knn_k,
                                  double feature_weight) {
  const auto fitness = make_wrapper_oracle(data, knn_k, feature_weight);
  const auto t0 = std::chrono::steady_clock::now();
  const auto swarm = run_bpso(data.train.num_attributes(), params, fitness);
  return make_result(swarm.run, data, knn_k, seconds_since(t0));
}

}  // namespace rsofs
