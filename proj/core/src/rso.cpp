#include "rsofs/rso.hpp"

#include <chrono>
#include <memory>
#include <utility>

#include "rsofs/error.hpp"

namespace rsofs {

namespace {
constexpr std::uint64_t kEpisodeStream = 0x7105;
}

void RSOParams::validate() const {
  bso.validate();
  rl.validate();
  if (knn_k == 0) throw Error(ErrorCode::InvalidArgument, "knn_k must be positive");
  if (!(feature_weight >= 0.0 && feature_weight < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "feature weight must lie in [0, 1)");
  }
}

EpisodeResult rl_episode(const FeatureMask& start, QTable& table,
                         const RSOParams& params, const FitnessOracle& fitness,
                         Rng& rng) {
  ScoredMask current{start, fitness(start)};
  EpisodeResult out;
  out.best = current;
  for (std::size_t step = 0; step < params.bso.ls_iter; ++step) {
    std::size_t action = 0;
    try {
      action = select_action(table, current.mask, params.rl.beta, rng);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoLegalAction) throw;
      break;
    }
    FeatureMask next = apply_action(current.mask, action);
    const FitnessValue f = fitness(next);
    const double r = reward({current.fitness.accuracy, f.accuracy,
                             current.fitness.num_features, f.num_features});
    q_update(table, current.mask, action, r, next, params.rl);
    out.transitions.push_back({current.mask, action, r, next});

    ScoredMask candidate{std::move(next), f};
    if (f.scalar > out.best.fitness.scalar) out.best = candidate;
    if (params.accept_worse || f.scalar >= current.fitness.scalar) {
      current = std::move(candidate);
    }
  }
  return out;
}

RsoSearchRun run_rso(std::size_t n_features, const RSOParams& params,
                     const FitnessOracle& fitness) {
  params.validate();
  Rng rng = colony_rng(params.bso);
  auto state = init_colony(n_features, params.bso, fitness, rng);
  QTable table(n_features);
  SearchRun run;
  while (state.iteration < params.bso.max_iter) {
    const QTable snapshot = table;
    const std::uint64_t iteration = state.iteration;
    std::vector<std::vector<Transition>> logs(params.bso.num_bees);
    const BeeSearch search = [&](std::size_t bee, const FeatureMask& start, Rng&) {
      QTable local = snapshot;
      Rng bee_rng(derive_seed(params.rl.seed, {kEpisodeStream, iteration, bee}));
      auto episode = rl_episode(start, local, params, fitness, bee_rng);
      logs[bee] = std::move(episode.transitions);
      return episode.best;
    };
    state = colony_step(std::move(state), params.bso, search, rng);
    for (const auto& log : logs) {
      for (const auto& t : log) q_update(table, t.state, t.action, t.reward, t.next, params.rl);
    }
    run.trajectory.push_back(state.best.fitness.scalar);
    if (reached_ceiling(fitness, state.best.fitness.scalar)) break;
  }
  run.best = state.best;
  run.iterations = state.iteration;
  run.evaluations = fitness.evaluations();
  run.warnings = state.warnings;
  return {std::move(run), std::move(table)};
}

OptimizerResult run_rso(const SplitDataset& data, const RSOParams& params) {
  const auto fitness = make_wrapper_oracle(data, params.knn_k, params.feature_weight);
  const auto t0 = std::chrono::steady_clock::now();
  auto rso = run_rso(data.train.num_attributes(), params, fitness);
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  auto result = make_result(rso.run, data, params.knn_k, dt.count());
  result.q_table = std::make_shared<const QTable>(std::move(rso.table));
  return result;
}

std::size_t evaluation_budget(const BSOParams& params) {
  return params.max_iter * params.num_bees * (params.ls_iter + 1) + 1;
}

}  // namespace rsofs
