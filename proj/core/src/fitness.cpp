#include "rsofs/fitness.hpp"

#include <mutex>
#include <unordered_map>

#include "rsofs/error.hpp"

namespace rsofs {

double scalarize(double accuracy, std::size_t num_features,
                 std::size_t n_features, double weight) {
  if (n_features == 0) return accuracy;
  return accuracy - weight * static_cast<double>(num_features) /
                        static_cast<double>(n_features);
}

bool ranks_before(const ScoredMask& a, const ScoredMask& b) {
  if (a.fitness.scalar != b.fitness.scalar) {
    return a.fitness.scalar > b.fitness.scalar;
  }
  if (a.fitness.num_features != b.fitness.num_features) {
    return a.fitness.num_features < b.fitness.num_features;
  }
  return a.mask < b.mask;
}

struct FitnessCache::State {
  mutable std::mutex mu;
  std::unordered_map<FeatureMask, FitnessValue, FeatureMaskHash> memo;
  mutable std::size_t hits = 0;
};

FitnessCache::FitnessCache() : state_(std::make_unique<State>()) {}
FitnessCache::~FitnessCache() = default;
FitnessCache::FitnessCache(FitnessCache&&) noexcept = default;
FitnessCache& FitnessCache::operator=(FitnessCache&&) noexcept = default;

std::optional<FitnessValue> FitnessCache::find(const FeatureMask& mask) const {
  std::lock_guard lock(state_->mu);
  auto it = state_->memo.find(mask);
  if (it == state_->memo.end()) return std::nullopt;
  ++state_->hits;
  return it->second;
}

bool FitnessCache::insert(const FeatureMask& mask, const FitnessValue& value) {
  std::lock_guard lock(state_->mu);
  return state_->memo.emplace(mask, value).second;
}

std::size_t FitnessCache::size() const {
  std::lock_guard lock(state_->mu);
  return state_->memo.size();
}

std::size_t FitnessCache::hits() const {
  std::lock_guard lock(state_->mu);
  return state_->hits;
}

void FitnessCache::clear() {
  std::lock_guard lock(state_->mu);
  state_->memo.clear();
  state_->hits = 0;
}

namespace {

FitnessValue score_mask(const FeatureMask& mask, const SplitDataset& data,
                        std::size_t knn_k, double weight) {
  if (mask.none()) throw Error(ErrorCode::EmptyMask, "cannot score an empty mask");
  const auto ev = evaluate(project(data.train, mask), project(data.test, mask),
                           knn_k);
  FitnessValue v;
  v.accuracy = ev.metrics.accuracy;
  v.num_features = mask.popcount();
  v.scalar = scalarize(v.accuracy, v.num_features, mask.size(), weight);
  return v;
}

}  // namespace

FitnessValue wrapper_fitness(const FeatureMask& mask, const SplitDataset& data,
                             std::size_t knn_k, double weight,
                             FitnessCache& cache) {
  if (mask.none()) throw Error(ErrorCode::EmptyMask, "cannot score an empty mask");
  if (auto hit = cache.find(mask)) return *hit;
  const auto v = score_mask(mask, data, knn_k, weight);
  cache.insert(mask, v);
  return v;
}

FitnessOracle::FitnessOracle(FitnessFn fn, std::optional<double> ceiling)
    : fn_(std::move(fn)), ceiling_(ceiling) {}

FitnessValue FitnessOracle::operator()(const FeatureMask& mask) const {
  if (mask.none()) throw Error(ErrorCode::EmptyMask, "cannot score an empty mask");
  if (auto hit = cache_.find(mask)) return *hit;
  const auto v = fn_(mask);
  cache_.insert(mask, v);
  return v;
}

FitnessOracle make_wrapper_oracle(const SplitDataset& data, std::size_t knn_k,
                                  double weight) {
  const std::size_t n = data.train.num_attributes();
  return FitnessOracle(
      [&data, knn_k, weight](const FeatureMask& m) {
        return score_mask(m, data, knn_k, weight);
      },
      scalarize(1.0, 1, n, weight));
}

}  // namespace rsofs
