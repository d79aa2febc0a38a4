#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>

#include "rsofs/feature_mask.hpp"
#include "rsofs/rng.hpp"

namespace rsofs {

struct RLParams {
  double lr = 0.9;
  /// Discount on the best next-state value.
  double alpha = 0.2;
  /// Exploration probability of the epsilon-greedy policy.
  double beta = 0.1;
  std::uint64_t seed = 42;

  void validate() const;
};

/// Sparse Q(state, action) table; state = mask, action = bit to toggle.
/// Cells never written read as 0.
class QTable {
 public:
  explicit QTable(std::size_t n_actions = 0) : n_actions_(n_actions) {}

  std::size_t n_actions() const noexcept { return n_actions_; }
  double get(const FeatureMask& state, std::size_t action) const;
  void set(const FeatureMask& state, std::size_t action, double q);

  /// max over all actions, unwritten cells included as 0.
  double max_value(const FeatureMask& state) const;

  /// Number of written cells.
  std::size_t size() const noexcept { return cells_; }
  std::size_t state_count() const noexcept { return rows_.size(); }

  /// `state_bits,action_index,q_value` lines ordered by (state_bits, action).
  std::string dump() const;

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  std::size_t n_actions_ = 0;
  std::size_t cells_ = 0;
  std::unordered_map<FeatureMask, std::map<std::size_t, double>,
                     FeatureMaskHash>
      rows_;
};

struct RewardInputs {
  double acc_t = 0.0;
  double acc_next = 0.0;
  std::size_t num_t = 1;
  std::size_t num_next = 1;
};

/// Accuracy change decides first; on an accuracy tie the subset size does.
///   acc_t < acc_next            -> acc_t
///   acc_t > acc_next            -> acc_next - acc_t
///   tie, num_t > num_next       -> acc_t / 2
///   tie, num_t < num_next       -> -acc_t / 2
///   tie on both                 -> 0
double reward(const RewardInputs& r);

/// Q(s,a) <- lr*r + (1-lr)*Q(s,a) + alpha * max_a' Q(next, a')
void q_update(QTable& table, const FeatureMask& state, std::size_t action,
              double r, const FeatureMask& next_state, const RLParams& params);

/// Epsilon-greedy over the actions that leave the mask nonempty. Greedy ties
/// go to the lowest index. Throws NoLegalAction when no toggle is allowed.
std::size_t select_action(const QTable& table, const FeatureMask& state,
                          double beta, Rng& rng);

/// Toggles bit `action`. Throws EmptyMaskResult if that clears the mask.
FeatureMask apply_action(const FeatureMask& state, std::size_t action);

/// r0 + alpha*r1 + alpha^2*r2 + ...
double discounted_return(std::span<const double> rewards, double alpha);

}  // namespace rsofs
