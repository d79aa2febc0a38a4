#include "rsofs/rl.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

#include "rsofs/error.hpp"

namespace rsofs {

void RLParams::validate() const {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(lr) || !unit(alpha) || !unit(beta)) {
    throw Error(ErrorCode::InvalidArgument, "lr, alpha and beta must lie in [0, 1]");
  }
}

double QTable::get(const FeatureMask& state, std::size_t action) const {
  const auto row = rows_.find(state);
  if (row == rows_.end()) return 0.0;
  const auto cell = row->second.find(action);
  return cell == row->second.end() ? 0.0 : cell->second;
}

void QTable::set(const FeatureMask& state, std::size_t action, double q) {
  if (action >= n_actions_) {
    throw Error(ErrorCode::InvalidArgument, "action index out of range");
  }
  auto [it, inserted] = rows_[state].insert_or_assign(action, q);
  (void)it;
  if (inserted) ++cells_;
}

double QTable::max_value(const FeatureMask& state) const {
  const auto row = rows_.find(state);
  if (row == rows_.end() || row->second.empty()) return 0.0;
  double best = row->second.begin()->second;
  for (const auto& [a, q] : row->second) best = std::max(best, q);
  if (row->second.size() < n_actions_) best = std::max(best, 0.0);
  return best;
}

std::string QTable::dump() const {
  std::vector<std::pair<std::string, const std::map<std::size_t, double>*>> states;
  states.reserve(rows_.size());
  for (const auto& [mask, row] : rows_) states.emplace_back(mask.to_string(), &row);
  std::sort(states.begin(), states.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string out;
  char buf[64];
  for (const auto& [bits, row] : states) {
    for (const auto& [action, q] : *row) {
      std::snprintf(buf, sizeof buf, ",%zu,%.17g\n", action, q);
      out += bits;
      out += buf;
    }
  }
  return out;
}

double reward(const RewardInputs& r) {
  if (r.acc_t < r.acc_next) return r.acc_t;
  if (r.acc_t > r.acc_next) return r.acc_next - r.acc_t;
  if (r.num_t > r.num_next) return r.acc_t / 2.0;
  if (r.num_t < r.num_next) return -r.acc_t / 2.0;
  return 0.0;
}

void q_update(QTable& table, const FeatureMask& state, std::size_t action,
              double r, const FeatureMask& next_state, const RLParams& params) {
  const double prior = table.get(state, action);
  const double future = table.max_value(next_state);
  table.set(state, action,
            params.lr * r + (1.0 - params.lr) * prior + params.alpha * future);
}

std::size_t select_action(const QTable& table, const FeatureMask& state,
                          double beta, Rng& rng) {
  const std::size_t n = state.size();
  const bool last_bit = state.popcount() == 1;
  std::vector<std::size_t> legal;
  legal.reserve(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (!(last_bit && state.test(a))) legal.push_back(a);
  }
  if (legal.empty()) {
    throw Error(ErrorCode::NoLegalAction, "no toggle keeps the mask nonempty");
  }
  if (beta > 0.0 && rng.uniform01() < beta) {
    return legal[rng.uniform_index(legal.size())];
  }
  std::size_t best = legal.front();
  double best_q = table.get(state, best);
  for (std::size_t a : legal) {
    const double q = table.get(state, a);
    if (q > best_q) {
      best = a;
      best_q = q;
    }
  }
  return best;
}

FeatureMask apply_action(const FeatureMask& state, std::size_t action) {
  if (action >= state.size()) {
    throw Error(ErrorCode::InvalidArgument, "action index out of range");
  }
  FeatureMask next = state;
  next.flip(action);
  if (next.none()) {
    throw Error(ErrorCode::EmptyMaskResult, "toggle would clear the mask");
  }
  return next;
}

double discounted_return(std::span<const double> rewards, double alpha) {
  double total = 0.0;
  for (auto it = rewards.rbegin(); it != rewards.rend(); ++it) {
    total = *it + alpha * total;
  }
  return total;
}

}  // namespace rsofs
