#include "rsofs/feature_mask.hpp"

#include <algorithm>
#include <numeric>

#include "rsofs/error.hpp"

namespace rsofs {

FeatureMask FeatureMask::from_string(std::string_view bits) {
  FeatureMask m(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      m.bits_[i] = 1;
    } else if (bits[i] != '0') {
      throw Error(ErrorCode::InvalidArgument,
                  "mask string may only contain 0 and 1: " + std::string(bits));
    }
  }
  return m;
}

std::size_t FeatureMask::popcount() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::vector<std::size_t> FeatureMask::selected() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(i);
  }
  return out;
}

std::string FeatureMask::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

std::size_t hamming_distance(const FeatureMask& a, const FeatureMask& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::MaskLengthMismatch, "hamming distance of masks of "
                "different length");
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a.bits()[i] != b.bits()[i];
  return d;
}

std::size_t FeatureMaskHash::operator()(const FeatureMask& m) const noexcept {
  // FNV-1a over the bit bytes.
  std::size_t h = 1469598103934665603ULL;
  for (auto b : m.bits()) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h ^ m.size();
}

}  // namespace rsofs
