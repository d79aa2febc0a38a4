#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace rsofs {

/// Binary inclusion flags over dataset attributes. Character i of the string
/// form is bit i, so "0101" selects attributes 1 and 3.
class FeatureMask {
 public:
  FeatureMask() = default;
  explicit FeatureMask(std::size_t n, bool value = false)
      : bits_(n, value ? 1 : 0) {}

  static FeatureMask from_string(std::string_view bits);
  static FeatureMask all(std::size_t n) { return FeatureMask(n, true); }

  std::size_t size() const noexcept { return bits_.size(); }
  bool test(std::size_t i) const { return bits_.at(i) != 0; }
  void set(std::size_t i, bool value = true) { bits_.at(i) = value ? 1 : 0; }
  void flip(std::size_t i) { bits_.at(i) ^= 1; }

  std::size_t popcount() const noexcept;
  bool none() const noexcept { return popcount() == 0; }

  /// Indices of set bits in increasing order.
  std::vector<std::size_t> selected() const;
  std::string to_string() const;

  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  friend bool operator==(const FeatureMask&, const FeatureMask&) = default;
  friend auto operator<=>(const FeatureMask&, const FeatureMask&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

std::size_t hamming_distance(const FeatureMask& a, const FeatureMask& b);

struct FeatureMaskHash {
  std::size_t operator()(const FeatureMask& m) const noexcept;
};

}  // namespace rsofs
