#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace patchcp::kernel {

/// Ordinal into a state's variable table.
struct VarRef {
  std::uint32_t index = 0;

  auto operator<=>(const VarRef&) const = default;
};

/// Finite integer domain over 0..63, stored as a 64-bit value set.
class Domain {
 public:
  static constexpr int kMaxValue = 63;

  constexpr Domain() = default;

  static constexpr Domain from_bits(std::uint64_t bits) { return Domain(bits); }
  /// Values lo..hi inclusive. Throws std::invalid_argument outside 0..63.
  static Domain range(int lo, int hi);
  static Domain of(std::initializer_list<int> values);
  static Domain of(const std::vector<int>& values);
  static Domain singleton(int v) { return of({v}); }
  static constexpr Domain boolean() { return Domain(0b11); }

  static constexpr std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool assigned() const { return bits_ != 0 && (bits_ & (bits_ - 1)) == 0; }
  constexpr bool contains(int v) const { return v >= 0 && v <= kMaxValue && (bits_ >> v) & 1U; }
  /// Smallest value; undefined on empty domains.
  constexpr int min() const { return std::countr_zero(bits_); }
  constexpr int max() const { return kMaxValue - std::countl_zero(bits_); }
  constexpr int value() const { return min(); }

  constexpr bool subset_of(const Domain& other) const { return (bits_ & ~other.bits_) == 0; }

  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) f(std::countr_zero(b));
  }

  std::vector<int> values() const;
  std::string to_string() const;

  constexpr bool operator==(const Domain&) const = default;

 private:
  constexpr explicit Domain(std::uint64_t bits) : bits_(bits) {}

  std::uint64_t bits_ = 0;
};

/// Bits for the values lo..hi (clamped to 0..63); zero when the range is empty.
constexpr std::uint64_t range_bits(int lo, int hi) {
  if (lo < 0) lo = 0;
  if (hi > Domain::kMaxValue) hi = Domain::kMaxValue;
  if (lo > hi) return 0;
  std::uint64_t upper = hi == Domain::kMaxValue ? ~std::uint64_t{0} : (std::uint64_t{1} << (hi + 1)) - 1;
  return upper & ~((std::uint64_t{1} << lo) - 1);
}

}  // namespace patchcp::kernel
