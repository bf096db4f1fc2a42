#include <stdexcept>

#include "patchcp/kernel/domain.hpp"

namespace patchcp::kernel {

namespace {
void check_value(int v) {
  if (v < 0 || v > Domain::kMaxValue)
    throw std::invalid_argument("domain value " + std::to_string(v) + " outside 0..63");
}
}  // namespace

Domain Domain::range(int lo, int hi) {
  check_value(lo);
  check_value(hi);
  return Domain(range_bits(lo, hi));
}

Domain Domain::of(std::initializer_list<int> values) {
  std::uint64_t bits = 0;
  for (int v : values) {
    check_value(v);
    bits |= bit(v);
  }
  return Domain(bits);
}

Domain Domain::of(const std::vector<int>& values) {
  std::uint64_t bits = 0;
  for (int v : values) {
    check_value(v);
    bits |= bit(v);
  }
  return Domain(bits);
}

std::vector<int> Domain::values() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for_each([&](int v) { out.push_back(v); });
  return out;
}

std::string Domain::to_string() const {
  std::string out = "{";
  bool first = true;
  for_each([&](int v) {
    if (!first) out += ',';
    out += std::to_string(v);
    first = false;
  });
  return out + "}";
}

}  // namespace patchcp::kernel
