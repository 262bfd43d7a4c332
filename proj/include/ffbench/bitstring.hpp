#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ffbench/rng.hpp"

namespace ffbench {

// A fixed-length string over {0,1}. Storage is 0-based; the benchmark
// function definitions count genes from 1, so gene i lives at index i-1.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t length) : bits_(length, 0) {}

  static BitString random(Rng& rng, std::size_t length) {
    BitString x(length);
    for (auto& b : x.bits_) b = static_cast<std::uint8_t>(rng.next_below(2));
    return x;
  }

  // Builds from a literal like "0101"; anything but '0'/'1' throws.
  static BitString from_string(const std::string& text) {
    BitString x(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '1') {
        x.bits_[i] = 1;
      } else if (text[i] != '0') {
        throw std::invalid_argument("BitString::from_string: bad character");
      }
    }
    return x;
  }

  std::size_t size() const { return bits_.size(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }
  void flip(std::size_t i) { bits_[i] ^= 1; }

  std::size_t count_ones() const {
    std::size_t n = 0;
    for (const auto b : bits_) n += b;
    return n;
  }

  std::string to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) s[i] = '1';
    return s;
  }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

inline std::size_t hamming(const BitString& a, const BitString& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("hamming: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

}  // namespace ffbench
