#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ea/rational.hpp"

namespace ea {

// Dyadic rational numerator / 2^level in [0,1], kept in canonical form
// (odd numerator or level 0).
class DyadicRational {
 public:
  static constexpr unsigned kMaxLevel = 62;

  DyadicRational() = default;
  DyadicRational(std::uint64_t numerator, unsigned level);

  std::uint64_t numerator() const { return num_; }
  unsigned level() const { return level_; }
  // Numerator when written over 2^n, n >= level().
  std::uint64_t at_level(unsigned n) const;
  Rational value() const;
  std::string to_string() const;

  friend bool operator==(const DyadicRational&, const DyadicRational&) = default;
  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

 private:
  std::uint64_t num_ = 0;
  unsigned level_ = 0;
};

// Finite word w_1 ... w_l over {0,1}.
struct BinaryString {
  std::vector<std::uint8_t> bits;

  BinaryString() = default;
  static BinaryString parse(std::string_view text);  // "101", "" or "e" for the empty word
  static BinaryString from_index(std::uint64_t k, unsigned length);

  unsigned length() const { return static_cast<unsigned>(bits.size()); }
  std::uint64_t index() const;  // k(w)
  DyadicRational lambda() const { return DyadicRational(index(), length()); }
  std::string to_string() const;

  friend bool operator==(const BinaryString&, const BinaryString&) = default;
};

struct StringCalc {
  DyadicRational lambda;
  std::uint64_t k = 0;
  unsigned l = 0;
  std::optional<BinaryString> succ, pred;  // empty past the ends
  DyadicRational lambda_succ, lambda_pred;  // 1 past the top, 0 past the bottom
};

StringCalc string_calc(const BinaryString& w);

}  // namespace ea
