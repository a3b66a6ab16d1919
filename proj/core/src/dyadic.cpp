#include "ea/dyadic.hpp"

#include <bit>

#include "ea/error.hpp"

namespace ea {

DyadicRational::DyadicRational(std::uint64_t numerator, unsigned level) : num_(numerator), level_(level) {
  if (level > kMaxLevel) fail(ErrorKind::DomainMismatch, "dyadic level above " + std::to_string(kMaxLevel));
  if (numerator > (std::uint64_t{1} << level)) fail(ErrorKind::DomainMismatch, "dyadic rational above 1");
  if (num_ == 0) {
    level_ = 0;
    return;
  }
  const unsigned z = std::min<unsigned>(static_cast<unsigned>(std::countr_zero(num_)), level_);
  num_ >>= z;
  level_ -= z;
}

std::uint64_t DyadicRational::at_level(unsigned n) const {
  if (n < level_ || n > kMaxLevel) fail(ErrorKind::DomainMismatch, "dyadic level out of range");
  return num_ << (n - level_);
}

Rational DyadicRational::value() const {
  return Rational(static_cast<std::int64_t>(num_), std::int64_t{1} << level_);
}

std::string DyadicRational::to_string() const {
  if (level_ == 0) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(std::uint64_t{1} << level_);
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
  const unsigned n = std::max(a.level_, b.level_);
  return a.at_level(n) <=> b.at_level(n);
}

BinaryString BinaryString::parse(std::string_view text) {
  BinaryString w;
  if (text == "e" || text == "eps") return w;
  for (char ch : text) {
    if (ch != '0' && ch != '1') fail(ErrorKind::ParseError, "binary string expects 0/1, got '" + std::string(1, ch) + "'");
    w.bits.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  if (w.length() > DyadicRational::kMaxLevel) fail(ErrorKind::DomainMismatch, "binary string too long");
  return w;
}

BinaryString BinaryString::from_index(std::uint64_t k, unsigned length) {
  if (length > DyadicRational::kMaxLevel || k >= (std::uint64_t{1} << length))
    fail(ErrorKind::DomainMismatch, "index does not fit the length");
  BinaryString w;
  w.bits.resize(length);
  for (unsigned j = 0; j < length; ++j) w.bits[length - 1 - j] = static_cast<std::uint8_t>((k >> j) & 1U);
  return w;
}

std::uint64_t BinaryString::index() const {
  std::uint64_t k = 0;
  for (auto b : bits) k = (k << 1) | b;
  return k;
}

std::string BinaryString::to_string() const {
  std::string s;
  for (auto b : bits) s.push_back(static_cast<char>('0' + b));
  return s;
}

StringCalc string_calc(const BinaryString& w) {
  StringCalc r;
  r.l = w.length();
  r.k = w.index();
  r.lambda = DyadicRational(r.k, r.l);
  const std::uint64_t top = std::uint64_t{1} << r.l;
  if (r.k + 1 < top) {
    r.succ = BinaryString::from_index(r.k + 1, r.l);
    r.lambda_succ = DyadicRational(r.k + 1, r.l);
  } else {
    r.lambda_succ = DyadicRational(1, 0);
  }
  if (r.k > 0) {
    r.pred = BinaryString::from_index(r.k - 1, r.l);
    r.lambda_pred = DyadicRational(r.k - 1, r.l);
  }
  return r;
}

}  // namespace ea
