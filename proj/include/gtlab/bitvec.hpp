#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gtlab/errors.hpp"

namespace gtlab {

/// Fixed-length bit vector backed by 64-bit words. Binary operations require
/// operands of equal length; trailing bits of the last word stay zero.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  std::size_t size() const { return nbits_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool none() const {
    for (std::uint64_t w : words_)
      if (w) return false;
    return true;
  }
  bool any() const { return !none(); }

  BitVec& operator|=(const BitVec& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  friend BitVec operator|(BitVec a, const BitVec& b) {
    a |= b;
    return a;
  }

  /// *this = a | b without reallocating (all three must share a length).
  void assign_or(const BitVec& a, const BitVec& b) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] = a.words_[i] | b.words_[i];
  }

  /// True iff every set bit of *this is also set in o.
  bool is_subset_of(const BitVec& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  /// True iff (*this | extra) has every bit of target set.
  bool covers_with(const BitVec& extra, const BitVec& target) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (target.words_[i] & ~(words_[i] | extra.words_[i])) return false;
    return true;
  }

  bool operator==(const BitVec&) const = default;

  /// Bit i becomes character i, '0' or '1'.
  std::string to_string() const {
    std::string s(nbits_, '0');
    for (std::size_t i = 0; i < nbits_; ++i)
      if (test(i)) s[i] = '1';
    return s;
  }

  static BitVec parse(const std::string& s) {
    BitVec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1')
        v.set(i);
      else if (s[i] != '0')
        throw ParameterError("BitVec::parse: character is not '0' or '1'");
    }
    return v;
  }

  std::size_t hash() const {
    // splitmix64 over words
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ nbits_;
    for (std::uint64_t w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
  }

 private:
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitVecHash {
  std::size_t operator()(const BitVec& b) const { return b.hash(); }
};

}  // namespace gtlab
