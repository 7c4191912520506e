#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "crossforest/rational.hpp"

namespace crossforest {

/// Fixed-size bitset over point indices.
class Membership {
 public:
  Membership() = default;
  explicit Membership(Index size) : size_(size), words_(static_cast<std::size_t>((size + 63) / 64), 0) {}

  Index size() const { return size_; }

  bool test(Index i) const { return (words_[word(i)] >> bit(i)) & 1u; }
  void set(Index i, bool value = true) {
    if (value)
      words_[word(i)] |= std::uint64_t{1} << bit(i);
    else
      words_[word(i)] &= ~(std::uint64_t{1} << bit(i));
  }

  Index count() const {
    Index c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  bool none() const { return count() == 0; }
  bool all() const { return count() == size_; }

  Membership complement() const {
    Membership out(size_);
    for (std::size_t k = 0; k < words_.size(); ++k) out.words_[k] = ~words_[k];
    out.trim();
    return out;
  }

  std::vector<Index> indices() const {
    std::vector<Index> out;
    for (Index i = 0; i < size_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

  /// Most significant nibble first; bit i of the set is bit i of the number.
  std::string to_hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    const Index nibbles = size_ == 0 ? 1 : (size_ + 3) / 4;
    std::string out;
    out.reserve(static_cast<std::size_t>(nibbles));
    for (Index k = nibbles - 1; k >= 0; --k) {
      unsigned v = 0;
      for (Index b = 0; b < 4; ++b) {
        const Index i = 4 * k + b;
        if (i < size_ && test(i)) v |= 1u << b;
      }
      out.push_back(digits[v]);
    }
    return out;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const Membership&, const Membership&) = default;

 private:
  static std::size_t word(Index i) { return static_cast<std::size_t>(i / 64); }
  static unsigned bit(Index i) { return static_cast<unsigned>(i % 64); }
  void trim() {
    if (size_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }

  Index size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct MembershipHash {
  std::size_t operator()(const Membership& m) const {
    std::size_t h = static_cast<std::size_t>(m.size());
    for (auto w : m.words()) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace crossforest
