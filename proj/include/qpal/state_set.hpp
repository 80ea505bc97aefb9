#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace qpal {

/// A subset of the states {0..n-1} of one model, stored as a packed bitset.
///
/// Bits at or above the universe size are always zero, so equality, hashing
/// and popcount never see garbage.
class StateSet {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  StateSet() = default;
  explicit StateSet(std::size_t universe) : universe_(universe) {
    if (universe > 64) big_.assign((universe + 63) / 64, 0);
  }

  static StateSet full(std::size_t universe) {
    StateSet s(universe);
    for (std::size_t i = 0; i < s.nwords(); ++i) s.word(i) = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  static StateSet of(std::size_t universe, std::initializer_list<std::size_t> members) {
    StateSet s(universe);
    for (std::size_t m : members) s.insert(m);
    return s;
  }

  std::size_t universe() const { return universe_; }

  bool contains(std::size_t i) const {
    return i < universe_ && ((word(i >> 6) >> (i & 63)) & 1U) != 0;
  }
  void insert(std::size_t i) { word(i >> 6) |= std::uint64_t{1} << (i & 63); }
  void erase(std::size_t i) { word(i >> 6) &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < nwords(); ++i) c += static_cast<std::size_t>(std::popcount(word(i)));
    return c;
  }
  bool empty() const {
    for (std::size_t i = 0; i < nwords(); ++i)
      if (word(i) != 0) return false;
    return true;
  }

  bool is_subset_of(const StateSet& other) const {
    for (std::size_t i = 0; i < nwords(); ++i)
      if ((word(i) & ~other.word(i)) != 0) return false;
    return true;
  }
  bool intersects(const StateSet& other) const {
    for (std::size_t i = 0; i < nwords(); ++i)
      if ((word(i) & other.word(i)) != 0) return true;
    return false;
  }

  /// Smallest member at or after `from`, or npos.
  std::size_t next(std::size_t from = 0) const {
    if (from >= universe_) return npos;
    std::size_t wi = from >> 6;
    std::uint64_t w = word(wi) & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w != 0) return (wi << 6) + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi == nwords()) return npos;
      w = word(wi);
    }
  }
  std::size_t first() const { return next(0); }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t wi = 0; wi < nwords(); ++wi) {
      std::uint64_t w = word(wi);
      while (w != 0) {
        fn((wi << 6) + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  StateSet complement() const {
    StateSet s(universe_);
    for (std::size_t i = 0; i < nwords(); ++i) s.word(i) = ~word(i);
    s.trim();
    return s;
  }

  StateSet& operator|=(const StateSet& o) {
    for (std::size_t i = 0; i < nwords(); ++i) word(i) |= o.word(i);
    return *this;
  }
  StateSet& operator&=(const StateSet& o) {
    for (std::size_t i = 0; i < nwords(); ++i) word(i) &= o.word(i);
    return *this;
  }
  StateSet& operator^=(const StateSet& o) {
    for (std::size_t i = 0; i < nwords(); ++i) word(i) ^= o.word(i);
    return *this;
  }
  /// Set difference.
  StateSet& operator-=(const StateSet& o) {
    for (std::size_t i = 0; i < nwords(); ++i) word(i) &= ~o.word(i);
    return *this;
  }

  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator^(StateSet a, const StateSet& b) { return a ^= b; }
  friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }

  friend bool operator==(const StateSet& a, const StateSet& b) {
    return a.universe_ == b.universe_ && a.small_ == b.small_ && a.big_ == b.big_;
  }

  /// Witness order: fewer members first, then by the numeric value of the mask.
  friend bool witness_order(const StateSet& a, const StateSet& b) {
    std::size_t ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    for (std::size_t i = a.nwords(); i-- > 0;)
      if (a.word(i) != b.word(i)) return a.word(i) < b.word(i);
    return false;
  }

  std::size_t hash() const {
    std::size_t h = universe_ * 0x9e3779b97f4a7c15ULL;
    for (std::size_t i = 0; i < nwords(); ++i) h = (h ^ word(i)) * 0x100000001b3ULL + (h >> 29);
    return h;
  }

 private:
  bool is_small() const { return universe_ <= 64; }
  std::size_t nwords() const { return is_small() ? 1 : big_.size(); }
  std::uint64_t word(std::size_t i) const { return is_small() ? small_ : big_[i]; }
  std::uint64_t& word(std::size_t i) { return is_small() ? small_ : big_[i]; }

  void trim() {
    if (universe_ % 64 != 0) word(nwords() - 1) &= (std::uint64_t{1} << (universe_ % 64)) - 1;
    if (universe_ == 0) small_ = 0;
  }

  // Sets over at most 64 states live in small_; larger ones in big_.
  std::size_t universe_ = 0;
  std::uint64_t small_ = 0;
  std::vector<std::uint64_t> big_;
};

}  // namespace qpal

template <>
struct std::hash<qpal::StateSet> {
  std::size_t operator()(const qpal::StateSet& s) const noexcept { return s.hash(); }
};
