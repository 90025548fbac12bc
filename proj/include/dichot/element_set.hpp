#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace dichot {

/// Fixed-width bitset over the element indices of a GroupTable. Subgroups
/// are stored this way inside the lattice code.
class ElementSet {
public:
  ElementSet() = default;
  explicit ElementSet(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}

  std::size_t width() const noexcept { return width_; }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_)
      c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool is_subset_of(const ElementSet &other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i])
        return false;
    return true;
  }

  ElementSet &operator&=(const ElementSet &other) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] &= other.words_[i];
    return *this;
  }
  ElementSet &operator|=(const ElementSet &other) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] |= other.words_[i];
    return *this;
  }

  /// Calls f(i) for every member index, ascending.
  template <class F> void for_each(F &&f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  /// Lexicographic order of the ascending member lists, for sets of equal size.
  /// The first differing index decides: whichever set holds it is smaller.
  static std::strong_ordering compare_members(const ElementSet &a, const ElementSet &b) noexcept {
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
      std::uint64_t diff = a.words_[w] ^ b.words_[w];
      if (diff) {
        std::uint64_t low = diff & (~diff + 1);
        return (a.words_[w] & low) ? std::strong_ordering::less
                                   : std::strong_ordering::greater;
      }
    }
    return std::strong_ordering::equal;
  }

  friend bool operator==(const ElementSet &, const ElementSet &) = default;

  std::size_t hash() const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (auto w : words_)
      h = (h ^ w) * 0x100000001b3ull + (h >> 29);
    return h;
  }

private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet &s) const noexcept { return s.hash(); }
};

} // namespace dichot
