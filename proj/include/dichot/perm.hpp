#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace dichot {

using Point = std::uint32_t;

/// Default bound on the order of any group built by closure.
inline constexpr std::size_t kDefaultOrderCap = 2000;

/// A bijection of {0, ..., n-1}, stored as its image list.
class Permutation {
public:
  /// Validates that `images` is a bijection of {0, ..., images.size()-1}.
  explicit Permutation(std::vector<Point> images);
  Permutation(std::initializer_list<Point> images)
      : Permutation(std::vector<Point>(images)) {}

  static Permutation identity(std::size_t degree);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  std::span<const Point> images() const noexcept { return images_; }

  Permutation inverse() const;
  bool is_identity() const noexcept;
  std::size_t order() const;

  friend bool operator==(const Permutation &, const Permutation &) = default;
  friend std::strong_ordering operator<=>(const Permutation &a,
                                          const Permutation &b) = default;

private:
  struct Unchecked {};
  Permutation(std::vector<Point> images, Unchecked) noexcept
      : images_(std::move(images)) {}

  std::vector<Point> images_;

  friend Permutation compose(const Permutation &, const Permutation &);
};

/// Composition with the right factor acting first: compose(p, q)(x) = p(q(x)).
/// Every group-theoretic identity in this library uses this convention.
Permutation compose(const Permutation &p, const Permutation &q);

std::ostream &operator<<(std::ostream &os, const Permutation &p);

struct PermutationHash {
  std::size_t operator()(const Permutation &p) const noexcept;
};

/// A finite permutation group with its elements materialized.
///
/// `elements()` is sorted in the lexicographic order of image lists, so the
/// identity is always element 0. Two groups are equal iff their element lists
/// are equal, which is the canonical form used for deduplication.
class PermutationGroup {
public:
  /// The trivial group of the given degree.
  explicit PermutationGroup(std::size_t degree);

  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  std::span<const Permutation> generators() const noexcept { return generators_; }
  std::span<const Permutation> elements() const noexcept { return elements_; }

  bool contains(const Permutation &p) const;
  bool is_trivial() const noexcept { return elements_.size() == 1; }

  friend bool operator==(const PermutationGroup &a, const PermutationGroup &b) {
    return a.degree_ == b.degree_ && a.elements_ == b.elements_;
  }

private:
  PermutationGroup(std::size_t degree, std::vector<Permutation> generators,
                   std::vector<Permutation> elements);

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;

  friend PermutationGroup generate_group(std::size_t, std::span<const Permutation>,
                                         std::size_t);
  friend PermutationGroup group_from_elements(std::size_t, std::vector<Permutation>,
                                              std::vector<Permutation>);
};

/// Closure of `gens` under composition. Throws OrderCapExceeded as soon as the
/// closure grows past `max_order`, PreconditionError on a degree mismatch.
PermutationGroup generate_group(std::size_t degree, std::span<const Permutation> gens,
                                std::size_t max_order = kDefaultOrderCap);

/// Wraps an element list already known to form a group (it is sorted but not
/// re-closed). Used by code that computes subgroups through a group table.
PermutationGroup group_from_elements(std::size_t degree,
                                     std::vector<Permutation> generators,
                                     std::vector<Permutation> elements);

/// Orbits of H on {0, ..., n-1}, each sorted, listed by least element.
std::vector<std::vector<Point>> orbits(const PermutationGroup &h);

/// Sizes of the orbits of H, in the order `orbits` lists them.
std::vector<std::size_t> orbit_sizes(const PermutationGroup &h);

/// {g in G : g(A) = A}. `subset` holds the points of A in any order.
PermutationGroup setwise_stabilizer(const PermutationGroup &g,
                                    std::span<const Point> subset);

/// True iff every element of H lies in K.
bool is_subgroup(const PermutationGroup &k, const PermutationGroup &h);

/// <H, extra> inside `ambient`. Every extra element must lie in `ambient`;
/// the result is the closure of H's generators together with `extra`.
PermutationGroup join(const PermutationGroup &ambient, const PermutationGroup &h,
                      std::span<const Permutation> extra,
                      std::size_t max_order = kDefaultOrderCap);

} // namespace dichot
