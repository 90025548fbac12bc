#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "dichot/element_set.hpp"
#include "dichot/perm.hpp"

namespace dichot {

using ElementIndex = std::uint32_t;

/// Multiplication table of a materialized permutation group.
///
/// Element indices follow the sorted element list of the source group, so
/// index 0 is the identity and index order equals permutation order. The
/// product follows the library convention: mul(a, b) acts as b first, then a.
class GroupTable {
public:
  explicit GroupTable(const PermutationGroup &group);

  std::size_t order() const noexcept { return elements_.size(); }
  std::size_t degree() const noexcept { return degree_; }
  const Permutation &element(ElementIndex i) const { return elements_[i]; }
  /// Throws PreconditionError if `p` is not an element.
  ElementIndex index_of(const Permutation &p) const;

  ElementIndex mul(ElementIndex a, ElementIndex b) const noexcept {
    return table_[static_cast<std::size_t>(a) * elements_.size() + b];
  }
  ElementIndex inv(ElementIndex a) const noexcept { return inverse_[a]; }
  /// g h g^-1
  ElementIndex conj(ElementIndex g, ElementIndex h) const noexcept {
    return mul(mul(g, h), inverse_[g]);
  }
  std::size_t element_order(ElementIndex a) const noexcept { return orders_[a]; }

  ElementSet trivial() const;
  ElementSet full() const;
  /// Subgroup generated by `gens`.
  ElementSet closure(std::span<const ElementIndex> gens) const;
  /// g H g^-1
  ElementSet conjugate(ElementIndex g, const ElementSet &h) const;

  ElementSet to_set(const PermutationGroup &h) const;
  PermutationGroup to_group(const ElementSet &h, std::span<const ElementIndex> gens) const;

  /// A short generating list: greedily adds the smallest element not yet
  /// generated.
  std::vector<ElementIndex> small_generating_set(const ElementSet &h) const;

private:
  std::size_t degree_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, ElementIndex, PermutationHash> index_;
  std::vector<ElementIndex> table_;
  std::vector<ElementIndex> inverse_;
  std::vector<std::size_t> orders_;
};

} // namespace dichot
