#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include <gmpxx.h>

#include "dichot/element_set.hpp"

namespace dichot {

/// A finite partial order on {0, ..., m-1} held as dense up-set bitsets.
class FinitePoset {
public:
  /// Builds the relation from `leq` and verifies reflexivity, antisymmetry
  /// and transitivity. Throws PreconditionError naming the first violating
  /// pair (or triple).
  static FinitePoset from_relation(std::size_t size,
                                   const std::function<bool(std::size_t, std::size_t)> &leq);

  std::size_t size() const noexcept { return up_.size(); }
  bool leq(std::size_t x, std::size_t y) const noexcept { return up_[x].test(y); }
  /// {y : x <= y}
  const ElementSet &up_set(std::size_t x) const noexcept { return up_[x]; }
  /// A linear extension: x appears before every y with x < y.
  const std::vector<std::size_t> &linear_extension() const noexcept { return order_; }

private:
  std::vector<ElementSet> up_;
  std::vector<std::size_t> order_;
};

/// A rational-valued function on pairs x <= y of a poset, the elements of its
/// incidence algebra. Values off the support are zero and cannot be set.
class IncidenceFunction {
public:
  explicit IncidenceFunction(std::shared_ptr<const FinitePoset> poset);

  const FinitePoset &poset() const noexcept { return *poset_; }
  const std::shared_ptr<const FinitePoset> &poset_ptr() const noexcept { return poset_; }

  const mpq_class &operator()(std::size_t x, std::size_t y) const {
    return values_[x * poset_->size() + y];
  }
  /// Throws PreconditionError when x <= y fails and `value` is nonzero.
  void set(std::size_t x, std::size_t y, mpq_class value);

  friend bool operator==(const IncidenceFunction &a, const IncidenceFunction &b);

private:
  std::shared_ptr<const FinitePoset> poset_;
  std::vector<mpq_class> values_;
};

/// I(x, y) = [x = y]
IncidenceFunction identity_function(std::shared_ptr<const FinitePoset> poset);
/// zeta(x, y) = [x <= y]
IncidenceFunction zeta(std::shared_ptr<const FinitePoset> poset);
/// mu(x, x) = 1, mu(x, y) = -sum_{x <= z < y} mu(x, z).
IncidenceFunction moebius(std::shared_ptr<const FinitePoset> poset);
/// (alpha beta)(x, y) = sum_z alpha(x, z) beta(z, y). Both must share a poset.
IncidenceFunction convolve(const IncidenceFunction &alpha, const IncidenceFunction &beta);
/// Returns beta * mu, the unique alpha with alpha * zeta = beta.
IncidenceFunction moebius_invert(const IncidenceFunction &beta);

/// The single row mu(x, .) in O(m^2) word operations, for posets too large
/// for a dense rational table.
std::vector<mpz_class> moebius_row(const FinitePoset &poset, std::size_t x);

} // namespace dichot
