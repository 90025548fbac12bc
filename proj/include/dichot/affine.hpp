#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "dichot/perm.hpp"

namespace dichot {

/// The map e^u.v : x -> v*x + u on Z/nZ, with v a unit.
class AffineMap {
public:
  /// Reduces u and v mod n; throws PreconditionError if gcd(v, n) != 1.
  AffineMap(std::uint32_t modulus, std::uint32_t translation, std::uint32_t multiplier);

  /// Reads u = p(0) and v = p(1) - p(0) back from an affine permutation.
  /// Throws PreconditionError if `p` is not affine.
  static AffineMap from_permutation(const Permutation &p);

  std::uint32_t modulus() const noexcept { return n_; }
  std::uint32_t translation() const noexcept { return u_; }
  std::uint32_t multiplier() const noexcept { return v_; }

  std::uint32_t operator()(std::uint32_t x) const noexcept {
    return static_cast<std::uint32_t>((std::uint64_t{v_} * x + u_) % n_);
  }

  /// (this after other)
  AffineMap after(const AffineMap &other) const;

  friend auto operator<=>(const AffineMap &, const AffineMap &) = default;

private:
  std::uint32_t n_, u_, v_;
};

std::ostream &operator<<(std::ostream &os, const AffineMap &m);

/// Residues v in [0, n) with gcd(v, n) = 1.
std::vector<std::uint32_t> units(std::uint32_t n);
/// Euler phi, by counting units.
std::uint32_t euler_phi(std::uint32_t n);

Permutation affine_to_perm(const AffineMap &m);

/// Aff(Z/nZ) = <e^1.1, e^0.v : v a unit>, of order n*phi(n).
PermutationGroup affine_group(std::uint32_t n, std::size_t max_order = kDefaultOrderCap);

/// K0 = <e^2.1, e^0.v : v a unit>, the maps with even translation part.
/// Index 2 in Aff(Z/nZ). Requires n even.
PermutationGroup k0_subgroup(std::uint32_t n, std::size_t max_order = kDefaultOrderCap);

/// Affine involutions without fixed points, sorted by (u, v). Requires n even.
std::vector<AffineMap> quasipolarities(std::uint32_t n);

} // namespace dichot
