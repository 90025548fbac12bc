#include "dichot/affine.hpp"

#include <numeric>
#include <ostream>
#include <sstream>

#include "dichot/errors.hpp"

namespace dichot {

AffineMap::AffineMap(std::uint32_t modulus, std::uint32_t translation,
                     std::uint32_t multiplier)
    : n_(modulus), u_(0), v_(0) {
  if (modulus == 0)
    throw PreconditionError("affine map modulus must be positive");
  u_ = translation % n_;
  v_ = multiplier % n_;
  if (std::gcd(v_, n_) != 1 && n_ != 1) {
    std::ostringstream msg;
    msg << "multiplier " << multiplier << " is not a unit mod " << n_;
    throw PreconditionError(msg.str());
  }
}

AffineMap AffineMap::from_permutation(const Permutation &p) {
  const auto n = static_cast<std::uint32_t>(p.degree());
  const std::uint32_t u = p(0);
  const std::uint32_t v = n == 1 ? 0 : (p(1) + n - u) % n;
  AffineMap m(n, u, v);
  for (std::uint32_t x = 0; x < n; ++x)
    if (m(x) != p(x))
      throw PreconditionError("permutation is not an affine map");
  return m;
}

AffineMap AffineMap::after(const AffineMap &other) const {
  if (other.n_ != n_)
    throw PreconditionError("affine maps over different moduli");
  // v(v'x + u') + u
  const std::uint64_t v = std::uint64_t{v_} * other.v_ % n_;
  const std::uint64_t u = (std::uint64_t{v_} * other.u_ + u_) % n_;
  return AffineMap(n_, static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
}

std::ostream &operator<<(std::ostream &os, const AffineMap &m) {
  return os << "e^" << m.translation() << '.' << m.multiplier();
}

std::vector<std::uint32_t> units(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  if (n == 1)
    return {0};
  for (std::uint32_t v = 1; v < n; ++v)
    if (std::gcd(v, n) == 1)
      out.push_back(v);
  return out;
}

std::uint32_t euler_phi(std::uint32_t n) { return static_cast<std::uint32_t>(units(n).size()); }

Permutation affine_to_perm(const AffineMap &m) {
  std::vector<Point> images(m.modulus());
  for (std::uint32_t x = 0; x < m.modulus(); ++x)
    images[x] = m(x);
  return Permutation(std::move(images));
}

namespace {

PermutationGroup generated_affine(std::uint32_t n, std::uint32_t step, std::size_t cap) {
  std::vector<Permutation> gens{affine_to_perm(AffineMap(n, step, 1))};
  for (std::uint32_t v : units(n))
    gens.push_back(affine_to_perm(AffineMap(n, 0, v)));
  return generate_group(n, gens, cap);
}

} // namespace

PermutationGroup affine_group(std::uint32_t n, std::size_t max_order) {
  if (n == 0)
    throw PreconditionError("affine_group: n must be positive");
  return generated_affine(n, 1, max_order);
}

PermutationGroup k0_subgroup(std::uint32_t n, std::size_t max_order) {
  if (n == 0 || n % 2 != 0)
    throw PreconditionError("k0_subgroup: n must be even");
  return generated_affine(n, 2 % n, max_order);
}

std::vector<AffineMap> quasipolarities(std::uint32_t n) {
  if (n == 0 || n % 2 != 0)
    throw PreconditionError("quasipolarities: n must be even");
  std::vector<AffineMap> out;
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v : units(n)) {
      const Permutation p = affine_to_perm(AffineMap(n, u, v));
      bool derangement = true;
      for (Point x = 0; x < n && derangement; ++x)
        derangement = p(x) != x;
      if (derangement && compose(p, p).is_identity())
        out.emplace_back(n, u, v);
    }
  }
  return out;
}

} // namespace dichot
