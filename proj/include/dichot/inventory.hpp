#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "dichot/lattice.hpp"
#include "dichot/perm.hpp"
#include "dichot/polynomial.hpp"
#include "dichot/summary.hpp"

namespace dichot {

/// Largest n accepted by the brute-force subset scans.
inline constexpr std::uint32_t kDefaultInventoryCutoff = 14;

/// Exponent vector of z_1^{e_1} ... z_n^{e_n}: e_d counts the H-orbits of
/// size d on Z/nZ. exponents[0] is unused and always zero.
struct OrbitIndexMonomial {
  std::vector<std::uint32_t> exponents;

  std::uint32_t exponent(std::size_t d) const {
    return d < exponents.size() ? exponents[d] : 0;
  }
  /// Image under z_r -> 1 + x^r.
  IntegerPolynomial substitute_one_plus_power() const;

  friend bool operator==(const OrbitIndexMonomial &, const OrbitIndexMonomial &) = default;
};

OrbitIndexMonomial orbit_index_monomial(const PermutationGroup &h);
OrbitIndexMonomial orbit_index_monomial(std::span<const std::uint32_t> orbit_sizes,
                                        std::uint32_t n);

/// sum_{A : HA = A} x^|A| = prod over H-orbits O of (1 + x^|O|).
IntegerPolynomial invariant_subset_poly(const PermutationGroup &h);
IntegerPolynomial invariant_subset_poly(std::span<const std::uint32_t> orbit_sizes);

/// Q_rig = (1/|G|) sum over every subgroup H of mu(1,H) * invariant_subset_poly(H).
/// `mu` is indexed like the lattice. Throws ConsistencyError if the sum is not
/// divisible by |G|.
IntegerPolynomial qrig_via_moebius(const SubgroupLattice &lattice, std::span<const mpz_class> mu);
/// The same sum grouped by conjugacy class and weighted by class length.
IntegerPolynomial qrig_via_moebius(const LatticeSummary &summary);

/// Q_rig = sum_j b_j P_j(1 + x, 1 + x^2, ...), where b_j is the trivial-class
/// column of the inverse table of marks (the coefficient turning fixed-point
/// counts into the number of regular orbits). Throws ConsistencyError if the
/// rational sum is not an integer polynomial.
IntegerPolynomial qrig_via_tom(const LatticeSummary &summary);
IntegerPolynomial qrig_via_tom(const LatticeSummary &summary, const MarksInverse &inverse);

/// Orbit representatives of rigid subsets of Z/nZ under Aff(Z/nZ), counted by
/// size, from a scan of all 2^n subsets. Throws PreconditionError past
/// `cutoff`.
IntegerPolynomial qrig_bruteforce(std::uint32_t n, std::uint32_t cutoff = kDefaultInventoryCutoff,
                                  unsigned jobs = 1);

mpz_class eval_at_minus_one(const IntegerPolynomial &p);

/// (1/|G|) sum over classes with only even orbits of length * mu * 2^{#orbits}.
/// The value Q_rig(-1) reduces to once odd-orbit terms cancel.
mpz_class even_orbit_sum(const LatticeSummary &summary);
/// (1/|G|) sum over classes not inside K0 of length * mu * 2^{#orbits}.
/// Requires n even.
mpz_class outside_k0_sum(const LatticeSummary &summary);

} // namespace dichot
