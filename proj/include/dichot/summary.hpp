#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "dichot/lattice.hpp"
#include "dichot/matrix.hpp"

namespace dichot {

/// Per-class data of the subgroup lattice of Aff(Z/nZ): everything the
/// class-level formulas need, detached from the group itself so it can be
/// cached on disk.
struct ClassRecord {
  std::uint64_t order = 0;
  std::uint64_t length = 0;
  mpz_class mu;
  /// Orbit sizes of the representative on Z/nZ, listed by least point.
  std::vector<std::uint32_t> orbit_sizes;
  /// Representative lies in K0. Empty for odd n, where K0 is not defined.
  std::optional<bool> in_k0;

  friend bool operator==(const ClassRecord &, const ClassRecord &) = default;
};

struct LatticeSummary {
  std::uint32_t n = 0;
  std::uint64_t group_order = 0;
  /// Ascending, the same indexing as `marks`.
  std::vector<ClassRecord> classes;
  /// Ascending table of marks.
  Matrix<std::int64_t> marks;

  std::uint64_t subgroup_count() const {
    std::uint64_t total = 0;
    for (const auto &c : classes)
      total += c.length;
    return total;
  }

  friend bool operator==(const LatticeSummary &, const LatticeSummary &) = default;
};

/// Builds the lattice, classes, table of marks and class-level mu for
/// Aff(Z/nZ). Throws OrderCapExceeded past `options.max_order`.
LatticeSummary summarize_affine_lattice(std::uint32_t n, const LatticeOptions &options = {});

/// Summary from already computed tables; `k0` may be null for odd n.
LatticeSummary summarize(const TableOfMarks &tom, const std::vector<mpz_class> &class_mu,
                         const PermutationGroup *k0);

} // namespace dichot
