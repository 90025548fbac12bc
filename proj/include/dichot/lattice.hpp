#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "dichot/element_set.hpp"
#include "dichot/group_table.hpp"
#include "dichot/matrix.hpp"
#include "dichot/perm.hpp"
#include "dichot/poset.hpp"

namespace dichot {

struct LatticeOptions {
  std::size_t max_order = kDefaultOrderCap;
  unsigned jobs = 1;
};

enum class EnumerationStrategy {
  /// Prime-index normal extensions H < H<g>. Complete for solvable groups;
  /// `enumerate_subgroups` falls back to cyclic joins otherwise.
  kSolvableExtension,
  /// Joins of every known subgroup with every cyclic subgroup until closure.
  kCyclicJoins,
};

/// All subgroups of a permutation group G, as element bitsets over a
/// GroupTable of G.
///
/// Subgroups are sorted by ascending order, ties broken by the lexicographic
/// order of their sorted element lists. Index 0 is the trivial subgroup and
/// the last index is G itself.
class SubgroupLattice {
public:
  /// Sorts `subgroups` canonically and builds the containment table. Each
  /// set must be a subgroup over `table`; duplicates are rejected.
  SubgroupLattice(PermutationGroup group, std::shared_ptr<const GroupTable> table,
                  std::vector<ElementSet> subgroups, unsigned jobs = 1);

  const PermutationGroup &group() const noexcept { return group_; }
  const GroupTable &table() const noexcept { return *table_; }
  const std::shared_ptr<const GroupTable> &table_ptr() const noexcept { return table_; }
  std::size_t size() const noexcept { return subgroups_.size(); }

  const ElementSet &elements(std::size_t i) const { return subgroups_[i]; }
  std::size_t order(std::size_t i) const { return orders_[i]; }
  const std::vector<ElementIndex> &generators(std::size_t i) const { return gens_[i]; }
  PermutationGroup subgroup(std::size_t i) const;

  std::size_t trivial_index() const noexcept { return 0; }
  std::size_t full_index() const noexcept { return subgroups_.size() - 1; }

  /// Subgroup j lies in subgroup i.
  bool contains(std::size_t i, std::size_t j) const { return below_[i].test(j); }
  /// {j : subgroup j <= subgroup i}
  const ElementSet &below(std::size_t i) const { return below_[i]; }

  std::optional<std::size_t> find(const ElementSet &elements) const;
  /// Throws PreconditionError if `h` is not a subgroup of G.
  std::size_t index_of(const PermutationGroup &h) const;
  /// Index of <subgroup i, g>.
  std::size_t join_with(std::size_t i, ElementIndex g) const;
  /// Index of subgroup i intersected with subgroup j.
  std::size_t meet(std::size_t i, std::size_t j) const;

  /// The lattice as a poset ordered by inclusion, indices preserved. Built
  /// on first use.
  std::shared_ptr<const FinitePoset> poset() const;

private:
  PermutationGroup group_;
  std::shared_ptr<const GroupTable> table_;
  std::vector<ElementSet> subgroups_;
  std::vector<std::size_t> orders_;
  std::vector<std::vector<ElementIndex>> gens_;
  std::vector<ElementSet> below_;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> index_;
  mutable std::shared_ptr<const FinitePoset> poset_;
  mutable std::shared_ptr<std::mutex> poset_mutex_ = std::make_shared<std::mutex>();
};

/// Every subgroup of G exactly once. Throws OrderCapExceeded when |G| is over
/// `options.max_order`.
SubgroupLattice enumerate_subgroups(const PermutationGroup &g, const LatticeOptions &options = {});
SubgroupLattice enumerate_subgroups(const PermutationGroup &g, EnumerationStrategy strategy,
                                    const LatticeOptions &options = {});

/// Derived series reaches the trivial group.
bool is_solvable(const GroupTable &table);

/// One conjugacy class of subgroups.
struct SubgroupClass {
  /// Lattice index of the member with the lexicographically smallest
  /// element list.
  std::size_t representative;
  std::vector<std::size_t> members;
  std::size_t order;
  /// Number of conjugates, [G : N_G(H)].
  std::size_t length;
  /// For each class j with a member inside the representative:
  /// (j, how many members of class j lie inside it). Sorted by j; includes
  /// (this class, 1).
  std::vector<std::pair<std::size_t, std::size_t>> subs;
};

/// Conjugacy classes of subgroups in ascending order (trivial class first),
/// ties broken by the representatives' element lists.
class ConjugacyClassTable {
public:
  ConjugacyClassTable(std::shared_ptr<const SubgroupLattice> lattice,
                      std::vector<SubgroupClass> classes);

  const SubgroupLattice &lattice() const noexcept { return *lattice_; }
  const std::shared_ptr<const SubgroupLattice> &lattice_ptr() const noexcept { return lattice_; }
  std::size_t size() const noexcept { return classes_.size(); }
  const SubgroupClass &operator[](std::size_t i) const { return classes_[i]; }
  const std::vector<SubgroupClass> &classes() const noexcept { return classes_; }

  /// Class index of lattice subgroup `s`.
  std::size_t class_of(std::size_t s) const { return class_of_[s]; }
  std::size_t normalizer_order(std::size_t i) const {
    return lattice_->group().order() / classes_[i].length;
  }
  PermutationGroup representative(std::size_t i) const {
    return lattice_->subgroup(classes_[i].representative);
  }

private:
  std::shared_ptr<const SubgroupLattice> lattice_;
  std::vector<SubgroupClass> classes_;
  std::vector<std::size_t> class_of_;
};

ConjugacyClassTable conjugacy_classes(std::shared_ptr<const SubgroupLattice> lattice,
                                      unsigned jobs = 1);

enum class IndexConvention { kAscending, kDescending };
std::string_view to_string(IndexConvention c);

/// Burnside matrix over the class representatives, stored ascending:
/// marks(i, j) = number of cosets in G/G_i fixed by G_j.
struct TableOfMarks {
  std::shared_ptr<const ConjugacyClassTable> classes;
  Matrix<std::int64_t> marks;

  /// The same matrix with |G_1| >= ... >= |G_N| = 1 ordering.
  Matrix<std::int64_t> view(IndexConvention c) const {
    return c == IndexConvention::kAscending ? marks : marks.reversed();
  }
};

/// Counts fixed cosets directly: x G_i is fixed by G_j iff x^-1 y x lies in
/// G_i for every generator y of G_j.
TableOfMarks table_of_marks(std::shared_ptr<const ConjugacyClassTable> classes,
                            unsigned jobs = 1);

struct MarksInverse {
  IndexConvention convention = IndexConvention::kAscending;
  Matrix<mpq_class> entries;
};

/// Exact inverse of a triangular integer marks matrix given in ascending
/// convention (lower triangular), by forward substitution.
MarksInverse invert_marks(const Matrix<std::int64_t> &ascending_marks);
inline MarksInverse invert_marks(const TableOfMarks &tom) { return invert_marks(tom.marks); }

/// mu(1, H_i) per class, by the recursion over classes in increasing order:
/// mu(trivial) = 1, mu(i) = -sum_{j inside i, j != i} nrsubs(i, j) mu(j).
std::vector<mpz_class> bottom_moebius(const ConjugacyClassTable &classes);

/// mu(1, H) for every subgroup, from the Moebius function of the full
/// subgroup poset.
std::vector<mpz_class> bottom_moebius_full(const SubgroupLattice &lattice);

} // namespace dichot
