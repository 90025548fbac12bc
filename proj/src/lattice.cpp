#include "dichot/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "dichot/errors.hpp"
#include "dichot/parallel.hpp"

namespace dichot {

namespace {

bool is_prime(std::size_t r) {
  if (r < 2)
    return false;
  for (std::size_t d = 2; d * d <= r; ++d)
    if (r % d == 0)
      return false;
  return true;
}

void check_cap(const PermutationGroup &g, std::size_t max_order) {
  if (g.order() > max_order) {
    std::ostringstream msg;
    msg << "group order " << g.order() << " exceeds cap " << max_order;
    throw OrderCapExceeded(msg.str());
  }
}

// Subgroups K = H<g> with H normal in K of prime index, for one H.
std::vector<ElementSet> prime_extensions(const GroupTable &t, const ElementSet &h,
                                         const std::vector<ElementIndex> &h_gens) {
  const std::size_t order = t.order();
  std::vector<ElementSet> out;
  ElementSet covered = h;
  for (ElementIndex g = 0; g < order; ++g) {
    if (covered.test(g))
      continue;
    bool normalizes = true;
    for (ElementIndex y : h_gens)
      if (!h.test(t.conj(g, y))) {
        normalizes = false;
        break;
      }
    if (!normalizes)
      continue;
    // smallest r > 0 with g^r in H
    std::size_t r = 1;
    ElementIndex power = g;
    while (!h.test(power)) {
      power = t.mul(power, g);
      ++r;
    }
    if (!is_prime(r))
      continue;
    ElementSet k = h;
    ElementIndex gi = 0;
    for (std::size_t i = 1; i < r; ++i) {
      gi = t.mul(gi, g);
      h.for_each([&](std::size_t x) { k.set(t.mul(static_cast<ElementIndex>(x), gi)); });
    }
    covered |= k;
    out.push_back(std::move(k));
  }
  return out;
}

std::vector<ElementSet> solvable_extension(const GroupTable &t, unsigned jobs) {
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> known;
  std::vector<ElementSet> subs{t.trivial()};
  std::vector<std::vector<ElementIndex>> gens{{}};
  known.emplace(subs.front(), 0);

  std::vector<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<std::vector<ElementSet>> found(frontier.size());
    parallel_for(frontier.size(), jobs, [&](std::size_t f) {
      const std::size_t i = frontier[f];
      found[f] = prime_extensions(t, subs[i], gens[i]);
    });
    std::vector<std::size_t> next;
    for (auto &list : found) {
      for (auto &k : list) {
        if (known.contains(k))
          continue;
        known.emplace(k, subs.size());
        next.push_back(subs.size());
        gens.push_back(t.small_generating_set(k));
        subs.push_back(std::move(k));
      }
    }
    frontier = std::move(next);
  }
  return subs;
}

std::vector<ElementSet> cyclic_joins(const GroupTable &t) {
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> known;
  std::vector<ElementSet> subs;
  std::vector<std::vector<ElementIndex>> gens;
  std::vector<ElementIndex> cyclic_gens;
  auto add = [&](ElementSet s, std::vector<ElementIndex> g) {
    if (known.contains(s))
      return false;
    known.emplace(s, subs.size());
    subs.push_back(std::move(s));
    gens.push_back(std::move(g));
    return true;
  };
  for (ElementIndex g = 0; g < t.order(); ++g) {
    const ElementIndex gen[] = {g};
    if (add(t.closure(gen), {g}) && g != 0)
      cyclic_gens.push_back(g);
  }
  for (std::size_t i = 0; i < subs.size(); ++i) {
    for (ElementIndex g : cyclic_gens) {
      if (subs[i].test(g))
        continue;
      auto extended = gens[i];
      extended.push_back(g);
      ElementSet k = t.closure(extended);
      add(std::move(k), std::move(extended));
    }
  }
  return subs;
}

ElementSet commutator_subgroup(const GroupTable &t, const ElementSet &h) {
  std::vector<ElementIndex> comms;
  ElementSet seen(t.order());
  const auto members = h.members();
  for (std::size_t a : members)
    for (std::size_t b : members) {
      const auto x = static_cast<ElementIndex>(a), y = static_cast<ElementIndex>(b);
      const ElementIndex c = t.mul(t.mul(t.inv(x), t.inv(y)), t.mul(x, y));
      if (!seen.test(c)) {
        seen.set(c);
        comms.push_back(c);
      }
    }
  return t.closure(comms);
}

} // namespace

bool is_solvable(const GroupTable &table) {
  ElementSet current = table.full();
  for (;;) {
    if (current.count() == 1)
      return true;
    ElementSet next = commutator_subgroup(table, current);
    if (next == current)
      return false;
    current = std::move(next);
  }
}

SubgroupLattice::SubgroupLattice(PermutationGroup group, std::shared_ptr<const GroupTable> table,
                                 std::vector<ElementSet> subgroups, unsigned jobs)
    : group_(std::move(group)), table_(std::move(table)), subgroups_(std::move(subgroups)) {
  if (subgroups_.empty())
    throw PreconditionError("subgroup lattice needs at least the trivial subgroup");
  std::vector<std::size_t> counts(subgroups_.size());
  for (std::size_t i = 0; i < subgroups_.size(); ++i)
    counts[i] = subgroups_[i].count();
  std::vector<std::size_t> perm(subgroups_.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (counts[a] != counts[b])
      return counts[a] < counts[b];
    return ElementSet::compare_members(subgroups_[a], subgroups_[b]) < 0;
  });
  std::vector<ElementSet> sorted;
  sorted.reserve(perm.size());
  for (std::size_t p : perm) {
    sorted.push_back(std::move(subgroups_[p]));
    orders_.push_back(counts[p]);
  }
  subgroups_ = std::move(sorted);

  for (std::size_t i = 0; i < subgroups_.size(); ++i)
    if (!index_.emplace(subgroups_[i], i).second)
      throw ConsistencyError("subgroup lattice contains a duplicate subgroup");

  const std::size_t s = subgroups_.size();
  gens_.resize(s);
  below_.assign(s, ElementSet(s));
  parallel_for(s, jobs, [&](std::size_t i) {
    gens_[i] = table_->small_generating_set(subgroups_[i]);
    for (std::size_t j = 0; j <= i; ++j)
      if (orders_[i] % orders_[j] == 0 && subgroups_[j].is_subset_of(subgroups_[i]))
        below_[i].set(j);
  });
}

PermutationGroup SubgroupLattice::subgroup(std::size_t i) const {
  return table_->to_group(subgroups_[i], gens_[i]);
}

std::optional<std::size_t> SubgroupLattice::find(const ElementSet &elements) const {
  auto it = index_.find(elements);
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

std::size_t SubgroupLattice::index_of(const PermutationGroup &h) const {
  auto found = find(table_->to_set(h));
  if (!found)
    throw PreconditionError("group is not a subgroup in this lattice");
  return *found;
}

std::size_t SubgroupLattice::join_with(std::size_t i, ElementIndex g) const {
  if (subgroups_[i].test(g))
    return i;
  auto gens = gens_[i];
  gens.push_back(g);
  auto found = find(table_->closure(gens));
  if (!found)
    throw ConsistencyError("join of two subgroups is missing from the lattice");
  return *found;
}

std::size_t SubgroupLattice::meet(std::size_t i, std::size_t j) const {
  ElementSet m = subgroups_[i];
  m &= subgroups_[j];
  auto found = find(m);
  if (!found)
    throw ConsistencyError("intersection of two subgroups is missing from the lattice");
  return *found;
}

std::shared_ptr<const FinitePoset> SubgroupLattice::poset() const {
  std::lock_guard lock(*poset_mutex_);
  if (!poset_)
    poset_ = std::make_shared<const FinitePoset>(FinitePoset::from_relation(
        size(), [this](std::size_t x, std::size_t y) { return contains(y, x); }));
  return poset_;
}

SubgroupLattice enumerate_subgroups(const PermutationGroup &g, const LatticeOptions &options) {
  check_cap(g, options.max_order);
  auto table = std::make_shared<const GroupTable>(g);
  const auto strategy = is_solvable(*table) ? EnumerationStrategy::kSolvableExtension
                                            : EnumerationStrategy::kCyclicJoins;
  auto subs = strategy == EnumerationStrategy::kSolvableExtension
                  ? solvable_extension(*table, options.jobs)
                  : cyclic_joins(*table);
  return SubgroupLattice(g, std::move(table), std::move(subs), options.jobs);
}

SubgroupLattice enumerate_subgroups(const PermutationGroup &g, EnumerationStrategy strategy,
                                    const LatticeOptions &options) {
  check_cap(g, options.max_order);
  auto table = std::make_shared<const GroupTable>(g);
  if (strategy == EnumerationStrategy::kSolvableExtension && !is_solvable(*table))
    throw PreconditionError("prime-index extension needs a solvable group");
  auto subs = strategy == EnumerationStrategy::kSolvableExtension
                  ? solvable_extension(*table, options.jobs)
                  : cyclic_joins(*table);
  return SubgroupLattice(g, std::move(table), std::move(subs), options.jobs);
}

ConjugacyClassTable::ConjugacyClassTable(std::shared_ptr<const SubgroupLattice> lattice,
                                         std::vector<SubgroupClass> classes)
    : lattice_(std::move(lattice)), classes_(std::move(classes)),
      class_of_(lattice_->size(), 0) {
  for (std::size_t c = 0; c < classes_.size(); ++c)
    for (std::size_t m : classes_[c].members)
      class_of_[m] = c;
}

ConjugacyClassTable conjugacy_classes(std::shared_ptr<const SubgroupLattice> lattice,
                                      unsigned jobs) {
  const SubgroupLattice &lat = *lattice;
  const GroupTable &t = lat.table();
  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> class_of(lat.size(), kUnassigned);
  std::vector<SubgroupClass> classes;

  // Ascending lattice order means the first unassigned subgroup is the
  // smallest member of its class, hence the canonical representative.
  for (std::size_t s = 0; s < lat.size(); ++s) {
    if (class_of[s] != kUnassigned)
      continue;
    SubgroupClass c;
    c.representative = s;
    c.order = lat.order(s);
    for (ElementIndex g = 0; g < t.order(); ++g) {
      auto found = lat.find(t.conjugate(g, lat.elements(s)));
      if (!found)
        throw ConsistencyError("conjugate subgroup missing from the lattice");
      if (class_of[*found] == kUnassigned) {
        class_of[*found] = classes.size();
        c.members.push_back(*found);
      }
    }
    std::sort(c.members.begin(), c.members.end());
    c.length = c.members.size();
    classes.push_back(std::move(c));
  }

  parallel_for(classes.size(), jobs, [&](std::size_t i) {
    std::vector<std::size_t> count(classes.size(), 0);
    lat.below(classes[i].representative).for_each([&](std::size_t s) { ++count[class_of[s]]; });
    for (std::size_t j = 0; j <= i; ++j)
      if (count[j])
        classes[i].subs.emplace_back(j, count[j]);
  });
  return ConjugacyClassTable(std::move(lattice), std::move(classes));
}

std::string_view to_string(IndexConvention c) {
  return c == IndexConvention::kAscending ? "ascending" : "descending";
}

TableOfMarks table_of_marks(std::shared_ptr<const ConjugacyClassTable> classes, unsigned jobs) {
  const ConjugacyClassTable &ct = *classes;
  const SubgroupLattice &lat = ct.lattice();
  const GroupTable &t = lat.table();
  const std::size_t n = ct.size();
  Matrix<std::int64_t> marks(n, n, 0);

  parallel_for(n, jobs, [&](std::size_t i) {
    const ElementSet &gi = lat.elements(ct[i].representative);
    std::vector<ElementIndex> cosets;
    ElementSet seen(t.order());
    for (ElementIndex x = 0; x < t.order(); ++x) {
      if (seen.test(x))
        continue;
      cosets.push_back(x);
      gi.for_each([&](std::size_t h) { seen.set(t.mul(x, static_cast<ElementIndex>(h))); });
    }
    for (std::size_t j = 0; j <= i; ++j) {
      if (ct[i].order % ct[j].order != 0)
        continue;
      const auto &gens = lat.generators(ct[j].representative);
      std::int64_t fixed = 0;
      for (ElementIndex x : cosets) {
        const ElementIndex xinv = t.inv(x);
        bool all = true;
        for (ElementIndex y : gens)
          if (!gi.test(t.mul(t.mul(xinv, y), x))) {
            all = false;
            break;
          }
        fixed += all;
      }
      marks(i, j) = fixed;
    }
  });
  return TableOfMarks{std::move(classes), std::move(marks)};
}

MarksInverse invert_marks(const Matrix<std::int64_t> &m) {
  const std::size_t n = m.rows();
  if (m.cols() != n)
    throw PreconditionError("marks matrix must be square");
  for (std::size_t i = 0; i < n; ++i) {
    if (m(i, i) == 0)
      throw PreconditionError("marks matrix has a zero diagonal entry");
    for (std::size_t j = i + 1; j < n; ++j)
      if (m(i, j) != 0)
        throw PreconditionError("marks matrix is not lower triangular in ascending order");
  }
  // Solve M X = I column by column; X is lower triangular as well.
  Matrix<mpq_class> inv(n, n, mpq_class(0));
  for (std::size_t c = 0; c < n; ++c) {
    inv(c, c) = mpq_class(mpz_class(1), mpz_class(static_cast<long>(m(c, c))));
    inv(c, c).canonicalize();
    for (std::size_t r = c + 1; r < n; ++r) {
      mpq_class s = 0;
      for (std::size_t k = c; k < r; ++k)
        if (m(r, k) != 0)
          s += mpq_class(mpz_class(static_cast<long>(m(r, k)))) * inv(k, c);
      inv(r, c) = -s / mpq_class(mpz_class(static_cast<long>(m(r, r))));
    }
  }
  return MarksInverse{IndexConvention::kAscending, std::move(inv)};
}

std::vector<mpz_class> bottom_moebius(const ConjugacyClassTable &classes) {
  std::vector<mpz_class> mu(classes.size());
  // Classes are already sorted by increasing order.
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].order == 1) {
      mu[i] = 1;
      continue;
    }
    mpz_class s = 0;
    for (auto [j, nr] : classes[i].subs)
      if (j != i)
        s += mpz_class(static_cast<unsigned long>(nr)) * mu[j];
    mu[i] = -s;
  }
  return mu;
}

std::vector<mpz_class> bottom_moebius_full(const SubgroupLattice &lattice) {
  return moebius_row(*lattice.poset(), lattice.trivial_index());
}

} // namespace dichot
