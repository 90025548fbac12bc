#include "dichot/summary.hpp"

#include "dichot/affine.hpp"

namespace dichot {

LatticeSummary summarize(const TableOfMarks &tom, const std::vector<mpz_class> &class_mu,
                         const PermutationGroup *k0) {
  const ConjugacyClassTable &ct = *tom.classes;
  const SubgroupLattice &lat = ct.lattice();
  LatticeSummary out;
  out.n = static_cast<std::uint32_t>(lat.group().degree());
  out.group_order = lat.group().order();
  out.marks = tom.marks;

  std::optional<ElementSet> k0_set;
  if (k0)
    k0_set = lat.table().to_set(*k0);
  for (std::size_t i = 0; i < ct.size(); ++i) {
    ClassRecord r;
    r.order = ct[i].order;
    r.length = ct[i].length;
    r.mu = class_mu[i];
    for (std::size_t s : orbit_sizes(ct.representative(i)))
      r.orbit_sizes.push_back(static_cast<std::uint32_t>(s));
    if (k0_set)
      r.in_k0 = lat.elements(ct[i].representative).is_subset_of(*k0_set);
    out.classes.push_back(std::move(r));
  }
  return out;
}

LatticeSummary summarize_affine_lattice(std::uint32_t n, const LatticeOptions &options) {
  PermutationGroup g = affine_group(n, options.max_order);
  auto lattice = std::make_shared<const SubgroupLattice>(enumerate_subgroups(g, options));
  auto classes = std::make_shared<const ConjugacyClassTable>(conjugacy_classes(lattice, options.jobs));
  const TableOfMarks tom = table_of_marks(classes, options.jobs);
  const auto mu = bottom_moebius(*classes);
  if (n % 2 == 0) {
    const PermutationGroup k0 = k0_subgroup(n, options.max_order);
    return summarize(tom, mu, &k0);
  }
  return summarize(tom, mu, nullptr);
}

} // namespace dichot
