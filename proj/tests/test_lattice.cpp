#include "doctest.h"

#include <algorithm>
#include <memory>
#include <set>

#include "dichot/affine.hpp"
#include "dichot/errors.hpp"
#include "dichot/lattice.hpp"

using namespace dichot;

namespace {

struct Tables {
  std::shared_ptr<const SubgroupLattice> lattice;
  std::shared_ptr<const ConjugacyClassTable> classes;
  TableOfMarks tom;
};

Tables build(const PermutationGroup &g, unsigned jobs = 1) {
  Tables t;
  t.lattice = std::make_shared<const SubgroupLattice>(enumerate_subgroups(g, {kDefaultOrderCap, jobs}));
  t.classes = std::make_shared<const ConjugacyClassTable>(conjugacy_classes(t.lattice, jobs));
  t.tom = table_of_marks(t.classes, jobs);
  return t;
}

PermutationGroup symmetric(std::size_t degree) {
  std::vector<Point> cycle(degree);
  for (Point i = 0; i < degree; ++i)
    cycle[i] = static_cast<Point>((i + 1) % degree);
  std::vector<Point> swap(degree);
  for (Point i = 0; i < degree; ++i)
    swap[i] = i;
  std::swap(swap[0], swap[1]);
  const std::vector<Permutation> gens{Permutation(cycle), Permutation(swap)};
  return generate_group(degree, gens);
}

// Counts subsets of G closed under composition, which for a finite group are
// exactly the nonempty subgroups. Independent of the lattice code.
std::size_t count_closed_subsets(const PermutationGroup &g) {
  const auto elems = g.elements();
  const std::size_t m = elems.size();
  REQUIRE(m <= 16);
  std::vector<std::vector<std::size_t>> product(m, std::vector<std::size_t>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      product[a][b] = static_cast<std::size_t>(
          std::find(elems.begin(), elems.end(), compose(elems[a], elems[b])) - elems.begin());
  std::size_t count = 0;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    bool closed = true;
    for (std::size_t a = 0; a < m && closed; ++a)
      for (std::size_t b = 0; b < m && closed; ++b)
        if ((mask >> a & 1) && (mask >> b & 1) && !(mask >> product[a][b] & 1))
          closed = false;
    count += closed;
  }
  return count;
}

Matrix<mpq_class> to_rational(const Matrix<std::int64_t> &m) {
  Matrix<mpq_class> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(i, j) = mpq_class(mpz_class(static_cast<long>(m(i, j))));
  return out;
}

bool is_identity_product(const Matrix<std::int64_t> &marks, const Matrix<mpq_class> &inverse) {
  const auto a = to_rational(marks);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      mpq_class s = 0;
      for (std::size_t l = 0; l < a.cols(); ++l)
        s += a(i, l) * inverse(l, j);
      if (s != (i == j ? 1 : 0))
        return false;
    }
  return true;
}

void check_tom_structure(const Tables &t) {
  const auto &cls = *t.classes;
  const std::size_t g_order = t.lattice->group().order();
  for (std::size_t i = 0; i < cls.size(); ++i) {
    CHECK(t.tom.marks(i, 0) == static_cast<std::int64_t>(g_order / cls[i].order));
    CHECK(t.tom.marks(i, i) == static_cast<std::int64_t>(cls.normalizer_order(i) / cls[i].order));
    for (std::size_t j = i + 1; j < cls.size(); ++j)
      CHECK(t.tom.marks(i, j) == 0);
  }
  CHECK(is_identity_product(t.tom.marks, invert_marks(t.tom).entries));
}

} // namespace

TEST_CASE("small lattices") {
  SUBCASE("C2") {
    const auto t = build(affine_group(2));
    CHECK(t.lattice->size() == 2);
    Matrix<std::int64_t> desc(2, 2);
    desc(0, 0) = 1;
    desc(0, 1) = 1;
    desc(1, 1) = 2;
    CHECK(t.tom.view(IndexConvention::kDescending) == desc);

    const auto inv = invert_marks(t.tom);
    CHECK(inv.convention == IndexConvention::kAscending);
    const auto inv_desc = inv.entries.reversed();
    CHECK(inv_desc(0, 0) == 1);
    CHECK(inv_desc(0, 1) == mpq_class(-1, 2));
    CHECK(inv_desc(1, 0) == 0);
    CHECK(inv_desc(1, 1) == mpq_class(1, 2));
  }
  SUBCASE("S3 as Aff(Z/3Z)") {
    const auto t = build(affine_group(3));
    CHECK(t.lattice->size() == 6);
    REQUIRE(t.classes->size() == 4);
    std::vector<std::size_t> lengths, orders;
    for (const auto &c : t.classes->classes()) {
      lengths.push_back(c.length);
      orders.push_back(c.order);
    }
    CHECK(lengths == std::vector<std::size_t>{1, 3, 1, 1});
    CHECK(orders == std::vector<std::size_t>{1, 2, 3, 6});

    const std::int64_t fixture[4][4] = {{6, 0, 0, 0}, {3, 1, 0, 0}, {2, 0, 2, 0}, {1, 1, 1, 1}};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        CHECK(t.tom.marks(i, j) == fixture[i][j]);
    const auto inv = invert_marks(t.tom);
    CHECK(is_identity_product(t.tom.marks, inv.entries));
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(inv.entries(i, i) == mpq_class(1, static_cast<unsigned long>(fixture[i][i])));
    CHECK(to_string(IndexConvention::kAscending) == "ascending");
  }
  SUBCASE("S4 and S5") {
    CHECK(enumerate_subgroups(symmetric(4)).size() == 30);
    const auto s5 = symmetric(5);
    CHECK_FALSE(is_solvable(GroupTable(s5)));
    CHECK(enumerate_subgroups(s5).size() == 156);
  }
}

TEST_CASE("subgroup count of Aff(Z/6Z) against a subset scan") {
  const auto g = affine_group(6);
  const std::size_t oracle = count_closed_subsets(g);
  CHECK(oracle == 16);
  CHECK(enumerate_subgroups(g).size() == oracle);
  CHECK(count_closed_subsets(affine_group(3)) == 6);
}

TEST_CASE("enumeration strategies agree") {
  for (std::uint32_t n : {4u, 6u, 8u, 9u, 10u, 12u, 14u}) {
    const auto g = affine_group(n);
    const auto a = enumerate_subgroups(g, EnumerationStrategy::kSolvableExtension);
    const auto b = enumerate_subgroups(g, EnumerationStrategy::kCyclicJoins);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      CHECK(a.subgroup(i) == b.subgroup(i));
    CHECK(is_solvable(a.table()));
  }
  CHECK_THROWS_AS(enumerate_subgroups(affine_group(12), {40, 1}), OrderCapExceeded);
}

TEST_CASE("lattice structure") {
  for (std::uint32_t n : {6u, 10u, 12u}) {
    const auto g = affine_group(n);
    const auto lattice = enumerate_subgroups(g);
    CHECK(lattice.order(lattice.trivial_index()) == 1);
    CHECK(lattice.subgroup(lattice.full_index()) == g);
    std::set<std::size_t> seen;
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      CHECK(g.order() % lattice.order(i) == 0);
      if (i > 0)
        CHECK(lattice.order(i - 1) <= lattice.order(i));
      const auto h = lattice.subgroup(i);
      CHECK(lattice.index_of(h) == i);
      for (std::size_t j = 0; j < lattice.size(); ++j) {
        const bool inside = lattice.elements(j).is_subset_of(lattice.elements(i));
        CHECK(lattice.contains(i, j) == inside);
        ElementSet meet = lattice.elements(i);
        meet &= lattice.elements(j);
        REQUIRE(lattice.find(meet).has_value());
        CHECK(lattice.meet(i, j) == *lattice.find(meet));
      }
    }
  }
}

TEST_CASE("conjugacy classes") {
  for (std::uint32_t n : {6u, 10u, 12u}) {
    const auto t = build(affine_group(n));
    std::size_t total = 0;
    std::vector<bool> covered(t.lattice->size(), false);
    for (std::size_t i = 0; i < t.classes->size(); ++i) {
      const auto &c = (*t.classes)[i];
      total += c.length;
      CHECK(c.members.size() == c.length);
      CHECK(t.lattice->group().order() % c.length == 0);
      CHECK(c.representative == c.members.front());
      for (auto s : c.members) {
        CHECK(t.classes->class_of(s) == i);
        covered[s] = true;
      }
      for (const auto &[j, count] : c.subs)
        CHECK(count > 0);
    }
    CHECK(total == t.lattice->size());
    CHECK(std::find(covered.begin(), covered.end(), false) == covered.end());
  }

  // translations form an abelian group: every class is a single subgroup
  const std::vector<Permutation> shift{affine_to_perm(AffineMap(12, 1, 1))};
  const auto cyclic = build(generate_group(12, shift));
  CHECK(cyclic.lattice->size() == 6);
  for (const auto &c : cyclic.classes->classes())
    CHECK(c.length == 1);
}

TEST_CASE("table of marks structure") {
  for (std::uint32_t n = 1; n <= 14; ++n) {
    CAPTURE(n);
    check_tom_structure(build(affine_group(n)));
  }
  check_tom_structure(build(symmetric(4)));
}

TEST_CASE("parallel tables match serial ones") {
  const auto serial = build(affine_group(12), 1);
  const auto parallel = build(affine_group(12), 4);
  CHECK(serial.tom.marks == parallel.tom.marks);
  CHECK(bottom_moebius(*serial.classes) == bottom_moebius(*parallel.classes));
}

TEST_CASE("bottom moebius values") {
  // the multiplicative group of Z/8Z is a Klein four-group
  const auto g = affine_group(8);
  const auto t = build(g);
  const std::vector<Permutation> klein{affine_to_perm(AffineMap(8, 0, 3)),
                                       affine_to_perm(AffineMap(8, 0, 5))};
  const auto v4 = t.lattice->index_of(generate_group(8, klein));
  const auto full = bottom_moebius_full(*t.lattice);
  CHECK(full[v4] == 2);
  CHECK(full[0] == 1);

  for (std::uint32_t n : {6u, 8u, 10u, 12u}) {
    const auto tt = build(affine_group(n));
    const auto by_class = bottom_moebius(*tt.classes);
    const auto by_poset = bottom_moebius_full(*tt.lattice);
    CHECK(by_class[0] == 1);
    for (std::size_t i = 0; i < tt.classes->size(); ++i) {
      const auto &c = (*tt.classes)[i];
      if (c.order == 2 || c.order == 3 || c.order == 5 || c.order == 7)
        CHECK(by_class[i] == -1);
      for (auto s : c.members)
        CHECK(by_poset[s] == by_class[i]);
    }

    // sum_{H <= L} mu(1, H) = [L = 1]
    for (std::size_t l = 0; l < tt.lattice->size(); ++l) {
      mpz_class s = 0;
      tt.lattice->below(l).for_each([&](std::size_t h) { s += by_poset[h]; });
      CHECK(s == (l == 0 ? 1 : 0));
    }

    // sum over subgroups equals the length-weighted sum over classes
    mpz_class all = 0, grouped = 0;
    for (std::size_t h = 0; h < tt.lattice->size(); ++h) {
      mpz_class w;
      mpz_ui_pow_ui(w.get_mpz_t(), 2, orbits(tt.lattice->subgroup(h)).size());
      all += by_poset[h] * w;
    }
    for (std::size_t i = 0; i < tt.classes->size(); ++i) {
      mpz_class w;
      mpz_ui_pow_ui(w.get_mpz_t(), 2, orbits(tt.classes->representative(i)).size());
      grouped += static_cast<unsigned long>((*tt.classes)[i].length) * by_class[i] * w;
    }
    CHECK(all == grouped);
  }
}
