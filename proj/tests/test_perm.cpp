#include "doctest.h"

#include <vector>

#include "dichot/affine.hpp"
#include "dichot/errors.hpp"
#include "dichot/perm.hpp"

using namespace dichot;

namespace {

Permutation affine(std::uint32_t n, std::uint32_t u, std::uint32_t v) {
  return affine_to_perm(AffineMap(n, u, v));
}

} // namespace

TEST_CASE("permutation construction is validated") {
  CHECK_NOTHROW(Permutation({2, 0, 1}));
  CHECK_THROWS_AS(Permutation({0, 0, 1}), PreconditionError);
  CHECK_THROWS_AS(Permutation({0, 3, 1}), PreconditionError);
  CHECK_THROWS_AS(Permutation(std::vector<Point>{}), PreconditionError);
}

TEST_CASE("compose applies the right factor first") {
  const Permutation p{1, 2, 0, 3};
  const Permutation q{0, 1, 3, 2};
  const Permutation pq = compose(p, q);
  for (Point x = 0; x < 4; ++x)
    CHECK(pq(x) == p(q(x)));

  CHECK(compose(Permutation::identity(4), p) == p);
  CHECK(compose(p, p.inverse()).is_identity());
  CHECK_THROWS_AS(compose(p, Permutation::identity(3)), PreconditionError);

  // x -> 5x after x -> x + 1 is x -> 5x + 5
  CHECK(compose(affine(6, 0, 5), affine(6, 1, 1)) == affine(6, 5, 5));
}

TEST_CASE("permutation order is the lcm of cycle lengths") {
  CHECK(Permutation::identity(5).order() == 1);
  CHECK(Permutation({1, 0, 3, 4, 2}).order() == 6);
  CHECK(affine(12, 1, 1).order() == 12);
}

TEST_CASE("generate_group closes the generators") {
  SUBCASE("no generators") {
    const auto g = generate_group(4, {});
    CHECK(g.order() == 1);
    CHECK(g.is_trivial());
  }
  SUBCASE("a swap") {
    const std::vector<Permutation> gens{Permutation{1, 0}};
    CHECK(generate_group(2, gens).order() == 2);
  }
  SUBCASE("affine generators for n = 6") {
    const std::vector<Permutation> gens{affine(6, 1, 1), affine(6, 0, 5)};
    const auto g = generate_group(6, gens);
    CHECK(g.order() == 12);
    CHECK(g.elements().front().is_identity());
    CHECK(std::is_sorted(g.elements().begin(), g.elements().end()));
    for (const auto &a : g.elements())
      for (const auto &b : g.elements())
        CHECK(g.contains(compose(a, b)));
  }
  SUBCASE("order cap") {
    const std::vector<Permutation> gens{Permutation{1, 2, 3, 4, 0}, Permutation{1, 0, 2, 3, 4}};
    CHECK(generate_group(5, gens).order() == 120);
    CHECK_THROWS_AS(generate_group(5, gens, 60), OrderCapExceeded);
  }
  SUBCASE("degree mismatch") {
    const std::vector<Permutation> gens{Permutation{1, 0}};
    CHECK_THROWS_AS(generate_group(3, gens), PreconditionError);
  }
}

TEST_CASE("orbits are listed by least element") {
  CHECK(orbits(PermutationGroup(6)).size() == 6);

  const std::vector<Permutation> shift{affine(6, 1, 1)};
  const auto full = orbits(generate_group(6, shift));
  REQUIRE(full.size() == 1);
  CHECK(full[0].size() == 6);

  const std::vector<Permutation> shift2{affine(6, 2, 1)};
  const auto two = orbits(generate_group(6, shift2));
  CHECK(two == std::vector<std::vector<Point>>{{0, 2, 4}, {1, 3, 5}});
  CHECK(orbit_sizes(generate_group(6, shift2)) == std::vector<std::size_t>{3, 3});
}

TEST_CASE("setwise stabilizers") {
  const auto g = affine_group(6);
  const std::vector<Point> none, all{0, 1, 2, 3, 4, 5}, zero{0};
  CHECK(setwise_stabilizer(g, none) == g);
  CHECK(setwise_stabilizer(g, all) == g);
  const auto s = setwise_stabilizer(g, zero);
  CHECK(s.order() == 2);
  CHECK(s.contains(affine(6, 0, 1)));
  CHECK(s.contains(affine(6, 0, 5)));
}

TEST_CASE("is_subgroup and join") {
  const auto k0 = k0_subgroup(6);
  const PermutationGroup trivial(6);
  CHECK(is_subgroup(k0, trivial));
  CHECK(is_subgroup(k0, k0));
  const std::vector<Permutation> three{affine(6, 3, 1)};
  CHECK_FALSE(is_subgroup(k0, generate_group(6, three)));
  CHECK_THROWS_AS(is_subgroup(k0, PermutationGroup(4)), PreconditionError);

  const auto g = affine_group(6);
  CHECK(join(g, k0, {}) == k0);
  CHECK(join(g, trivial, three).order() == 2);

  const std::vector<Permutation> shift2{affine(6, 2, 1)}, shift{affine(6, 1, 1)};
  CHECK(join(g, generate_group(6, shift2), three) == generate_group(6, shift));

  const std::vector<Permutation> outside{Permutation{1, 0, 2, 3, 4, 5}};
  CHECK_THROWS_AS(join(g, trivial, outside), PreconditionError);
}
