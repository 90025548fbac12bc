#include "doctest.h"

#include <algorithm>
#include <bit>
#include <map>

#include "dichot/affine.hpp"
#include "dichot/dichotomy.hpp"
#include "dichot/errors.hpp"
#include "dichot/inventory.hpp"

using namespace dichot;

namespace {

// s(2k) from an independent scan of all k-subsets.
const std::map<std::uint32_t, long> kStrongFixtures = {
    {1, 1}, {3, 1}, {5, 3}, {7, 9}, {9, 40}, {11, 105},
};

SubsetMask mask_of(std::initializer_list<Point> points) {
  SubsetMask m = 0;
  for (Point p : points)
    m |= SubsetMask{1} << p;
  return m;
}

} // namespace

TEST_CASE("M_q enumeration") {
  const auto m2 = mq_elements(AffineMap(2, 1, 1));
  REQUIRE(m2.size() == 2);
  CHECK(m2[0].members == mask_of({0}));
  CHECK(m2[1].members == mask_of({1}));

  for (std::uint32_t n : {6u, 10u, 12u}) {
    for (const auto &q : quasipolarities(n)) {
      const auto ds = mq_elements(q);
      CHECK(ds.size() == (std::size_t{1} << (n / 2)));
      for (const auto &d : ds) {
        CHECK(std::popcount(d.members) == static_cast<int>(n / 2));
        CHECK(image(q, d.members) == d.complement());
        CHECK(d.quasipolarity == q);
      }
    }
  }
  CHECK(mq_elements(AffineMap(6, 3, 1)).size() == 8);
  CHECK_THROWS_AS(mq_elements(AffineMap(6, 0, 5)), PreconditionError);
  CHECK_THROWS_AS(mq_elements(AffineMap(6, 1, 1)), PreconditionError);
}

TEST_CASE("rigidity") {
  CHECK(is_rigid(Dichotomy{2, mask_of({0}), std::nullopt}, affine_group(2)));

  const Dichotomy kd{12, mask_of({0, 3, 4, 7, 8, 9}), std::nullopt};
  const auto g12 = affine_group(12);
  CHECK(is_rigid(kd, g12));
  CHECK(kd.points() == std::vector<Point>{0, 3, 4, 7, 8, 9});
  CHECK(image(AffineMap(12, 1, 1), kd.members) == mask_of({1, 4, 5, 8, 9, 10}));

  CHECK_FALSE(is_rigid(Dichotomy{12, mask_of({0, 2, 4, 6, 8, 10}), std::nullopt}, g12));
  CHECK_FALSE(is_rigid(Dichotomy{6, mask_of({0, 2, 4}), std::nullopt}, affine_group(6)));

  // rigidity and quasipolarities move along with conjugation
  for (const auto &q : quasipolarities(12)) {
    for (const auto &d : mq_elements(q)) {
      const bool rigid = is_rigid(d, g12);
      for (const auto &p : g12.elements()) {
        const auto g = AffineMap::from_permutation(p);
        const auto g_inv = AffineMap::from_permutation(p.inverse());
        const Dichotomy moved{12, image(g, d.members), std::nullopt};
        CHECK(is_rigid(moved, g12) == rigid);
        const auto q_moved = g.after(q).after(g_inv);
        CHECK(image(q_moved, moved.members) == moved.complement());
      }
    }
  }
}

TEST_CASE("strong counts") {
  for (const auto &[k, s] : kStrongFixtures) {
    CAPTURE(k);
    const auto summary = summarize_affine_lattice(2 * k);
    CHECK(strong_count_formula(k, summary) == s);
    if (k <= 9)
      CHECK(strong_count_bruteforce(k) == s);
  }
  CHECK(strong_count_formula(13) == strong_count_bruteforce(13));
  CHECK(strong_count_bruteforce(11, {3, kDefaultBruteForceMaxK, false}) == 105);

  CHECK_THROWS_AS(strong_count_formula(4), PreconditionError);
  CHECK_THROWS_AS(strong_count_bruteforce(6), PreconditionError);
  CHECK(strong_count_bruteforce(6, {1, kDefaultBruteForceMaxK, true}) == 6);
  CHECK_THROWS_AS(strong_count_bruteforce(21), PreconditionError);
  CHECK_THROWS_AS(strong_count_formula(5, summarize_affine_lattice(6)), PreconditionError);

  try {
    strong_count_formula(2);
    FAIL("even k accepted");
  } catch (const PreconditionError &e) {
    CHECK(std::string(e.what()).find("This formula is for odd k.") != std::string::npos);
  }
}

TEST_CASE("even orbits characterize subgroups outside K0") {
  CHECK_FALSE(even_orbit_predicate(PermutationGroup(6)));
  const std::vector<Permutation> three{affine_to_perm(AffineMap(6, 3, 1))};
  CHECK(even_orbit_predicate(generate_group(6, three)));

  for (std::uint32_t k : {3u, 5u, 7u}) {
    const AffineLatticeContext ctx(2 * k);
    for (std::size_t h = 0; h < ctx.lattice().size(); ++h)
      CHECK(even_orbit_predicate(ctx.lattice().subgroup(h)) == !ctx.in_k0(h));
  }
}

TEST_CASE("invariant members of M_q") {
  const auto g6 = affine_group(6);
  const auto k06 = k0_subgroup(6);
  const AffineMap q(6, 3, 1);
  const std::vector<Permutation> shift2{affine_to_perm(AffineMap(6, 2, 1))};
  const auto h = generate_group(6, shift2);
  CHECK(mq_h_count_direct(q, h) == 2);
  CHECK(mq_h_count_closed(q, h, g6, k06) == 2);
  CHECK(mq_h_count_direct(q, PermutationGroup(6)) == 8);

  for (std::uint32_t k : {3u, 5u, 7u}) {
    const std::uint32_t n = 2 * k;
    const AffineLatticeContext ctx(n);
    const auto g = affine_group(n);
    for (const auto &qq : ctx.quasipolarities()) {
      for (std::size_t i = 0; i < ctx.lattice().size(); ++i) {
        const auto sub = ctx.lattice().subgroup(i);
        const auto direct = mq_h_count_direct(qq, sub);
        CHECK(direct == mq_h_count_closed(qq, sub, g, ctx.k0()));
        if (!ctx.in_k0(i))
          CHECK(direct == 0);
      }
    }
  }
}

TEST_CASE("formula variants") {
  for (std::uint32_t k = 1; k <= 9; k += 2) {
    const AffineLatticeContext ctx(2 * k);
    const auto s = strong_count_bruteforce(k);
    CHECK(strong_count_formula_full(ctx) == s);
    CHECK(quasipolarity_join_sum(ctx) == s);
  }
}

TEST_CASE("C(L) = -mu(1, L) outside K0") {
  for (std::uint32_t n : {6u, 10u}) {
    const AffineLatticeContext ctx(n);
    const auto &lattice = ctx.lattice();
    for (std::size_t l = 0; l < lattice.size(); ++l) {
      if (ctx.in_k0(l)) {
        CHECK_THROWS_AS(c_of_l(ctx, l), PreconditionError);
        continue;
      }
      CHECK(c_of_l(ctx, l) == -ctx.mu(l));
      ElementSet meet = lattice.elements(l);
      meet &= lattice.table().to_set(ctx.k0());
      CHECK(cumulative_c(ctx, l) == (meet.count() == 1 ? 1 : 0));
    }
    for (std::size_t qi = 0; qi < ctx.quasipolarities().size(); ++qi) {
      const auto l = ctx.join_with_quasipolarity(0, qi);
      CHECK(lattice.order(l) == 2);
      CHECK(c_of_l(ctx, l) == 1);
    }
  }
}

TEST_CASE("theorem reports") {
  for (std::uint32_t k = 1; k <= 11; k += 2) {
    const auto r = verify_theorem(k, summarize_affine_lattice(2 * k));
    CHECK(r.theorem_holds);
    CHECK(r.methods_agree);
    CHECK(r.s_value == kStrongFixtures.at(k));
    REQUIRE(r.qrig_at_minus_one);
    CHECK(*r.qrig_at_minus_one == -r.s_value);
    CHECK(*r.qrig_moebius_at_minus_one == -r.s_value);
    REQUIRE(r.s_bruteforce);
    CHECK(*r.s_bruteforce == r.s_value);
  }
  VerifyOptions skip;
  skip.with_bruteforce = false;
  const auto r = verify_theorem(13, summarize_affine_lattice(26), skip);
  CHECK_FALSE(r.s_bruteforce);
  CHECK(r.s_value == 355);
  CHECK(r.theorem_holds);
}
