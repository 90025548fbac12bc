#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dichot/affine.hpp"
#include "dichot/lattice.hpp"
#include "dichot/perm.hpp"
#include "dichot/summary.hpp"

namespace dichot {

/// Bit x set means residue x is a member. Dichotomy code needs n <= 64.
using SubsetMask = std::uint64_t;

inline constexpr std::uint32_t kDefaultBruteForceMaxK = 19;

/// A k-subset D of Z/2kZ, optionally tagged with a quasipolarity q such that
/// qD is the complement of D.
struct Dichotomy {
  std::uint32_t n = 0;
  SubsetMask members = 0;
  std::optional<AffineMap> quasipolarity;

  SubsetMask complement() const noexcept {
    return (n == 64 ? ~SubsetMask{0} : ((SubsetMask{1} << n) - 1)) & ~members;
  }
  std::vector<Point> points() const;
};

SubsetMask image(const AffineMap &g, SubsetMask a);
SubsetMask image(const Permutation &g, SubsetMask a);

/// Calls visit(D) for each of the 2^k members of M_q, choosing one end of
/// every transposition of q; index order, bit i picks the larger end of the
/// i-th transposition. Throws PreconditionError if q is not a quasipolarity.
void for_each_mq(const AffineMap &q, const std::function<void(const Dichotomy &)> &visit);
std::vector<Dichotomy> mq_elements(const AffineMap &q);

/// Only the identity of G maps D onto itself.
bool is_rigid(const Dichotomy &d, const PermutationGroup &g);

struct BruteForceOptions {
  unsigned jobs = 1;
  std::uint32_t max_k = kDefaultBruteForceMaxK;
  /// Even k lies outside the theorem; counting still works when enabled.
  bool allow_even = false;
};

/// s(2k) = (1/|G|) sum_q sum_{D in M_q} [G_D = 1], by scanning every M_q.
/// Checks during the scan that each rigid D is swapped with its complement
/// by exactly one group element, and that the total is divisible by |G|.
mpz_class strong_count_bruteforce(std::uint32_t k, const BruteForceOptions &options = {});

/// s(2k) = -(1/|G|) sum over classes H not inside K0 of
/// length(H) mu(1,H) 2^{#orbits of H}. Requires odd k and a summary for n = 2k.
mpz_class strong_count_formula(std::uint32_t k, const LatticeSummary &summary);
mpz_class strong_count_formula(std::uint32_t k, const LatticeOptions &options = {});

/// Every H-orbit has even size.
bool even_orbit_predicate(const PermutationGroup &h);

/// |{D in M_q : H <= G_D}| by filtering M_q.
mpz_class mq_h_count_direct(const AffineMap &q, const PermutationGroup &h);
/// 2^{|S/<H,q>|} when H <= K0 and 0 otherwise; the two agree with the direct
/// count for odd k.
mpz_class mq_h_count_closed(const AffineMap &q, const PermutationGroup &h,
                            const PermutationGroup &ambient, const PermutationGroup &k0);

/// The full subgroup lattice of Aff(Z/2kZ) together with the data the
/// subgroup-by-subgroup identities need: mu(1,H) for every H, K0 membership,
/// orbit counts, and the quasipolarities as group elements.
class AffineLatticeContext {
public:
  explicit AffineLatticeContext(std::uint32_t n, const LatticeOptions &options = {});

  std::uint32_t n() const noexcept { return n_; }
  const SubgroupLattice &lattice() const noexcept { return *lattice_; }
  const std::shared_ptr<const SubgroupLattice> &lattice_ptr() const noexcept { return lattice_; }
  const PermutationGroup &k0() const noexcept { return k0_; }
  const mpz_class &mu(std::size_t h) const { return mu_[h]; }
  const std::vector<mpz_class> &mu() const noexcept { return mu_; }
  bool in_k0(std::size_t h) const { return in_k0_[h]; }
  std::size_t orbit_count(std::size_t h) const { return orbit_count_[h]; }
  const std::vector<AffineMap> &quasipolarities() const noexcept { return qs_; }
  /// Lattice index of <H, q_i>, for H inside K0.
  std::size_t join_with_quasipolarity(std::size_t h, std::size_t qi) const;

private:
  std::uint32_t n_;
  std::shared_ptr<const SubgroupLattice> lattice_;
  PermutationGroup k0_;
  std::vector<mpz_class> mu_;
  std::vector<bool> in_k0_;
  std::vector<std::size_t> orbit_count_;
  std::vector<AffineMap> qs_;
  std::vector<ElementIndex> q_elements_;
  // joins_[qi][h], only meaningful for h inside K0
  std::vector<std::vector<std::size_t>> joins_;
};

/// -(1/|G|) sum over every subgroup H not inside K0 of mu(1,H) 2^{|S/H|}:
/// the formula without grouping into conjugacy classes.
mpz_class strong_count_formula_full(const AffineLatticeContext &ctx);

/// (1/|G|) sum_q sum_{H <= K0} mu(1,H) 2^{|S/<H,q>|}, which equals s(2k).
mpz_class quasipolarity_join_sum(const AffineLatticeContext &ctx);

/// C(L) = sum_q sum_{H <= K0} [L = <H,q>] mu(1,H), for L not inside K0.
mpz_class c_of_l(const AffineLatticeContext &ctx, std::size_t l);
/// sum_{J <= L, J not inside K0} C(J).
mpz_class cumulative_c(const AffineLatticeContext &ctx, std::size_t l);

struct StrongCountReport {
  std::uint32_t k = 0;
  /// "formula", "bruteforce" or "both".
  std::string method;
  mpz_class s_value;
  std::optional<mpz_class> s_formula;
  std::optional<mpz_class> s_bruteforce;
  /// Q_rig(-1) through the inverse table of marks.
  std::optional<mpz_class> qrig_at_minus_one;
  /// Q_rig(-1) through the class-weighted Moebius sum.
  std::optional<mpz_class> qrig_moebius_at_minus_one;
  bool theorem_holds = false;
  bool methods_agree = true;
  std::uint64_t group_order = 0;
  std::uint64_t class_count = 0;
  std::uint64_t subgroup_count = 0;
  double elapsed_seconds = 0;
};

struct VerifyOptions {
  BruteForceOptions bruteforce;
  /// Run the brute-force count when k <= bruteforce.max_k.
  bool with_bruteforce = true;
};

/// Both sides of Q_rig(-1) = -s(2k) for odd k, with the brute-force count
/// added when within budget. `theorem_holds` requires every computed Q_rig(-1)
/// to equal -s and every computed s to agree.
StrongCountReport verify_theorem(std::uint32_t k, const LatticeSummary &summary,
                                 const VerifyOptions &options = {});

} // namespace dichot
