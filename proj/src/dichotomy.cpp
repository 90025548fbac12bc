#include "dichot/dichotomy.hpp"

#include <array>
#include <chrono>
#include <sstream>

#include "dichot/errors.hpp"
#include "dichot/inventory.hpp"
#include "dichot/parallel.hpp"

namespace dichot {

namespace {

mpz_class to_mpz(std::uint64_t v) { return mpz_class(static_cast<unsigned long>(v)); }

mpz_class pow2(std::size_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

void require_odd_k(std::uint32_t k) {
  if (k == 0)
    throw PreconditionError("k must be positive");
  if (k % 2 == 0) {
    std::ostringstream msg;
    msg << "This formula is for odd k. (got k = " << k << ")";
    throw PreconditionError(msg.str());
  }
}

bool is_quasipolarity(const AffineMap &q) {
  const std::uint32_t n = q.modulus();
  if (n % 2 != 0)
    return false;
  for (std::uint32_t x = 0; x < n; ++x)
    if (q(x) == x || q(q(x)) != x)
      return false;
  return true;
}

// Transpositions (a, q(a)) with a < q(a), ascending in a.
std::vector<std::array<std::uint32_t, 2>> transpositions(const AffineMap &q) {
  if (!is_quasipolarity(q)) {
    std::ostringstream msg;
    msg << q << " is not a quasipolarity of Z/" << q.modulus() << "Z";
    throw PreconditionError(msg.str());
  }
  if (q.modulus() > 64)
    throw PreconditionError("dichotomy bitmasks support n <= 64");
  std::vector<std::array<std::uint32_t, 2>> out;
  for (std::uint32_t x = 0; x < q.modulus(); ++x)
    if (x < q(x))
      out.push_back({x, q(x)});
  return out;
}

SubsetMask mq_member(const std::vector<std::array<std::uint32_t, 2>> &pairs, std::uint64_t choice) {
  SubsetMask d = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    d |= SubsetMask{1} << pairs[i][(choice >> i) & 1u];
  return d;
}

// Images of subsets under one affine map, eight points at a time.
class MaskImager {
public:
  MaskImager(const AffineMap &g, std::uint32_t n) : chunks_((n + 7) / 8) {
    tables_.resize(chunks_ * 256);
    for (std::uint32_t c = 0; c < chunks_; ++c)
      for (std::uint32_t byte = 0; byte < 256; ++byte) {
        SubsetMask img = 0;
        for (std::uint32_t b = 0; b < 8; ++b) {
          const std::uint32_t x = c * 8 + b;
          if (x < n && (byte >> b & 1u))
            img |= SubsetMask{1} << g(x);
        }
        tables_[c * 256 + byte] = img;
      }
  }
  SubsetMask operator()(SubsetMask a) const noexcept {
    SubsetMask img = 0;
    for (std::uint32_t c = 0; c < chunks_; ++c)
      img |= tables_[c * 256 + ((a >> (8 * c)) & 0xffu)];
    return img;
  }

private:
  std::uint32_t chunks_;
  std::vector<SubsetMask> tables_;
};

} // namespace

std::vector<Point> Dichotomy::points() const {
  std::vector<Point> out;
  for (std::uint32_t x = 0; x < n; ++x)
    if (members >> x & 1u)
      out.push_back(x);
  return out;
}

SubsetMask image(const AffineMap &g, SubsetMask a) {
  SubsetMask out = 0;
  for (std::uint32_t x = 0; x < g.modulus(); ++x)
    if (a >> x & 1u)
      out |= SubsetMask{1} << g(x);
  return out;
}

SubsetMask image(const Permutation &g, SubsetMask a) {
  SubsetMask out = 0;
  for (std::uint32_t x = 0; x < g.degree(); ++x)
    if (a >> x & 1u)
      out |= SubsetMask{1} << g(x);
  return out;
}

void for_each_mq(const AffineMap &q, const std::function<void(const Dichotomy &)> &visit) {
  const auto pairs = transpositions(q);
  if (pairs.size() >= 63)
    throw PreconditionError("M_q is too large to enumerate");
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  for (std::uint64_t c = 0; c < total; ++c)
    visit(Dichotomy{q.modulus(), mq_member(pairs, c), q});
}

std::vector<Dichotomy> mq_elements(const AffineMap &q) {
  std::vector<Dichotomy> out;
  for_each_mq(q, [&](const Dichotomy &d) { out.push_back(d); });
  return out;
}

bool is_rigid(const Dichotomy &d, const PermutationGroup &g) {
  if (g.degree() != d.n)
    throw PreconditionError("is_rigid: degree mismatch");
  for (const auto &p : g.elements())
    if (!p.is_identity() && image(p, d.members) == d.members)
      return false;
  return true;
}

mpz_class strong_count_bruteforce(std::uint32_t k, const BruteForceOptions &options) {
  if (k == 0)
    throw PreconditionError("k must be positive");
  if (k % 2 == 0 && !options.allow_even) {
    std::ostringstream msg;
    msg << "k = " << k << " is even; the theorem covers odd k only (enable even k explicitly)";
    throw PreconditionError(msg.str());
  }
  if (k > options.max_k) {
    std::ostringstream msg;
    msg << "k = " << k << " exceeds the brute-force budget k <= " << options.max_k;
    throw PreconditionError(msg.str());
  }
  if (k > 32)
    throw PreconditionError("brute force supports k <= 32");
  const std::uint32_t n = 2 * k;

  std::vector<AffineMap> group;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v : units(n))
      group.emplace_back(n, u, v);
  std::vector<MaskImager> imagers;
  // group[0] is the identity and is skipped
  for (std::size_t i = 1; i < group.size(); ++i)
    imagers.emplace_back(group[i], n);

  const auto qs = quasipolarities(n);
  std::vector<std::vector<std::array<std::uint32_t, 2>>> pairs;
  for (const auto &q : qs)
    pairs.push_back(transpositions(q));

  const std::uint64_t per_q = std::uint64_t{1} << k;
  const std::uint64_t block = std::min<std::uint64_t>(per_q, 4096);
  const std::uint64_t blocks_per_q = per_q / block;
  const std::size_t tasks = static_cast<std::size_t>(qs.size() * blocks_per_q);
  const SubsetMask all = (n == 64) ? ~SubsetMask{0} : (SubsetMask{1} << n) - 1;

  std::vector<std::uint64_t> rigid_counts(tasks, 0);
  parallel_for(tasks, options.jobs, [&](std::size_t task) {
    const auto &qp = pairs[task / blocks_per_q];
    const std::uint64_t start = (task % blocks_per_q) * block;
    std::uint64_t rigid = 0;
    for (std::uint64_t c = start; c < start + block; ++c) {
      const SubsetMask d = mq_member(qp, c);
      const SubsetMask comp = all & ~d;
      bool stable = false;
      std::size_t swaps = 0;
      for (const auto &img_of : imagers) {
        const SubsetMask img = img_of(d);
        if (img == d) {
          stable = true;
          break;
        }
        swaps += img == comp;
      }
      if (stable)
        continue;
      // {g : gD = complement} is a coset of G_D = 1, so q is the only one.
      if (swaps != 1)
        throw ConsistencyError("rigid dichotomy with more than one quasipolarity");
      ++rigid;
    }
    rigid_counts[task] = rigid;
  });

  mpz_class total = 0;
  for (auto c : rigid_counts)
    total += to_mpz(c);
  const mpz_class order = to_mpz(group.size());
  if (!mpz_divisible_p(total.get_mpz_t(), order.get_mpz_t())) {
    std::ostringstream msg;
    msg << "rigid dichotomy count " << total << " is not divisible by |G| = " << order;
    throw ConsistencyError(msg.str());
  }
  return total / order;
}

mpz_class strong_count_formula(std::uint32_t k, const LatticeSummary &summary) {
  require_odd_k(k);
  if (summary.n != 2 * k)
    throw PreconditionError("lattice summary is for a different n");
  mpz_class total = -outside_k0_sum(summary);
  return total;
}

mpz_class strong_count_formula(std::uint32_t k, const LatticeOptions &options) {
  require_odd_k(k);
  return strong_count_formula(k, summarize_affine_lattice(2 * k, options));
}

bool even_orbit_predicate(const PermutationGroup &h) {
  for (std::size_t s : orbit_sizes(h))
    if (s % 2 != 0)
      return false;
  return true;
}

mpz_class mq_h_count_direct(const AffineMap &q, const PermutationGroup &h) {
  if (h.degree() != q.modulus())
    throw PreconditionError("mq_h_count: degree mismatch");
  std::uint64_t count = 0;
  for_each_mq(q, [&](const Dichotomy &d) {
    bool fixed = true;
    for (const auto &g : h.generators())
      if (image(g, d.members) != d.members) {
        fixed = false;
        break;
      }
    count += fixed;
  });
  return to_mpz(count);
}

mpz_class mq_h_count_closed(const AffineMap &q, const PermutationGroup &h,
                            const PermutationGroup &ambient, const PermutationGroup &k0) {
  if (!is_subgroup(k0, h))
    return 0;
  const Permutation qp = affine_to_perm(q);
  const PermutationGroup l = join(ambient, h, std::span<const Permutation>(&qp, 1), ambient.order());
  return pow2(orbits(l).size());
}

AffineLatticeContext::AffineLatticeContext(std::uint32_t n, const LatticeOptions &options)
    : n_(n), k0_(k0_subgroup(n, options.max_order)) {
  const PermutationGroup g = affine_group(n, options.max_order);
  lattice_ = std::make_shared<const SubgroupLattice>(enumerate_subgroups(g, options));
  mu_ = bottom_moebius_full(*lattice_);
  const ElementSet k0_set = lattice_->table().to_set(k0_);
  in_k0_.resize(lattice_->size());
  orbit_count_.resize(lattice_->size());
  for (std::size_t h = 0; h < lattice_->size(); ++h) {
    in_k0_[h] = lattice_->elements(h).is_subset_of(k0_set);
    orbit_count_[h] = orbits(lattice_->subgroup(h)).size();
  }
  qs_ = dichot::quasipolarities(n);
  for (const auto &q : qs_)
    q_elements_.push_back(lattice_->table().index_of(affine_to_perm(q)));
  joins_.assign(qs_.size(), std::vector<std::size_t>(lattice_->size(), 0));
  parallel_for(qs_.size(), options.jobs, [&](std::size_t qi) {
    for (std::size_t h = 0; h < lattice_->size(); ++h)
      if (in_k0_[h])
        joins_[qi][h] = lattice_->join_with(h, q_elements_[qi]);
  });
}

std::size_t AffineLatticeContext::join_with_quasipolarity(std::size_t h, std::size_t qi) const {
  if (!in_k0_.at(h))
    throw PreconditionError("join_with_quasipolarity: H must lie inside K0");
  return joins_.at(qi)[h];
}

mpz_class strong_count_formula_full(const AffineLatticeContext &ctx) {
  if (ctx.n() % 4 != 2)
    throw PreconditionError("This formula is for odd k.");
  mpz_class total = 0;
  for (std::size_t h = 0; h < ctx.lattice().size(); ++h)
    if (!ctx.in_k0(h))
      total += ctx.mu(h) * pow2(ctx.orbit_count(h));
  const mpz_class order = to_mpz(ctx.lattice().group().order());
  if (!mpz_divisible_p(total.get_mpz_t(), order.get_mpz_t()))
    throw ConsistencyError("full-lattice formula total is not divisible by |G|");
  return -total / order;
}

mpz_class quasipolarity_join_sum(const AffineLatticeContext &ctx) {
  mpz_class total = 0;
  for (std::size_t qi = 0; qi < ctx.quasipolarities().size(); ++qi)
    for (std::size_t h = 0; h < ctx.lattice().size(); ++h)
      if (ctx.in_k0(h) && ctx.mu(h) != 0)
        total += ctx.mu(h) * pow2(ctx.orbit_count(ctx.join_with_quasipolarity(h, qi)));
  const mpz_class order = to_mpz(ctx.lattice().group().order());
  if (!mpz_divisible_p(total.get_mpz_t(), order.get_mpz_t()))
    throw ConsistencyError("quasipolarity join sum is not divisible by |G|");
  return total / order;
}

mpz_class c_of_l(const AffineLatticeContext &ctx, std::size_t l) {
  if (ctx.in_k0(l))
    throw PreconditionError("C(L) is defined for L not inside K0");
  mpz_class total = 0;
  for (std::size_t qi = 0; qi < ctx.quasipolarities().size(); ++qi)
    for (std::size_t h = 0; h < ctx.lattice().size(); ++h)
      if (ctx.in_k0(h) && ctx.lattice().contains(l, h) && ctx.join_with_quasipolarity(h, qi) == l)
        total += ctx.mu(h);
  return total;
}

mpz_class cumulative_c(const AffineLatticeContext &ctx, std::size_t l) {
  mpz_class total = 0;
  ctx.lattice().below(l).for_each([&](std::size_t j) {
    if (!ctx.in_k0(j))
      total += c_of_l(ctx, j);
  });
  return total;
}

StrongCountReport verify_theorem(std::uint32_t k, const LatticeSummary &summary,
                                 const VerifyOptions &options) {
  const auto start = std::chrono::steady_clock::now();
  require_odd_k(k);
  StrongCountReport r;
  r.k = k;
  r.group_order = summary.group_order;
  r.class_count = summary.classes.size();
  r.subgroup_count = summary.subgroup_count();

  r.s_formula = strong_count_formula(k, summary);
  r.s_value = *r.s_formula;
  r.method = "formula";
  if (options.with_bruteforce && k <= options.bruteforce.max_k) {
    r.s_bruteforce = strong_count_bruteforce(k, options.bruteforce);
    r.method = "both";
    r.methods_agree = *r.s_bruteforce == *r.s_formula;
  }
  r.qrig_at_minus_one = eval_at_minus_one(qrig_via_tom(summary));
  r.qrig_moebius_at_minus_one = eval_at_minus_one(qrig_via_moebius(summary));
  r.theorem_holds = r.methods_agree && *r.qrig_at_minus_one == -r.s_value &&
                    *r.qrig_moebius_at_minus_one == -r.s_value;
  r.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

} // namespace dichot
