#include "dichot/inventory.hpp"

#include <bit>
#include <sstream>

#include "dichot/affine.hpp"
#include "dichot/errors.hpp"
#include "dichot/parallel.hpp"

namespace dichot {

namespace {

mpz_class to_mpz(std::uint64_t v) { return mpz_class(static_cast<unsigned long>(v)); }

mpz_class pow2(std::size_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

mpz_class divide_exactly(const mpz_class &total, std::uint64_t divisor, const char *what) {
  const mpz_class d = to_mpz(divisor);
  if (!mpz_divisible_p(total.get_mpz_t(), d.get_mpz_t())) {
    std::ostringstream msg;
    msg << what << ": total " << total << " is not divisible by |G| = " << divisor;
    throw ConsistencyError(msg.str());
  }
  return total / d;
}

} // namespace

IntegerPolynomial OrbitIndexMonomial::substitute_one_plus_power() const {
  IntegerPolynomial p = IntegerPolynomial::one();
  for (std::size_t d = 1; d < exponents.size(); ++d)
    for (std::uint32_t e = 0; e < exponents[d]; ++e)
      p.mul_one_plus_power(d);
  return p;
}

OrbitIndexMonomial orbit_index_monomial(std::span<const std::uint32_t> orbit_sizes,
                                        std::uint32_t n) {
  OrbitIndexMonomial m;
  m.exponents.assign(n + 1, 0);
  std::uint64_t total = 0;
  for (std::uint32_t s : orbit_sizes) {
    if (s == 0 || s > n)
      throw PreconditionError("orbit size out of range");
    ++m.exponents[s];
    total += s;
  }
  if (total != n)
    throw PreconditionError("orbit sizes do not partition the points");
  return m;
}

OrbitIndexMonomial orbit_index_monomial(const PermutationGroup &h) {
  std::vector<std::uint32_t> sizes;
  for (std::size_t s : orbit_sizes(h))
    sizes.push_back(static_cast<std::uint32_t>(s));
  return orbit_index_monomial(sizes, static_cast<std::uint32_t>(h.degree()));
}

IntegerPolynomial invariant_subset_poly(std::span<const std::uint32_t> orbit_sizes) {
  IntegerPolynomial p = IntegerPolynomial::one();
  for (std::uint32_t s : orbit_sizes)
    p.mul_one_plus_power(s);
  return p;
}

IntegerPolynomial invariant_subset_poly(const PermutationGroup &h) {
  return orbit_index_monomial(h).substitute_one_plus_power();
}

IntegerPolynomial qrig_via_moebius(const SubgroupLattice &lattice, std::span<const mpz_class> mu) {
  if (mu.size() != lattice.size())
    throw PreconditionError("qrig_via_moebius: one mu value per subgroup expected");
  IntegerPolynomial total;
  for (std::size_t s = 0; s < lattice.size(); ++s) {
    if (mu[s] == 0)
      continue;
    IntegerPolynomial term = invariant_subset_poly(lattice.subgroup(s));
    term *= mu[s];
    total += term;
  }
  return total.divided_exactly(to_mpz(lattice.group().order()));
}

IntegerPolynomial qrig_via_moebius(const LatticeSummary &summary) {
  IntegerPolynomial total;
  for (const auto &c : summary.classes) {
    if (c.mu == 0)
      continue;
    IntegerPolynomial term = invariant_subset_poly(c.orbit_sizes);
    term *= c.mu * to_mpz(c.length);
    total += term;
  }
  return total.divided_exactly(to_mpz(summary.group_order));
}

IntegerPolynomial qrig_via_tom(const LatticeSummary &summary) {
  return qrig_via_tom(summary, invert_marks(summary.marks));
}

IntegerPolynomial qrig_via_tom(const LatticeSummary &summary, const MarksInverse &inverse) {
  if (inverse.convention != IndexConvention::kAscending)
    throw PreconditionError("qrig_via_tom expects an ascending marks inverse");
  const std::size_t classes = summary.classes.size();
  if (inverse.entries.rows() != classes || summary.classes.front().order != 1)
    throw PreconditionError("qrig_via_tom: inverse does not match the class table");
  // Fixed-point vector phi (a row) times M^{-1} gives orbit-type counts; the
  // regular orbits sit in the trivial-class column, which is column 0 in
  // ascending order.
  constexpr std::size_t kTrivial = 0;
  std::vector<mpq_class> coeffs(summary.n + 1, mpq_class(0));
  for (std::size_t j = 0; j < classes; ++j) {
    const mpq_class &b = inverse.entries(j, kTrivial);
    if (b == 0)
      continue;
    const IntegerPolynomial fixed =
        orbit_index_monomial(summary.classes[j].orbit_sizes, summary.n).substitute_one_plus_power();
    for (std::size_t d = 0; d < fixed.coefficients().size(); ++d)
      coeffs[d] += b * mpq_class(fixed.coefficients()[d]);
  }
  std::vector<mpz_class> out(coeffs.size());
  for (std::size_t d = 0; d < coeffs.size(); ++d) {
    coeffs[d].canonicalize();
    if (coeffs[d].get_den() != 1) {
      std::ostringstream msg;
      msg << "table-of-marks inventory has non-integer coefficient " << coeffs[d] << " at x^" << d;
      throw ConsistencyError(msg.str());
    }
    out[d] = coeffs[d].get_num();
  }
  return IntegerPolynomial(std::move(out));
}

IntegerPolynomial qrig_bruteforce(std::uint32_t n, std::uint32_t cutoff, unsigned jobs) {
  if (n == 0 || n > cutoff || n > 30) {
    std::ostringstream msg;
    msg << "qrig_bruteforce: n = " << n << " is past the brute-force cutoff " << cutoff;
    throw PreconditionError(msg.str());
  }
  std::vector<AffineMap> group;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v : units(n))
      group.emplace_back(n, u, v);

  using Mask = std::uint32_t;
  auto image = [n](const AffineMap &g, Mask a) {
    Mask out = 0;
    for (std::uint32_t x = 0; x < n; ++x)
      if (a >> x & 1u)
        out |= Mask{1} << g(x);
    return out;
  };

  const std::uint64_t subsets = std::uint64_t{1} << n;
  constexpr std::uint64_t kBlock = 1024;
  const std::size_t blocks = static_cast<std::size_t>((subsets + kBlock - 1) / kBlock);
  struct Tally {
    std::vector<std::uint64_t> reps;
    std::uint64_t rigid = 0;
  };
  std::vector<Tally> tallies(blocks, Tally{std::vector<std::uint64_t>(n + 1, 0), 0});

  parallel_for(blocks, jobs, [&](std::size_t b) {
    Tally &t = tallies[b];
    const std::uint64_t end = std::min(subsets, (b + 1) * kBlock);
    for (std::uint64_t m = b * kBlock; m < end; ++m) {
      const auto a = static_cast<Mask>(m);
      bool rigid = true, minimal = true;
      // group[0] is the identity e^0.1
      for (std::size_t gi = 1; gi < group.size(); ++gi) {
        const Mask img = image(group[gi], a);
        if (img == a) {
          rigid = false;
          break;
        }
        if (img < a)
          minimal = false;
      }
      if (!rigid)
        continue;
      ++t.rigid;
      // A rigid orbit has |G| distinct members; count its least one.
      if (minimal)
        ++t.reps[static_cast<std::size_t>(std::popcount(a))];
    }
  });

  std::vector<std::uint64_t> reps(n + 1, 0);
  std::uint64_t rigid = 0;
  for (const auto &t : tallies) {
    rigid += t.rigid;
    for (std::size_t d = 0; d <= n; ++d)
      reps[d] += t.reps[d];
  }
  std::uint64_t classes = 0;
  std::vector<mpz_class> coeffs;
  for (auto r : reps) {
    classes += r;
    coeffs.push_back(to_mpz(r));
  }
  if (rigid != classes * group.size())
    throw ConsistencyError("rigid subsets do not split into orbits of size |G|");
  return IntegerPolynomial(std::move(coeffs));
}

mpz_class eval_at_minus_one(const IntegerPolynomial &p) { return p.at_minus_one(); }

mpz_class even_orbit_sum(const LatticeSummary &summary) {
  mpz_class total = 0;
  for (const auto &c : summary.classes) {
    bool all_even = true;
    for (auto s : c.orbit_sizes)
      all_even = all_even && s % 2 == 0;
    if (all_even)
      total += to_mpz(c.length) * c.mu * pow2(c.orbit_sizes.size());
  }
  return divide_exactly(total, summary.group_order, "even_orbit_sum");
}

mpz_class outside_k0_sum(const LatticeSummary &summary) {
  mpz_class total = 0;
  for (const auto &c : summary.classes) {
    if (!c.in_k0)
      throw PreconditionError("outside_k0_sum needs K0 membership (n even)");
    if (!*c.in_k0)
      total += to_mpz(c.length) * c.mu * pow2(c.orbit_sizes.size());
  }
  return divide_exactly(total, summary.group_order, "outside_k0_sum");
}

} // namespace dichot
