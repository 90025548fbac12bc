#include "dichot/poset.hpp"

#include <algorithm>
#include <sstream>

#include "dichot/errors.hpp"

namespace dichot {

FinitePoset FinitePoset::from_relation(std::size_t size,
                                       const std::function<bool(std::size_t, std::size_t)> &leq) {
  FinitePoset p;
  p.up_.assign(size, ElementSet(size));
  for (std::size_t x = 0; x < size; ++x)
    for (std::size_t y = 0; y < size; ++y)
      if (leq(x, y))
        p.up_[x].set(y);

  auto fail = [](const char *what, std::size_t x, std::size_t y) {
    std::ostringstream msg;
    msg << "poset relation is not " << what << " at pair (" << x << ", " << y << ")";
    throw PreconditionError(msg.str());
  };
  for (std::size_t x = 0; x < size; ++x) {
    if (!p.up_[x].test(x))
      fail("reflexive", x, x);
    for (std::size_t y = x + 1; y < size; ++y)
      if (p.up_[x].test(y) && p.up_[y].test(x))
        fail("antisymmetric", x, y);
  }
  // x <= y implies up(y) is inside up(x)
  for (std::size_t x = 0; x < size; ++x) {
    p.up_[x].for_each([&](std::size_t y) {
      if (!p.up_[y].is_subset_of(p.up_[x]))
        fail("transitive", x, y);
    });
  }

  // Larger up-sets first is a linear extension: x < y forces up(y) strictly
  // inside up(x).
  p.order_.resize(size);
  for (std::size_t i = 0; i < size; ++i)
    p.order_[i] = i;
  std::vector<std::size_t> up_count(size);
  for (std::size_t i = 0; i < size; ++i)
    up_count[i] = p.up_[i].count();
  std::stable_sort(p.order_.begin(), p.order_.end(),
                   [&](std::size_t a, std::size_t b) { return up_count[a] > up_count[b]; });
  return p;
}

IncidenceFunction::IncidenceFunction(std::shared_ptr<const FinitePoset> poset)
    : poset_(std::move(poset)), values_(poset_->size() * poset_->size()) {}

void IncidenceFunction::set(std::size_t x, std::size_t y, mpq_class value) {
  if (!poset_->leq(x, y) && value != 0) {
    std::ostringstream msg;
    msg << "incidence function must vanish off x <= y, got a value at (" << x << ", " << y << ")";
    throw PreconditionError(msg.str());
  }
  value.canonicalize();
  values_[x * poset_->size() + y] = std::move(value);
}

bool operator==(const IncidenceFunction &a, const IncidenceFunction &b) {
  return a.poset_ == b.poset_ && a.values_ == b.values_;
}

IncidenceFunction identity_function(std::shared_ptr<const FinitePoset> poset) {
  IncidenceFunction f(poset);
  for (std::size_t x = 0; x < poset->size(); ++x)
    f.set(x, x, 1);
  return f;
}

IncidenceFunction zeta(std::shared_ptr<const FinitePoset> poset) {
  IncidenceFunction f(poset);
  for (std::size_t x = 0; x < poset->size(); ++x)
    poset->up_set(x).for_each([&](std::size_t y) { f.set(x, y, 1); });
  return f;
}

std::vector<mpz_class> moebius_row(const FinitePoset &poset, std::size_t x) {
  std::vector<mpz_class> mu(poset.size(), 0);
  const auto &order = poset.linear_extension();
  // Walk y in linear-extension order so every z < y is already final.
  std::vector<std::size_t> interval;
  for (std::size_t y : order) {
    if (!poset.leq(x, y))
      continue;
    if (y == x) {
      mu[y] = 1;
    } else {
      mpz_class s = 0;
      for (std::size_t z : interval)
        if (poset.leq(z, y))
          s += mu[z];
      mu[y] = -s;
    }
    interval.push_back(y);
  }
  return mu;
}

IncidenceFunction moebius(std::shared_ptr<const FinitePoset> poset) {
  IncidenceFunction f(poset);
  for (std::size_t x = 0; x < poset->size(); ++x) {
    const auto row = moebius_row(*poset, x);
    for (std::size_t y = 0; y < poset->size(); ++y)
      if (row[y] != 0)
        f.set(x, y, mpq_class(row[y]));
  }
  return f;
}

IncidenceFunction convolve(const IncidenceFunction &alpha, const IncidenceFunction &beta) {
  if (alpha.poset_ptr() != beta.poset_ptr())
    throw PreconditionError("convolve: functions live on different posets");
  const FinitePoset &p = alpha.poset();
  IncidenceFunction out(alpha.poset_ptr());
  for (std::size_t x = 0; x < p.size(); ++x) {
    p.up_set(x).for_each([&](std::size_t y) {
      mpq_class s = 0;
      // z ranges over the interval [x, y]
      p.up_set(x).for_each([&](std::size_t z) {
        if (p.leq(z, y))
          s += alpha(x, z) * beta(z, y);
      });
      out.set(x, y, std::move(s));
    });
  }
  return out;
}

IncidenceFunction moebius_invert(const IncidenceFunction &beta) {
  return convolve(beta, moebius(beta.poset_ptr()));
}

} // namespace dichot
