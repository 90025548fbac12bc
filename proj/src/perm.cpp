#include "dichot/perm.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "dichot/errors.hpp"

namespace dichot {

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  if (images_.empty())
    throw PreconditionError("permutation degree must be at least 1");
  std::vector<bool> seen(images_.size(), false);
  for (Point y : images_) {
    if (y >= images_.size() || seen[y]) {
      std::ostringstream msg;
      msg << "image list is not a bijection of {0.." << images_.size() - 1 << "}";
      throw PreconditionError(msg.str());
    }
    seen[y] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  if (degree == 0)
    throw PreconditionError("permutation degree must be at least 1");
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  return Permutation(std::move(images), Unchecked{});
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (Point x = 0; x < images_.size(); ++x)
    inv[images_[x]] = x;
  return Permutation(std::move(inv), Unchecked{});
}

bool Permutation::is_identity() const noexcept {
  for (Point x = 0; x < images_.size(); ++x)
    if (images_[x] != x)
      return false;
  return true;
}

std::size_t Permutation::order() const {
  // lcm of cycle lengths
  std::vector<bool> seen(images_.size(), false);
  std::size_t result = 1;
  for (Point x = 0; x < images_.size(); ++x) {
    if (seen[x])
      continue;
    std::size_t len = 0;
    for (Point y = x; !seen[y]; y = images_[y]) {
      seen[y] = true;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

Permutation compose(const Permutation &p, const Permutation &q) {
  if (p.degree() != q.degree())
    throw PreconditionError("compose: degree mismatch");
  std::vector<Point> images(p.degree());
  for (Point x = 0; x < images.size(); ++x)
    images[x] = p.images_[q.images_[x]];
  return Permutation(std::move(images), Permutation::Unchecked{});
}

std::ostream &operator<<(std::ostream &os, const Permutation &p) {
  os << '[';
  for (std::size_t i = 0; i < p.degree(); ++i)
    os << (i ? " " : "") << p(static_cast<Point>(i));
  return os << ']';
}

std::size_t PermutationHash::operator()(const Permutation &p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Point y : p.images()) {
    h ^= y;
    h *= 1099511628211ull;
  }
  return h;
}

PermutationGroup::PermutationGroup(std::size_t degree)
    : degree_(degree), elements_{Permutation::identity(degree)} {}

PermutationGroup::PermutationGroup(std::size_t degree,
                                   std::vector<Permutation> generators,
                                   std::vector<Permutation> elements)
    : degree_(degree), generators_(std::move(generators)),
      elements_(std::move(elements)) {}

bool PermutationGroup::contains(const Permutation &p) const {
  return p.degree() == degree_ &&
         std::binary_search(elements_.begin(), elements_.end(), p);
}

PermutationGroup generate_group(std::size_t degree, std::span<const Permutation> gens,
                                std::size_t max_order) {
  std::vector<Permutation> kept;
  for (const auto &g : gens) {
    if (g.degree() != degree)
      throw PreconditionError("generate_group: generator degree mismatch");
    if (!g.is_identity())
      kept.push_back(g);
  }

  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> elements{Permutation::identity(degree)};
  seen.insert(elements.front());
  // Breadth-first: every element is a word in the generators, so right
  // multiplication by generators reaches the whole (finite) group.
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto &g : kept) {
      Permutation next = compose(elements[head], g);
      if (seen.insert(next).second) {
        elements.push_back(std::move(next));
        if (elements.size() > max_order) {
          std::ostringstream msg;
          msg << "group order exceeds cap " << max_order;
          throw OrderCapExceeded(msg.str());
        }
      }
    }
  }
  std::sort(elements.begin(), elements.end());
  return group_from_elements(degree, std::move(kept), std::move(elements));
}

PermutationGroup group_from_elements(std::size_t degree,
                                     std::vector<Permutation> generators,
                                     std::vector<Permutation> elements) {
  std::sort(elements.begin(), elements.end());
  return PermutationGroup(degree, std::move(generators), std::move(elements));
}

std::vector<std::vector<Point>> orbits(const PermutationGroup &h) {
  const std::size_t n = h.degree();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<Point>> result;
  for (Point x = 0; x < n; ++x) {
    if (seen[x])
      continue;
    std::vector<Point> orbit{x};
    seen[x] = true;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (const auto &g : h.generators()) {
        Point y = g(orbit[i]);
        if (!seen[y]) {
          seen[y] = true;
          orbit.push_back(y);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    result.push_back(std::move(orbit));
  }
  return result;
}

std::vector<std::size_t> orbit_sizes(const PermutationGroup &h) {
  std::vector<std::size_t> sizes;
  for (const auto &o : orbits(h))
    sizes.push_back(o.size());
  return sizes;
}

PermutationGroup setwise_stabilizer(const PermutationGroup &g,
                                    std::span<const Point> subset) {
  std::vector<bool> in_a(g.degree(), false);
  for (Point x : subset) {
    if (x >= g.degree())
      throw PreconditionError("setwise_stabilizer: point out of range");
    in_a[x] = true;
  }
  std::vector<Permutation> stab;
  for (const auto &p : g.elements()) {
    bool keeps = true;
    for (Point x = 0; x < g.degree() && keeps; ++x)
      keeps = in_a[x] == in_a[p(x)];
    if (keeps)
      stab.push_back(p);
  }
  // The element list is already closed; all non-identity members generate.
  std::vector<Permutation> gens(stab.begin() + 1, stab.end());
  return group_from_elements(g.degree(), std::move(gens), std::move(stab));
}

bool is_subgroup(const PermutationGroup &k, const PermutationGroup &h) {
  if (k.degree() != h.degree())
    throw PreconditionError("is_subgroup: degree mismatch");
  if (h.order() > k.order() || k.order() % h.order() != 0)
    return false;
  return std::includes(k.elements().begin(), k.elements().end(), h.elements().begin(),
                       h.elements().end());
}

PermutationGroup join(const PermutationGroup &ambient, const PermutationGroup &h,
                      std::span<const Permutation> extra, std::size_t max_order) {
  if (ambient.degree() != h.degree())
    throw PreconditionError("join: degree mismatch");
  std::vector<Permutation> gens(h.generators().begin(), h.generators().end());
  for (const auto &p : extra) {
    if (p.degree() != h.degree())
      throw PreconditionError("join: degree mismatch");
    if (!ambient.contains(p))
      throw PreconditionError("join: extra element outside the ambient group");
    if (!h.contains(p))
      gens.push_back(p);
  }
  if (gens.size() == h.generators().size())
    return h;
  return generate_group(h.degree(), gens, max_order);
}

} // namespace dichot
