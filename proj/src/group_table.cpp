#include "dichot/group_table.hpp"

#include "dichot/errors.hpp"

namespace dichot {

GroupTable::GroupTable(const PermutationGroup &group)
    : degree_(group.degree()), elements_(group.elements().begin(), group.elements().end()) {
  const std::size_t n = elements_.size();
  index_.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    index_.emplace(elements_[i], static_cast<ElementIndex>(i));

  table_.resize(n * n);
  inverse_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      ElementIndex c = index_of(compose(elements_[a], elements_[b]));
      table_[a * n + b] = c;
      if (c == 0)
        inverse_[a] = static_cast<ElementIndex>(b);
    }
  }
  orders_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t ord = 1;
    for (ElementIndex x = static_cast<ElementIndex>(a); x != 0; x = mul(x, static_cast<ElementIndex>(a)))
      ++ord;
    orders_[a] = ord;
  }
}

ElementIndex GroupTable::index_of(const Permutation &p) const {
  auto it = index_.find(p);
  if (it == index_.end())
    throw PreconditionError("permutation is not an element of the group");
  return it->second;
}

ElementSet GroupTable::trivial() const {
  ElementSet s(order());
  s.set(0);
  return s;
}

ElementSet GroupTable::full() const {
  ElementSet s(order());
  for (std::size_t i = 0; i < order(); ++i)
    s.set(i);
  return s;
}

ElementSet GroupTable::closure(std::span<const ElementIndex> gens) const {
  ElementSet s(order());
  s.set(0);
  std::vector<ElementIndex> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (ElementIndex g : gens) {
      ElementIndex next = mul(queue[head], g);
      if (!s.test(next)) {
        s.set(next);
        queue.push_back(next);
      }
    }
  }
  return s;
}

ElementSet GroupTable::conjugate(ElementIndex g, const ElementSet &h) const {
  ElementSet out(order());
  h.for_each([&](std::size_t x) { out.set(conj(g, static_cast<ElementIndex>(x))); });
  return out;
}

ElementSet GroupTable::to_set(const PermutationGroup &h) const {
  ElementSet s(order());
  for (const auto &p : h.elements())
    s.set(index_of(p));
  return s;
}

PermutationGroup GroupTable::to_group(const ElementSet &h,
                                      std::span<const ElementIndex> gens) const {
  std::vector<Permutation> elems;
  h.for_each([&](std::size_t i) { elems.push_back(elements_[i]); });
  std::vector<Permutation> generators;
  for (ElementIndex g : gens)
    if (g != 0)
      generators.push_back(elements_[g]);
  return group_from_elements(degree_, std::move(generators), std::move(elems));
}

std::vector<ElementIndex> GroupTable::small_generating_set(const ElementSet &h) const {
  std::vector<ElementIndex> gens;
  ElementSet generated = trivial();
  h.for_each([&](std::size_t x) {
    if (!generated.test(x)) {
      gens.push_back(static_cast<ElementIndex>(x));
      generated = closure(gens);
    }
  });
  return gens;
}

} // namespace dichot
