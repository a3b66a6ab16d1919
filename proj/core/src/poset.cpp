#include "ea/poset.hpp"

#include <mutex>

#include "ea/error.hpp"
#include "algebra_cache.hpp"

namespace ea {

PosetIndex::PosetIndex(const FiniteEffectAlgebra& E) {
  const std::size_t n = E.size();
  down_.assign(n, Bitset(n));
  up_.assign(n, Bitset(n));
  for (std::uint32_t a = 0; a < n; ++a) {
    // a <= b iff a is orthogonal to b'; b' ranges over all elements.
    for (std::uint32_t c = 0; c < n; ++c) {
      if (!E.sum(Elem{a}, Elem{c})) continue;
      Elem b = E.supplement(Elem{c});
      down_[b.id].set(a);
      up_[a].set(b.id);
    }
  }
  down_count_.resize(n);
  up_count_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    down_count_[i] = down_[i].count();
    up_count_[i] = up_[i].count();
  }
}

std::optional<Elem> PosetIndex::greatest_of_down_set(const Bitset& d) const {
  const std::size_t need = d.count();
  for (auto i = d.find_first(); i != Bitset::npos; i = d.find_next(i))
    if (down_count_[i] == need) return Elem{static_cast<std::uint32_t>(i)};
  return std::nullopt;
}

std::optional<Elem> PosetIndex::least_of_up_set(const Bitset& u) const {
  const std::size_t need = u.count();
  for (auto i = u.find_first(); i != Bitset::npos; i = u.find_next(i))
    if (up_count_[i] == need) return Elem{static_cast<std::uint32_t>(i)};
  return std::nullopt;
}

const PosetIndex& poset_index(const FiniteEffectAlgebra& E) {
  if (E.size() > PosetIndex::kLimit)
    fail(ErrorKind::SizeLimit, "order index limited to " + std::to_string(PosetIndex::kLimit) + " elements");
  std::call_once(E.cache_->poset_once, [&] { E.cache_->poset = std::make_unique<PosetIndex>(E); });
  return *E.cache_->poset;
}

}  // namespace ea
