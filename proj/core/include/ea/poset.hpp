#pragma once

#include <optional>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "ea/algebra.hpp"

namespace ea {

using Bitset = boost::dynamic_bitset<>;

// Down-set and up-set bitsets of the derived order.
class PosetIndex {
 public:
  static constexpr std::size_t kLimit = 20000;

  explicit PosetIndex(const FiniteEffectAlgebra& E);

  const Bitset& down(Elem a) const { return down_[a.id]; }
  const Bitset& up(Elem a) const { return up_[a.id]; }

  // Greatest element of a down-closed set, if it has one.
  std::optional<Elem> greatest_of_down_set(const Bitset& d) const;
  std::optional<Elem> least_of_up_set(const Bitset& u) const;

  std::optional<Elem> meet(Elem a, Elem b) const { return greatest_of_down_set(down_[a.id] & down_[b.id]); }
  std::optional<Elem> join(Elem a, Elem b) const { return least_of_up_set(up_[a.id] & up_[b.id]); }

 private:
  std::vector<Bitset> down_, up_;
  std::vector<std::size_t> down_count_, up_count_;
};

// Lazily built and cached on the algebra. Throws SizeLimit above kLimit.
const PosetIndex& poset_index(const FiniteEffectAlgebra& E);

}  // namespace ea
