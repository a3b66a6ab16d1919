#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ea/algebra.hpp"
#include "ea/poset.hpp"
#include "ea/report.hpp"

namespace ea {

// Subset of P, indexed by projection slot.
using ProjectionSet = Bitset;

struct BaseCache;

// Projections P (ascending by index) and a compression J_p for each p in P.
class CompressionBase {
 public:
  using MapFn = std::function<Elem(Elem p, Elem a)>;
  static constexpr std::size_t kTableLimit = std::size_t{1} << 24;

  CompressionBase(FiniteEffectAlgebra E, std::vector<Elem> projections, MapFn maps);

  const FiniteEffectAlgebra& algebra() const { return E_; }
  const std::vector<Elem>& projections() const { return P_; }
  std::size_t num_projections() const { return P_.size(); }
  Elem projection(std::size_t slot) const { return P_[slot]; }
  std::optional<std::size_t> slot(Elem p) const;
  std::size_t slot_of(Elem p) const;  // throws DomainMismatch
  bool is_projection(Elem p) const { return slot(p).has_value(); }

  Elem apply_slot(std::size_t s, Elem a) const {
    if (!table_.empty()) return table_[s * E_.size() + a.id];
    return fn_(P_[s], a);
  }
  Elem apply(Elem p, Elem a) const { return apply_slot(slot_of(p), a); }
  // Slot of p', if p' is a projection.
  std::optional<std::size_t> supplement_slot(std::size_t s) const;

  ProjectionSet empty_set() const { return ProjectionSet(P_.size()); }
  ProjectionSet full_set() const { return ~empty_set(); }
  std::vector<Elem> to_elements(const ProjectionSet& s) const;
  ProjectionSet to_set(std::span<const Elem> ps) const;

  // in_c(t) = { s : P[s] in C(P[t]) }.
  const ProjectionSet& projections_in_commutant_of(std::size_t t) const;

 private:
  FiniteEffectAlgebra E_;
  std::vector<Elem> P_;
  std::vector<std::int32_t> slot_;  // element -> slot or -1
  MapFn fn_;
  std::vector<Elem> table_;
  std::shared_ptr<BaseCache> cache_;
};

struct MapClass {
  enum class Kind { NotAdditive, NotRetraction, Retraction, Compression };
  Kind kind;
  Elem focus;
  std::string witness;
};
std::string_view to_string(MapClass::Kind k);

MapClass classify_map(const FiniteEffectAlgebra& E, std::span<const Elem> J);
Report validate_base(const CompressionBase& cb, const ValidationOptions& opts = {});

std::vector<Elem> center(const FiniteEffectAlgebra& E);
CompressionBase central_base(const FiniteEffectAlgebra& E);

bool in_commutant(const CompressionBase& cb, Elem a, Elem p);
std::vector<Elem> commutant(const CompressionBase& cb, Elem p);
ProjectionSet pc(const CompressionBase& cb, Elem a);
ProjectionSet pc(const CompressionBase& cb, std::span<const Elem> q);
ProjectionSet bicommutant(const CompressionBase& cb, Elem a);
ProjectionSet bicommutant(const CompressionBase& cb, std::span<const Elem> q);
bool is_boolean_subalgebra(const CompressionBase& cb, const ProjectionSet& s);

std::vector<ProjectionSet> blocks(const CompressionBase& cb);
std::vector<Elem> c_block(const CompressionBase& cb, const ProjectionSet& block);

std::optional<Elem> meet_in_p(const CompressionBase& cb, Elem p, Elem q);
std::optional<Elem> join_in_p(const CompressionBase& cb, Elem p, Elem q);

Elem projection_cover(const CompressionBase& cb, Elem a);
std::optional<Elem> find_cover(const CompressionBase& cb, Elem a);
bool has_pcp(const CompressionBase& cb);
Report check_oml(const CompressionBase& cb);

}  // namespace ea
