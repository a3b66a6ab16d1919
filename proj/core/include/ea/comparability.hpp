#pragma once

#include <optional>
#include <vector>

#include "ea/backend.hpp"
#include "ea/compbase.hpp"
#include "ea/error.hpp"
#include "ea/report.hpp"

namespace ea {

bool has_b_property(const CompressionBase& cb, Elem a);
std::optional<Elem> all_b(const CompressionBase& cb);  // first element lacking it
inline bool has_all_b(const CompressionBase& cb) { return !all_b(cb).has_value(); }

bool commute(const CompressionBase& cb, Elem e, Elem f);
ProjectionSet p_le_set(const CompressionBase& cb, Elem e, Elem f);

Report check_b_comparability(const CompressionBase& cb);
// P = E_S, b-property, b-comparability, projection covers; on success also
// checks that every C-block is an MV-effect algebra.
Report spectrality_report(const CompressionBase& cb);
bool is_spectral(const CompressionBase& cb);
Report check_mv_block(const CompressionBase& cb, const std::vector<Elem>& block);

Elem positive_part(const CompressionBase& cb, Elem b, Elem a);

template <class E>
struct SplitResult {
  E u0, u1, c0, c1, ambient;
};

// Splitting of c inside [0,q], computed in the ambient algebra.
template <SpectralBackend B>
SplitResult<typename B::element_type> split(const B& b, const typename B::element_type& c,
                                            const typename B::element_type& q) {
  using E = typename B::element_type;
  if (!b.leq(c, q)) fail(ErrorKind::DomainMismatch, "split needs c <= q");
  const E cq = *b.ominus(q, c);
  const E pos = b.positive_part(c, cq);
  const E u0 = b.meet(b.supplement(b.cover(pos)), q);
  const auto u1o = b.ominus(q, u0);
  if (!u1o) fail(ErrorKind::InternalConsistency, "u0 is not below q");
  const E u1 = *u1o;
  const E h0 = b.compress(u0, c);
  const auto c0 = b.sum(h0, h0);
  const E h1 = b.compress(u1, cq);
  const auto d1 = b.sum(h1, h1);
  if (!c0 || !d1) fail(ErrorKind::InternalConsistency, "doubling failed in split");
  const auto c1 = b.ominus(u1, *d1);
  if (!c1 || !b.leq(*c0, u0)) fail(ErrorKind::InternalConsistency, "split results escape their projections");
  return {u0, u1, *c0, *c1, q};
}

class FiniteBackend {
 public:
  using element_type = Elem;

  struct Bicommutant {
    const CompressionBase* cb;
    ProjectionSet set;
    bool contains(Elem p) const {
      auto s = cb->slot(p);
      return s && set.test(*s);
    }
  };

  explicit FiniteBackend(const CompressionBase& cb) : cb_(&cb) {}

  const CompressionBase& base() const { return *cb_; }
  const FiniteEffectAlgebra& algebra() const { return cb_->algebra(); }

  Elem zero() const { return algebra().zero(); }
  Elem one() const { return algebra().one(); }
  bool equal(Elem a, Elem b) const { return a == b; }
  bool leq(Elem a, Elem b) const { return algebra().leq(a, b); }
  std::optional<Elem> sum(Elem a, Elem b) const { return algebra().sum(a, b); }
  std::optional<Elem> ominus(Elem b, Elem a) const { return algebra().ominus(b, a); }
  Elem supplement(Elem a) const { return algebra().supplement(a); }
  Elem compress(Elem p, Elem a) const { return cb_->apply(p, a); }
  Elem cover(Elem a) const { return projection_cover(*cb_, a); }
  Elem positive_part(Elem b, Elem a) const { return ea::positive_part(*cb_, b, a); }
  Elem meet(Elem p, Elem q) const;
  bool in_commutant(Elem a, Elem p) const { return ea::in_commutant(*cb_, a, p); }
  Bicommutant bicommutant(Elem a) const { return {cb_, ea::bicommutant(*cb_, a)}; }
  bool archimedean() const { return true; }  // finite effect algebras are archimedean

 private:
  const CompressionBase* cb_;
};

SplitResult<Elem> split(const CompressionBase& cb, Elem c, Elem q);

struct RestrictedBase {
  CompressionBase base;
  std::vector<Elem> to_parent;          // restricted index -> parent element
  std::vector<std::int32_t> from_parent;  // parent index -> restricted index or -1
};
RestrictedBase restrict(const CompressionBase& cb, Elem q);

}  // namespace ea
