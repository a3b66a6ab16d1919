#include "ea/comparability.hpp"

#include <algorithm>
#include <random>

#include "ea/poset.hpp"

namespace ea {

namespace {

// PC(PC(Q) ∪ Q) without the Boolean-subalgebra assertion.
ProjectionSet raw_bicommutant(const CompressionBase& cb, const ProjectionSet& pcq) {
  ProjectionSet out = cb.empty_set();
  for (auto t = pcq.find_first(); t != ProjectionSet::npos; t = pcq.find_next(t))
    if (pcq.is_subset_of(cb.projections_in_commutant_of(t))) out.set(t);
  return out;
}

bool b_property_from(const CompressionBase& cb, const ProjectionSet& pca, const ProjectionSet& pa) {
  for (std::size_t t = 0; t < cb.num_projections(); ++t)
    if (pca.test(t) != pa.is_subset_of(cb.projections_in_commutant_of(t))) return false;
  return true;
}

bool sets_commute(const CompressionBase& cb, const ProjectionSet& pe, const ProjectionSet& pf) {
  for (auto s = pe.find_first(); s != ProjectionSet::npos; s = pe.find_next(s))
    if (!pf.is_subset_of(cb.projections_in_commutant_of(s))) return false;
  return true;
}

ProjectionSet p_le_from(const CompressionBase& cb, Elem e, Elem f, const ProjectionSet& pef) {
  const auto& E = cb.algebra();
  ProjectionSet out = cb.empty_set();
  for (auto s = pef.find_first(); s != ProjectionSet::npos; s = pef.find_next(s)) {
    const std::size_t t = *cb.supplement_slot(s);
    if (E.leq(cb.apply_slot(s, e), cb.apply_slot(s, f)) && E.leq(cb.apply_slot(t, f), cb.apply_slot(t, e))) out.set(s);
  }
  return out;
}

}  // namespace

bool has_b_property(const CompressionBase& cb, Elem a) {
  ProjectionSet pca = pc(cb, a);
  return b_property_from(cb, pca, raw_bicommutant(cb, pca));
}

std::optional<Elem> all_b(const CompressionBase& cb) {
  for (Elem a : cb.algebra().elements())
    if (!has_b_property(cb, a)) return a;
  return std::nullopt;
}

bool commute(const CompressionBase& cb, Elem e, Elem f) {
  const auto& E = cb.algebra();
  E.check(e);
  E.check(f);
  if (!has_b_property(cb, e)) fail(ErrorKind::BPropertyMissing, E.label(e));
  if (!has_b_property(cb, f)) fail(ErrorKind::BPropertyMissing, E.label(f));
  return sets_commute(cb, bicommutant(cb, e), bicommutant(cb, f));
}

ProjectionSet p_le_set(const CompressionBase& cb, Elem e, Elem f) {
  const auto& E = cb.algebra();
  E.check(e);
  E.check(f);
  if (!has_b_property(cb, e)) fail(ErrorKind::BPropertyMissing, E.label(e));
  if (!has_b_property(cb, f)) fail(ErrorKind::BPropertyMissing, E.label(f));
  const Elem ef[] = {e, f};
  return p_le_from(cb, e, f, raw_bicommutant(cb, pc(cb, ef)));
}

Report check_b_comparability(const CompressionBase& cb) {
  const auto& E = cb.algebra();
  const std::size_t n = E.size();
  Report rep;
  rep.subject = "b-comparability";
  std::vector<ProjectionSet> pcs(n), bic(n);
  std::string w;
  for (Elem a : E.elements()) {
    pcs[a.id] = pc(cb, a);
    bic[a.id] = raw_bicommutant(cb, pcs[a.id]);
    if (w.empty() && !b_property_from(cb, pcs[a.id], bic[a.id])) w = E.label(a);
  }
  rep.add("b-property", w.empty(), w.empty() ? "" : "fails at " + w);
  if (!w.empty()) return rep;

  auto probe = [&](Elem e, Elem f) {
    if (!sets_commute(cb, bic[e.id], bic[f.id])) return;
    ProjectionSet pcq = pcs[e.id] & pcs[f.id];
    if (p_le_from(cb, e, f, raw_bicommutant(cb, pcq)).none())
      w = "P_<=(" + E.label(e) + ", " + E.label(f) + ") is empty";
  };
  const std::uint64_t work = static_cast<std::uint64_t>(n) * n / 2 * std::max<std::size_t>(1, cb.num_projections());
  if (work <= 400'000'000) {
    for (std::uint32_t e = 0; e < n && w.empty(); ++e)
      for (std::uint32_t f = e + 1; f < n && w.empty(); ++f) {
        probe(Elem{e}, Elem{f});
        if (w.empty()) probe(Elem{f}, Elem{e});
      }
  } else {
    rep.sampled = true;
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
    for (int i = 0; i < 2'000'000 && w.empty(); ++i) probe(Elem{pick(rng)}, Elem{pick(rng)});
  }
  rep.add("commuting pairs have nonempty P_<=", w.empty(), w);
  return rep;
}

Report check_mv_block(const CompressionBase& cb, const std::vector<Elem>& block) {
  const auto& E = cb.algebra();
  const PosetIndex& idx = poset_index(E);
  const std::size_t n = E.size(), m = block.size();
  Report rep;
  rep.subject = "C-block of size " + std::to_string(m);
  Bitset mask(n);
  for (Elem a : block) mask.set(a.id);
  std::vector<std::uint32_t> dcount(n, 0), ucount(n, 0);
  for (Elem a : block) {
    dcount[a.id] = static_cast<std::uint32_t>((idx.down(a) & mask).count());
    ucount[a.id] = static_cast<std::uint32_t>((idx.up(a) & mask).count());
  }
  auto best = [&](const Bitset& s, const std::vector<std::uint32_t>& cnt) -> std::optional<Elem> {
    const std::size_t need = s.count();
    for (auto i = s.find_first(); i != Bitset::npos; i = s.find_next(i))
      if (cnt[i] == need) return Elem{static_cast<std::uint32_t>(i)};
    return std::nullopt;
  };
  // Pair tables indexed by position in the block.
  std::vector<std::int32_t> pos(n, -1);
  for (std::size_t i = 0; i < m; ++i) pos[block[i].id] = static_cast<std::int32_t>(i);
  const bool tabulate = m <= 4096;
  std::vector<std::int32_t> meets(tabulate ? m * m : 0, -1), joins(tabulate ? m * m : 0, -1);
  std::string w;
  for (std::size_t i = 0; i < m && w.empty(); ++i)
    for (std::size_t j = i; j < m && w.empty(); ++j) {
      auto lo = best(idx.down(block[i]) & idx.down(block[j]) & mask, dcount);
      auto hi = best(idx.up(block[i]) & idx.up(block[j]) & mask, ucount);
      if (!lo || !hi) {
        w = "no meet or join of " + E.label(block[i]) + ", " + E.label(block[j]);
        break;
      }
      if (tabulate) {
        meets[i * m + j] = meets[j * m + i] = static_cast<std::int32_t>(lo->id);
        joins[i * m + j] = joins[j * m + i] = static_cast<std::int32_t>(hi->id);
      }
      auto l = E.ominus(*hi, block[i]), r = E.ominus(block[j], *lo);
      if (!l || !r || *l != *r) w = "(a v b) - a != b - (a ^ b) at " + E.label(block[i]) + ", " + E.label(block[j]);
    }
  rep.add("lattice with MV law", w.empty(), w);
  if (!w.empty() || !tabulate) {
    if (!tabulate) rep.sampled = true;
    return rep;
  }
  // Riesz decomposition with the witness b1 = a ^ b, c1 = a - b1.
  for (std::size_t i = 0; i < m && w.empty(); ++i)
    for (std::size_t j = 0; j < m && w.empty(); ++j) {
      auto bc = E.sum(block[i], block[j]);
      if (!bc) continue;
      for (std::size_t k = 0; k < m; ++k) {
        const Elem a = block[k];
        if (!E.leq(a, *bc)) continue;
        const Elem b1{static_cast<std::uint32_t>(meets[k * m + i])};
        auto c1 = E.ominus(a, b1);
        if (!c1 || !E.leq(*c1, block[j])) {
          w = "a = " + E.label(a) + " below " + E.label(block[i]) + " + " + E.label(block[j]);
          break;
        }
      }
    }
  rep.add("Riesz decomposition", w.empty(), w);
  return rep;
}

Report spectrality_report(const CompressionBase& cb) {
  const auto& E = cb.algebra();
  Report rep;
  rep.subject = "spectrality";
  std::vector<Elem> sharp = sharp_elements(E);
  std::string w;
  if (sharp != cb.projections()) {
    for (Elem a : sharp)
      if (!cb.is_projection(a)) {
        w = "sharp element " + E.label(a) + " is not a projection";
        break;
      }
    if (w.empty()) w = "|E_S| = " + std::to_string(sharp.size()) + ", |P| = " + std::to_string(cb.num_projections());
  }
  const bool p_is_es = w.empty();
  rep.add("P = E_S", p_is_es, w);
  Report bc = check_b_comparability(cb);
  rep.merge(bc);
  w.clear();
  for (Elem a : E.elements())
    if (!find_cover(cb, a)) {
      w = "no projection cover for " + E.label(a);
      break;
    }
  rep.add("projection cover property", w.empty(), w);
  if (bc.passed() && !p_is_es) rep.add("b-comparability forces P = E_S", false, "theory/implementation mismatch");
  if (rep.passed()) {
    for (const auto& b : blocks(cb)) {
      Report mv = check_mv_block(cb, c_block(cb, b));
      rep.sampled = rep.sampled || mv.sampled;
      if (!mv.passed()) {
        rep.add("C-blocks are MV-effect algebras", false, mv.first_failure()->detail);
        return rep;
      }
    }
    rep.add("C-blocks are MV-effect algebras", true);
  }
  return rep;
}

bool is_spectral(const CompressionBase& cb) { return spectrality_report(cb).passed(); }

Elem positive_part(const CompressionBase& cb, Elem b, Elem a) {
  const auto& E = cb.algebra();
  if (!commute(cb, a, b)) fail(ErrorKind::ComparabilityMissing, E.label(a) + " and " + E.label(b) + " do not commute");
  ProjectionSet s = p_le_set(cb, a, b);
  if (s.none()) fail(ErrorKind::ComparabilityMissing, "P_<=(" + E.label(a) + ", " + E.label(b) + ") is empty");
  std::optional<Elem> value;
  for (auto i = s.find_first(); i != ProjectionSet::npos; i = s.find_next(i)) {
    auto v = E.ominus(cb.apply_slot(i, b), cb.apply_slot(i, a));
    if (!v) fail(ErrorKind::InternalConsistency, "J_p(a) not below J_p(b) for p in P_<=");
    if (value && *value != *v) fail(ErrorKind::InternalConsistency, "positive part depends on the choice of p");
    value = v;
  }
  return *value;
}

Elem FiniteBackend::meet(Elem p, Elem q) const {
  auto m = meet_in_p(*cb_, p, q);
  if (!m) fail(ErrorKind::NoMeet, algebra().label(p) + " ^ " + algebra().label(q));
  return *m;
}

SplitResult<Elem> split(const CompressionBase& cb, Elem c, Elem q) {
  cb.algebra().check(c);
  cb.slot_of(q);
  return split(FiniteBackend(cb), c, q);
}

RestrictedBase restrict(const CompressionBase& cb, Elem q) {
  const auto& E = cb.algebra();
  cb.slot_of(q);
  std::vector<Elem> to_parent;
  std::vector<std::int32_t> from_parent(E.size(), -1);
  for (Elem a : E.elements())
    if (E.leq(a, q)) {
      from_parent[a.id] = static_cast<std::int32_t>(to_parent.size());
      to_parent.push_back(a);
    }
  const std::size_t k = to_parent.size();
  std::vector<std::int32_t> table(k * k, -1);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < k; ++i) {
    labels.push_back(E.label(to_parent[i]));
    for (std::size_t j = 0; j < k; ++j)
      if (auto s = E.sum(to_parent[i], to_parent[j]); s && E.leq(*s, q)) table[i * k + j] = from_parent[s->id];
  }
  auto model = std::make_shared<TableModel>(k, Elem{static_cast<std::uint32_t>(from_parent[E.zero().id])},
                                            Elem{static_cast<std::uint32_t>(from_parent[q.id])}, std::move(table),
                                            std::move(labels));
  FiniteEffectAlgebra R(model);
  std::vector<Elem> ps;
  for (Elem p : cb.projections())
    if (E.leq(p, q)) ps.push_back(Elem{static_cast<std::uint32_t>(from_parent[p.id])});
  auto maps = [cb, to_parent, from_parent](Elem p, Elem a) {
    Elem v = cb.apply(to_parent[p.id], to_parent[a.id]);
    return Elem{static_cast<std::uint32_t>(from_parent[v.id])};
  };
  RestrictedBase out{CompressionBase(R, ps, maps), std::move(to_parent), std::move(from_parent)};
  Report rep = validate_base(out.base);
  if (!rep.passed()) fail(ErrorKind::InternalConsistency, "restricted base invalid: " + rep.first_failure()->name);
  return out;
}

}  // namespace ea
