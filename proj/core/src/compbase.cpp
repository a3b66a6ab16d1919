#include "ea/compbase.hpp"

#include <algorithm>
#include <mutex>
#include <random>

#include "ea/error.hpp"

namespace ea {

struct BaseCache {
  std::once_flag once;
  std::vector<ProjectionSet> in_c;
  std::vector<std::int32_t> supp_slot;
};

CompressionBase::CompressionBase(FiniteEffectAlgebra E, std::vector<Elem> projections, MapFn maps)
    : E_(std::move(E)), P_(std::move(projections)), fn_(std::move(maps)), cache_(std::make_shared<BaseCache>()) {
  std::sort(P_.begin(), P_.end());
  P_.erase(std::unique(P_.begin(), P_.end()), P_.end());
  slot_.assign(E_.size(), -1);
  for (std::size_t s = 0; s < P_.size(); ++s) {
    E_.check(P_[s]);
    slot_[P_[s].id] = static_cast<std::int32_t>(s);
  }
  cache_->supp_slot.assign(P_.size(), -1);
  for (std::size_t s = 0; s < P_.size(); ++s)
    if (auto c = E_.try_supplement(P_[s]); c && slot_[c->id] >= 0) cache_->supp_slot[s] = slot_[c->id];
  if (P_.size() * E_.size() <= kTableLimit) {
    table_.resize(P_.size() * E_.size());
    for (std::size_t s = 0; s < P_.size(); ++s)
      for (std::uint32_t a = 0; a < E_.size(); ++a) {
        Elem v = fn_(P_[s], Elem{a});
        if (!E_.contains(v)) fail(ErrorKind::DomainMismatch, "compression value outside carrier");
        table_[s * E_.size() + a] = v;
      }
  }
}

std::optional<std::size_t> CompressionBase::slot(Elem p) const {
  if (!E_.contains(p) || slot_[p.id] < 0) return std::nullopt;
  return static_cast<std::size_t>(slot_[p.id]);
}

std::size_t CompressionBase::slot_of(Elem p) const {
  auto s = slot(p);
  if (!s) fail(ErrorKind::DomainMismatch, E_.contains(p) ? E_.label(p) + " is not a projection" : "element outside carrier");
  return *s;
}

std::optional<std::size_t> CompressionBase::supplement_slot(std::size_t s) const {
  auto v = cache_->supp_slot[s];
  if (v < 0) return std::nullopt;
  return static_cast<std::size_t>(v);
}

std::vector<Elem> CompressionBase::to_elements(const ProjectionSet& s) const {
  std::vector<Elem> out;
  for (auto i = s.find_first(); i != ProjectionSet::npos; i = s.find_next(i)) out.push_back(P_[i]);
  return out;
}

ProjectionSet CompressionBase::to_set(std::span<const Elem> ps) const {
  ProjectionSet s = empty_set();
  for (Elem p : ps) s.set(slot_of(p));
  return s;
}

namespace {

bool in_commutant_slot(const CompressionBase& cb, Elem a, std::size_t s) {
  auto t = cb.supplement_slot(s);
  if (!t) fail(ErrorKind::DomainMismatch, "supplement of " + cb.algebra().label(cb.projection(s)) + " is not a projection");
  auto x = cb.algebra().sum(cb.apply_slot(s, a), cb.apply_slot(*t, a));
  return x && *x == a;
}

}  // namespace

const ProjectionSet& CompressionBase::projections_in_commutant_of(std::size_t t) const {
  std::call_once(cache_->once, [&] {
    cache_->in_c.assign(P_.size(), empty_set());
    for (std::size_t u = 0; u < P_.size(); ++u)
      for (std::size_t s = 0; s < P_.size(); ++s)
        if (in_commutant_slot(*this, P_[s], u)) cache_->in_c[u].set(s);
  });
  return cache_->in_c[t];
}

std::string_view to_string(MapClass::Kind k) {
  switch (k) {
    case MapClass::Kind::NotAdditive: return "NotAdditive";
    case MapClass::Kind::NotRetraction: return "NotRetraction";
    case MapClass::Kind::Retraction: return "Retraction";
    case MapClass::Kind::Compression: return "Compression";
  }
  return "?";
}

MapClass classify_map(const FiniteEffectAlgebra& E, std::span<const Elem> J) {
  if (J.size() != E.size()) fail(ErrorKind::DomainMismatch, "map table has " + std::to_string(J.size()) + " entries");
  for (Elem v : J)
    if (!E.contains(v)) fail(ErrorKind::DomainMismatch, "map value outside carrier");
  const Elem p = J[E.one().id];
  for (Elem a : E.elements())
    for (Elem b : E.elements()) {
      auto s = E.sum(a, b);
      if (!s) continue;
      auto t = E.sum(J[a.id], J[b.id]);
      if (!t || *t != J[s->id])
        return {MapClass::Kind::NotAdditive, p, "J(" + E.label(a) + " + " + E.label(b) + ") != J(a) + J(b)"};
    }
  for (Elem a : E.elements())
    if (E.leq(a, p) && J[a.id] != a)
      return {MapClass::Kind::NotRetraction, p, E.label(a) + " <= J(1) but J(a) = " + E.label(J[a.id])};
  const Elem pp = E.supplement(p);
  for (Elem a : E.elements()) {
    bool zero = J[a.id] == E.zero();
    if (zero != E.leq(a, pp))
      return {MapClass::Kind::Retraction, p,
              zero ? "J(" + E.label(a) + ") = 0 but a is not below p'" : E.label(a) + " <= p' but J(a) != 0"};
  }
  return {MapClass::Kind::Compression, p, {}};
}

Report validate_base(const CompressionBase& cb, const ValidationOptions& opts) {
  const auto& E = cb.algebra();
  const auto& P = cb.projections();
  const std::size_t n = E.size(), m = P.size();
  Report rep;
  rep.subject = "compression base (|P| = " + std::to_string(m) + ")";

  rep.add("0 and 1 in P", cb.is_projection(E.zero()) && cb.is_projection(E.one()));
  std::string w;
  for (std::size_t s = 0; s < m && w.empty(); ++s)
    if (!cb.supplement_slot(s)) w = E.label(P[s]) + "' is not in P";
  rep.add("P closed under orthosupplement", w.empty(), w);
  if (!w.empty()) return rep;  // later checks need J_{p'}
  w.clear();
  for (std::size_t s = 0; s < m && w.empty(); ++s)
    for (std::size_t t = 0; t < m && w.empty(); ++t)
      if (auto x = E.sum(P[s], P[t]); x && !cb.is_projection(*x)) w = E.label(P[s]) + " + " + E.label(P[t]) + " is not in P";
  rep.add("P closed under orthogonal sums", w.empty(), w);

  // Scans over P x E and P x P x E use every element within the work budget, else a seeded probe set.
  auto probe_set = [&](std::uint64_t per_element) {
    if (static_cast<std::uint64_t>(n) * per_element <= opts.work_budget) return E.elements();
    rep.sampled = true;
    const std::uint64_t k = std::max<std::uint64_t>(2000, opts.work_budget / per_element);
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
    std::vector<Elem> out(P.begin(), P.end());
    out.push_back(E.zero());
    out.push_back(E.one());
    for (std::uint64_t i = 0; i < k; ++i) out.push_back(Elem{pick(rng)});
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  const std::vector<Elem> scan = probe_set(4 * static_cast<std::uint64_t>(m));
  const std::vector<Elem> probe = probe_set(4 * static_cast<std::uint64_t>(m) * m);

  // Normality: p = e+d, q = f+d in P with e+f+d defined forces d in P.
  w.clear();
  std::vector<Bitset> down(m, Bitset(probe.size()));
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t i = 0; i < probe.size(); ++i)
      if (E.leq(probe[i], P[s])) down[s].set(i);
  for (std::size_t s = 0; s < m && w.empty(); ++s)
    for (std::size_t t = 0; t < m && w.empty(); ++t) {
      const Bitset common = down[s] & down[t];
      for (auto i = common.find_first(); i != Bitset::npos; i = common.find_next(i)) {
        const Elem d = probe[i];
        if (cb.is_projection(d)) continue;
        if (E.sum(*E.ominus(P[s], d), P[t])) {
          w = "d = " + E.label(d) + " under p = " + E.label(P[s]) + ", q = " + E.label(P[t]);
          break;
        }
      }
    }
  rep.add("P normal", w.empty(), w);

  w.clear();
  for (std::size_t s = 0; s < m && w.empty(); ++s)
    if (cb.apply_slot(s, E.one()) != P[s]) w = "J_" + E.label(P[s]) + "(1) = " + E.label(cb.apply_slot(s, E.one()));
  rep.add("(C1) J_p(1) = p", w.empty(), w);

  // Compression law without additivity: range, retraction, kernel, idempotence.
  w.clear();
  for (std::size_t s = 0; s < m && w.empty(); ++s) {
    const Elem p = P[s], pp = E.supplement(p);
    for (Elem a : scan) {
      Elem j = cb.apply_slot(s, a);
      if (!E.leq(j, p)) w = "J_" + E.label(p) + "(" + E.label(a) + ") not below p";
      else if (cb.apply_slot(s, j) != j) w = "J_" + E.label(p) + " not idempotent at " + E.label(a);
      else if (E.leq(a, p) && j != a) w = "J_" + E.label(p) + " moves " + E.label(a) + " <= p";
      else if ((j == E.zero()) != E.leq(a, pp)) w = "kernel of J_" + E.label(p) + " differs from [0,p'] at " + E.label(a);
      if (!w.empty()) break;
    }
  }
  rep.add("compression law", w.empty(), w);

  // Additivity, exhaustive within budget.
  w.clear();
  std::uint64_t pairs = 0;
  const bool count_pairs = static_cast<std::uint64_t>(n) * n <= opts.work_budget;
  if (count_pairs)
    for (Elem a : E.elements())
      for (Elem b : E.elements())
        if (b.id >= a.id && E.sum(a, b)) ++pairs;
  auto additive_at = [&](std::size_t s, Elem a, Elem b) {
    auto x = E.sum(a, b);
    if (!x) return true;
    auto y = E.sum(cb.apply_slot(s, a), cb.apply_slot(s, b));
    if (y && *y == cb.apply_slot(s, *x)) return true;
    w = "J_" + E.label(P[s]) + " not additive at (" + E.label(a) + ", " + E.label(b) + ")";
    return false;
  };
  if (count_pairs && pairs * m <= opts.work_budget) {
    for (std::size_t s = 0; s < m && w.empty(); ++s)
      for (std::uint32_t a = 0; a < n && w.empty(); ++a)
        for (std::uint32_t b = a; b < n; ++b)
          if (!additive_at(s, Elem{a}, Elem{b})) break;
  } else {
    rep.sampled = true;
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
    for (std::uint64_t i = 0; i < opts.samples && w.empty(); ++i) {
      additive_at(i % m, Elem{pick(rng)}, Elem{pick(rng)});
    }
  }
  rep.add("J_p additive", w.empty(), w);

  // Supplement relation: ker J_p = ran J_{p'}, elementwise given idempotence.
  w.clear();
  for (std::size_t s = 0; s < m && w.empty(); ++s) {
    const std::size_t t = *cb.supplement_slot(s);
    for (Elem a : scan) {
      const Elem r = cb.apply_slot(t, a);
      if ((cb.apply_slot(s, a) == E.zero()) != (r == a) || cb.apply_slot(s, r) != E.zero()) {
        w = "ker J_" + E.label(P[s]) + " != ran J_" + E.label(P[t]) + " at " + E.label(a);
        break;
      }
    }
  }
  rep.add("J_p' supplements J_p", w.empty(), w);

  // (C2) over Mackey compatible pairs of projections.
  w.clear();
  for (std::size_t s = 0; s < m && w.empty(); ++s)
    for (std::size_t t = 0; t < m && w.empty(); ++t) {
      if (!mackey_compatible(E, P[s], P[t], cb.apply_slot(s, P[t]))) continue;
      Elem r = cb.apply_slot(s, P[t]);
      auto rs = cb.slot(r);
      if (!rs) {
        w = "J_" + E.label(P[s]) + "(" + E.label(P[t]) + ") = " + E.label(r) + " is not a projection";
        break;
      }
      for (Elem a : probe)
        if (cb.apply_slot(s, cb.apply_slot(t, a)) != cb.apply_slot(*rs, a)) {
          w = "J_" + E.label(P[s]) + " J_" + E.label(P[t]) + " != J_" + E.label(r) + " at " + E.label(a);
          break;
        }
    }
  rep.add("(C2) compatible projections compose", w.empty(), w);

  // J_{p+q} J_{q+r} = J_q for orthogonal p, q, r in P.
  w.clear();
  for (std::size_t s = 0; s < m && w.empty(); ++s)
    for (std::size_t t = 0; t < m && w.empty(); ++t) {
      auto pq = E.sum(P[s], P[t]);
      if (!pq) continue;
      for (std::size_t u = 0; u < m && w.empty(); ++u) {
        if (!E.sum(*pq, P[u])) continue;
        Elem qr = *E.sum(P[t], P[u]);
        const std::size_t spq = cb.slot_of(*pq), sqr = cb.slot_of(qr);
        for (Elem a : probe)
          if (cb.apply_slot(spq, cb.apply_slot(sqr, a)) != cb.apply_slot(t, a)) {
            w = "p, q, r = " + E.label(P[s]) + ", " + E.label(P[t]) + ", " + E.label(P[u]) + " at " + E.label(a);
            break;
          }
      }
    }
  rep.add("triple law", w.empty(), w);
  return rep;
}

std::vector<Elem> center(const FiniteEffectAlgebra& E) {
  std::vector<Elem> out;
  for (Elem p : E.elements()) {
    if (!is_sharp(E, p) || !is_principal(E, p)) continue;
    const Elem pp = E.supplement(p);
    if (!is_principal(E, pp)) continue;
    bool ok = true;
    for (Elem a : E.elements()) {
      auto x = meet(E, a, p), y = meet(E, a, pp);
      if (!x || !y) {
        ok = false;
        break;
      }
      auto s = E.sum(*x, *y);
      if (!s || *s != a) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(p);
  }
  return out;
}

CompressionBase central_base(const FiniteEffectAlgebra& E) {
  return CompressionBase(E, center(E), [E](Elem p, Elem a) { return *meet(E, a, p); });
}

bool in_commutant(const CompressionBase& cb, Elem a, Elem p) {
  cb.algebra().check(a);
  return in_commutant_slot(cb, a, cb.slot_of(p));
}

std::vector<Elem> commutant(const CompressionBase& cb, Elem p) {
  const std::size_t s = cb.slot_of(p);
  std::vector<Elem> out;
  for (Elem a : cb.algebra().elements())
    if (in_commutant_slot(cb, a, s)) out.push_back(a);
  return out;
}

ProjectionSet pc(const CompressionBase& cb, Elem a) {
  cb.algebra().check(a);
  ProjectionSet out = cb.empty_set();
  for (std::size_t s = 0; s < cb.num_projections(); ++s)
    if (in_commutant_slot(cb, a, s)) out.set(s);
  return out;
}

ProjectionSet pc(const CompressionBase& cb, std::span<const Elem> q) {
  ProjectionSet out = cb.full_set();
  for (Elem a : q) out &= pc(cb, a);
  return out;
}

bool is_boolean_subalgebra(const CompressionBase& cb, const ProjectionSet& s) {
  const auto& E = cb.algebra();
  if (!s.test(cb.slot_of(E.zero())) || !s.test(cb.slot_of(E.one()))) return false;
  for (auto i = s.find_first(); i != ProjectionSet::npos; i = s.find_next(i)) {
    auto c = cb.supplement_slot(i);
    if (!c || !s.test(*c)) return false;
    if (!s.is_subset_of(cb.projections_in_commutant_of(i))) return false;
    for (auto j = s.find_first(); j != ProjectionSet::npos; j = s.find_next(j)) {
      auto r = cb.slot(cb.apply_slot(i, cb.projection(j)));
      if (!r || !s.test(*r)) return false;
    }
  }
  return true;
}

namespace {

ProjectionSet double_commutant(const CompressionBase& cb, const ProjectionSet& pcq) {
  ProjectionSet out = cb.empty_set();
  for (auto t = pcq.find_first(); t != ProjectionSet::npos; t = pcq.find_next(t))
    if (pcq.is_subset_of(cb.projections_in_commutant_of(t))) out.set(t);
  if (!is_boolean_subalgebra(cb, out)) fail(ErrorKind::InternalConsistency, "bicommutant is not a Boolean subalgebra of P");
  return out;
}

}  // namespace

ProjectionSet bicommutant(const CompressionBase& cb, Elem a) { return double_commutant(cb, pc(cb, a)); }

ProjectionSet bicommutant(const CompressionBase& cb, std::span<const Elem> q) { return double_commutant(cb, pc(cb, q)); }

std::vector<ProjectionSet> blocks(const CompressionBase& cb) {
  const std::size_t m = cb.num_projections();
  std::vector<ProjectionSet> adj(m, cb.empty_set());
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t t = 0; t < m; ++t)
      if (s != t && cb.projections_in_commutant_of(s).test(t) && cb.projections_in_commutant_of(t).test(s)) adj[s].set(t);

  std::vector<ProjectionSet> out;
  std::function<void(ProjectionSet, ProjectionSet, ProjectionSet)> bk = [&](ProjectionSet R, ProjectionSet Pset,
                                                                            ProjectionSet X) {
    if (Pset.none() && X.none()) {
      out.push_back(R);
      return;
    }
    ProjectionSet px = Pset | X;
    std::size_t pivot = px.find_first(), best = 0;
    for (auto u = px.find_first(); u != ProjectionSet::npos; u = px.find_next(u))
      if (auto c = (Pset & adj[u]).count(); c >= best) {
        best = c;
        pivot = u;
      }
    ProjectionSet cand = Pset - adj[pivot];
    for (auto v = cand.find_first(); v != ProjectionSet::npos; v = cand.find_next(v)) {
      ProjectionSet R2 = R;
      R2.set(v);
      bk(R2, Pset & adj[v], X & adj[v]);
      Pset.reset(v);
      X.set(v);
    }
  };
  bk(cb.empty_set(), cb.full_set(), cb.empty_set());
  std::sort(out.begin(), out.end(), [&](const ProjectionSet& a, const ProjectionSet& b) {
    return cb.to_elements(a) < cb.to_elements(b);
  });
  for (const auto& b : out)
    if (!is_boolean_subalgebra(cb, b)) fail(ErrorKind::InternalConsistency, "block is not a Boolean subalgebra");
  return out;
}

std::vector<Elem> c_block(const CompressionBase& cb, const ProjectionSet& block) {
  std::vector<Elem> out;
  for (Elem a : cb.algebra().elements()) {
    bool in = true;
    for (auto s = block.find_first(); s != ProjectionSet::npos && in; s = block.find_next(s))
      in = in_commutant_slot(cb, a, s);
    if (in) out.push_back(a);
  }
  return out;
}

std::optional<Elem> meet_in_p(const CompressionBase& cb, Elem p, Elem q) {
  const auto& E = cb.algebra();
  const std::size_t s = cb.slot_of(p), t = cb.slot_of(q);
  if (cb.projections_in_commutant_of(s).test(t)) return cb.apply_slot(s, q);
  std::vector<Elem> lower;
  for (Elem r : cb.projections())
    if (E.leq(r, p) && E.leq(r, q)) lower.push_back(r);
  for (Elem r : lower)
    if (std::all_of(lower.begin(), lower.end(), [&](Elem x) { return E.leq(x, r); })) return r;
  return std::nullopt;
}

std::optional<Elem> join_in_p(const CompressionBase& cb, Elem p, Elem q) {
  const auto& E = cb.algebra();
  auto m = meet_in_p(cb, E.supplement(p), E.supplement(q));
  if (!m) return std::nullopt;
  return E.supplement(*m);
}

std::optional<Elem> find_cover(const CompressionBase& cb, Elem a) {
  const auto& E = cb.algebra();
  E.check(a);
  std::vector<Elem> above;
  for (Elem q : cb.projections())
    if (E.leq(a, q)) above.push_back(q);
  for (Elem c : above)
    if (std::all_of(above.begin(), above.end(), [&](Elem q) { return E.leq(c, q); })) return c;
  return std::nullopt;
}

Elem projection_cover(const CompressionBase& cb, Elem a) {
  auto c = find_cover(cb, a);
  if (!c) fail(ErrorKind::NoCover, "no least projection above " + cb.algebra().label(a));
  if (!bicommutant(cb, a).test(cb.slot_of(*c)))
    fail(ErrorKind::InternalConsistency, "cover of " + cb.algebra().label(a) + " is not in P(a)");
  return *c;
}

bool has_pcp(const CompressionBase& cb) {
  for (Elem a : cb.algebra().elements())
    if (!find_cover(cb, a)) return false;
  return true;
}

Report check_oml(const CompressionBase& cb) {
  const auto& E = cb.algebra();
  const auto& P = cb.projections();
  const std::size_t m = P.size();
  Report rep;
  rep.subject = "orthomodular lattice P";
  for (Elem a : E.elements())
    if (!find_cover(cb, a)) fail(ErrorKind::NoCover, "no least projection above " + E.label(a));

  std::string w;
  for (std::size_t s = 0; s < m && w.empty(); ++s)
    for (std::size_t t = 0; t < m && w.empty(); ++t)
      if (!meet_in_p(cb, P[s], P[t]) || !join_in_p(cb, P[s], P[t]))
        w = "no meet or join for " + E.label(P[s]) + ", " + E.label(P[t]);
  rep.add("lattice", w.empty(), w);
  if (!w.empty()) return rep;

  w.clear();
  for (std::size_t s = 0; s < m && w.empty(); ++s)
    for (std::size_t t = 0; t < m && w.empty(); ++t) {
      if (!E.leq(P[s], P[t])) continue;
      Elem r = *meet_in_p(cb, P[t], E.supplement(P[s]));
      if (*join_in_p(cb, P[s], r) != P[t]) w = "p = " + E.label(P[s]) + ", q = " + E.label(P[t]);
    }
  rep.add("orthomodular law", w.empty(), w);

  w.clear();
  const PosetIndex& idx = poset_index(E);
  auto closed = [&](std::span<const std::size_t> slots) {
    Bitset d(E.size()), u(E.size());
    d.set();
    u.set();
    for (std::size_t s : slots) {
      d &= idx.down(P[s]);
      u &= idx.up(P[s]);
    }
    auto lo = idx.greatest_of_down_set(d);
    auto hi = idx.least_of_up_set(u);
    Elem pm = P[slots[0]], pj = P[slots[0]];
    for (std::size_t k = 1; k < slots.size(); ++k) {
      pm = *meet_in_p(cb, pm, P[slots[k]]);
      pj = *join_in_p(cb, pj, P[slots[k]]);
    }
    if (lo && *lo != pm) return false;
    if (hi && *hi != pj) return false;
    return true;
  };
  std::uint64_t work = static_cast<std::uint64_t>(m) * m * m;
  if (work <= 2'000'000) {
    for (std::size_t s = 0; s < m && w.empty(); ++s)
      for (std::size_t t = s + 1; t < m && w.empty(); ++t) {
        std::size_t two[] = {s, t};
        if (!closed(two)) w = "{" + E.label(P[s]) + ", " + E.label(P[t]) + "}";
        for (std::size_t u = t + 1; u < m && w.empty(); ++u) {
          std::size_t three[] = {s, t, u};
          if (!closed(three)) w = "{" + E.label(P[s]) + ", " + E.label(P[t]) + ", " + E.label(P[u]) + "}";
        }
      }
  } else {
    rep.sampled = true;
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    for (int i = 0; i < 20000 && w.empty(); ++i) {
      std::size_t three[] = {pick(rng), pick(rng), pick(rng)};
      if (!closed(three)) w = "sampled subset failed";
    }
  }
  rep.add("meets and joins of P agree with E (subsets of size <= 3)", w.empty(), w);
  return rep;
}

}  // namespace ea
