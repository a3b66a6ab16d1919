#include "ea/group.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "ea/comparability.hpp"
#include "ea/error.hpp"

namespace ea {

LatticeGroup::LatticeGroup(GroupElement unit) : unit_(std::move(unit)) {
  if (unit_.empty() || unit_.size() > kMaxRank) fail(ErrorKind::DomainMismatch, "group rank must be in 1..63");
  for (auto x : unit_)
    if (x < 1) fail(ErrorKind::DomainMismatch, "order unit needs coordinates >= 1");
}

void LatticeGroup::check(const GroupElement& g) const {
  if (g.size() != rank())
    fail(ErrorKind::DomainMismatch, "element has " + std::to_string(g.size()) + " coordinates, group rank is " +
                                        std::to_string(rank()));
}

GroupElement LatticeGroup::element(GroupProjection p) const {
  GroupElement g(rank(), 0);
  for (std::size_t i = 0; i < rank(); ++i)
    if (p >> i & 1U) g[i] = unit_[i];
  return g;
}

GroupElement LatticeGroup::compress(GroupProjection p, const GroupElement& g) const {
  check(g);
  GroupElement h(rank(), 0);
  for (std::size_t i = 0; i < rank(); ++i)
    if (p >> i & 1U) h[i] = g[i];
  return h;
}

bool LatticeGroup::in_commutant(const GroupElement& g, GroupProjection p) const {
  return add(compress(p, g), compress(supplement(p), g)) == g;
}

bool LatticeGroup::leq(const GroupElement& g, const GroupElement& h) const {
  check(g);
  check(h);
  for (std::size_t i = 0; i < rank(); ++i)
    if (g[i] > h[i]) return false;
  return true;
}

GroupElement LatticeGroup::add(const GroupElement& g, const GroupElement& h) const {
  check(g);
  check(h);
  GroupElement r(rank());
  for (std::size_t i = 0; i < rank(); ++i) r[i] = g[i] + h[i];
  return r;
}

GroupElement LatticeGroup::sub(const GroupElement& g, const GroupElement& h) const {
  check(g);
  check(h);
  GroupElement r(rank());
  for (std::size_t i = 0; i < rank(); ++i) r[i] = g[i] - h[i];
  return r;
}

GroupElement LatticeGroup::scale(std::int64_t k, const GroupElement& g) const {
  check(g);
  GroupElement r(rank());
  for (std::size_t i = 0; i < rank(); ++i) r[i] = k * g[i];
  return r;
}

GroupElement LatticeGroup::shift(const GroupElement& g, std::int64_t m, std::int64_t n) const {
  return sub(scale(n, g), scale(m, unit_));
}

Decomposition orthogonal_decomposition(const LatticeGroup& G, const GroupElement& g) {
  G.check(g);
  Decomposition d{G.zero(), G.zero(), 0};
  for (std::size_t i = 0; i < G.rank(); ++i) {
    if (g[i] > 0) {
      d.pos[i] = g[i];
      d.p |= GroupProjection{1} << i;
    } else {
      d.neg[i] = -g[i];
    }
  }
  if (G.compress(d.p, g) != d.pos || G.compress(G.supplement(d.p), g) != G.scale(-1, d.neg))
    fail(ErrorKind::InternalConsistency, "orthogonal decomposition");
  return d;
}

GroupProjection rickart(const LatticeGroup& G, const GroupElement& g) {
  G.check(g);
  GroupProjection star = 0;
  for (std::size_t i = 0; i < G.rank(); ++i)
    if (g[i] == 0) star |= GroupProjection{1} << i;
  if (G.rank() <= 12) {
    for (GroupProjection p = 0; p <= G.full(); ++p) {
      const bool below = (p & ~star) == 0;
      const bool kills = G.in_commutant(g, p) && G.compress(p, g) == G.zero();
      if (below != kills) fail(ErrorKind::InternalConsistency, "Rickart biconditional fails for " + to_string(g));
    }
  }
  return star;
}

GroupProjection group_spectral(const LatticeGroup& G, const GroupElement& g, std::int64_t m, std::int64_t n) {
  if (n <= 0) fail(ErrorKind::DomainMismatch, "group_spectral needs n > 0");
  const GroupProjection p = rickart(G, orthogonal_decomposition(G, G.shift(g, m, n)).pos);
  const GroupProjection q = rickart(G, orthogonal_decomposition(G, G.shift(g, 2 * m, 2 * n)).pos);
  if (p != q) fail(ErrorKind::InternalConsistency, "spectral projection depends on the representation of m/n");
  return p;
}

GroupProjection group_spectral(const LatticeGroup& G, const GroupElement& g, const Rational& lambda) {
  return group_spectral(G, g, lambda.numerator(), lambda.denominator());
}

std::pair<Rational, Rational> bounds(const LatticeGroup& G, const GroupElement& g) {
  G.check(g);
  Rational lo(g[0], G.unit()[0]), hi = lo;
  for (std::size_t i = 1; i < G.rank(); ++i) {
    Rational r(g[i], G.unit()[i]);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi};
}

Rational norm(const LatticeGroup& G, const GroupElement& g) {
  G.check(g);
  Rational best(0);
  for (std::size_t i = 0; i < G.rank(); ++i) best = std::max(best, Rational(g[i] < 0 ? -g[i] : g[i], G.unit()[i]));
  return best;
}

Rational norm_by_definition(const LatticeGroup& G, const GroupElement& g, std::int64_t max_k) {
  G.check(g);
  std::optional<Rational> best;
  for (std::int64_t k = 1; k <= max_k; ++k) {
    // Smallest n with -n u <= k g <= n u.
    std::int64_t n = 0;
    for (std::size_t i = 0; i < G.rank(); ++i) {
      const std::int64_t a = k * (g[i] < 0 ? -g[i] : g[i]);
      n = std::max(n, (a + G.unit()[i] - 1) / G.unit()[i]);
    }
    Rational r(n, k);
    if (!best || r < *best) best = r;
  }
  return best.value_or(Rational(0));
}

std::vector<GroupProjection> p_plus_minus(const LatticeGroup& G, const GroupElement& g) {
  G.check(g);
  if (G.rank() > 20) fail(ErrorKind::SizeLimit, "P_+- enumeration limited to rank 20");
  std::vector<GroupProjection> out;
  for (GroupProjection p = 0; p <= G.full(); ++p)
    if (G.positive(G.compress(p, g)) && G.leq(G.compress(G.supplement(p), g), G.zero())) out.push_back(p);
  return out;
}

DyadicApproximation dyadic_approximation(const LatticeGroup& G, const GroupElement& g, const std::vector<std::int64_t>& grid,
                                         std::int64_t n) {
  G.check(g);
  if (n <= 0) fail(ErrorKind::DomainMismatch, "scale n must be positive");
  if (grid.size() < 2) fail(ErrorKind::GridTooNarrow, "grid needs at least two points");
  if (!std::is_sorted(grid.begin(), grid.end())) fail(ErrorKind::DomainMismatch, "grid must be nondecreasing");
  const Rational reach = norm(G, g) * n;
  if (Rational(grid.front()) > -reach || Rational(grid.back()) < reach)
    fail(ErrorKind::GridTooNarrow, "grid must cover [-" + to_string(reach) + ", " + to_string(reach) + "]");
  const std::size_t N = grid.size() - 1;
  auto in_ppm = [&](GroupProjection q, std::int64_t m) {
    const GroupElement h = G.shift(g, m, n);
    return G.positive(G.compress(q, h)) && G.leq(G.compress(G.supplement(q), h), G.zero());
  };
  std::vector<GroupProjection> q(N + 1, 0);
  q[0] = G.full();
  for (std::size_t i = 0; i + 2 <= N; ++i) {
    const GroupProjection r = orthogonal_decomposition(G, G.shift(g, grid[i + 1], n)).p;
    q[i + 1] = r & q[i];
  }
  q[N] = 0;
  for (std::size_t i = 0; i <= N; ++i)
    if (!in_ppm(q[i], grid[i])) fail(ErrorKind::InternalConsistency, "q_" + std::to_string(i) + " not in P_+-");
  DyadicApproximation out;
  GroupElement approx = G.zero();
  GroupProjection covered = 0;
  for (std::size_t i = 1; i <= N; ++i) {
    const GroupProjection ui = q[i - 1] & G.supplement(q[i]);
    if (covered & ui) fail(ErrorKind::InternalConsistency, "approximation parts overlap");
    covered |= ui;
    out.parts.push_back(ui);
    approx = G.add(approx, G.scale(grid[i], G.element(ui)));
  }
  if (covered != G.full()) fail(ErrorKind::InternalConsistency, "approximation parts do not sum to u");
  out.error = norm(G, G.sub(G.scale(n, g), approx));
  out.bound = 0;
  for (std::size_t i = 0; i < N; ++i) out.bound = std::max(out.bound, Rational(grid[i + 1] - grid[i]));
  if (out.error > out.bound) fail(ErrorKind::InternalConsistency, "approximation error exceeds the grid gap");
  return out;
}

Report verify_group_resolution(const LatticeGroup& G, const GroupElement& g, std::vector<Rational> lambdas) {
  G.check(g);
  const auto [lg, ug] = bounds(G, g);
  std::set<Rational> breaks;
  for (std::size_t i = 0; i < G.rank(); ++i) breaks.insert(Rational(g[i], G.unit()[i]));
  for (const auto& b : breaks) {
    lambdas.push_back(b);
    lambdas.push_back(b - Rational(1, 7));
    lambdas.push_back(b + Rational(1, 7));
  }
  for (auto it = breaks.begin(); it != breaks.end() && std::next(it) != breaks.end(); ++it)
    lambdas.push_back((*it + *std::next(it)) / 2);
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());

  Report rep;
  rep.subject = "group resolution of " + to_string(g);
  std::vector<GroupProjection> p;
  for (const auto& l : lambdas) p.push_back(group_spectral(G, g, l));

  std::string w;
  for (std::size_t i = 0; i < lambdas.size() && w.empty(); ++i) {
    if (lambdas[i] < lg && p[i] != 0) w = "p at " + to_string(lambdas[i]) + " below l_g is nonzero";
    if (lambdas[i] >= ug && p[i] != G.full()) w = "p at " + to_string(lambdas[i]) + " above u_g is not u";
  }
  rep.add("(i) p = 0 below l_g, p = u from u_g on", w.empty(), w);

  w.clear();
  for (std::size_t i = 0; i + 1 < lambdas.size() && w.empty(); ++i)
    if ((p[i] & ~p[i + 1]) != 0) w = "p at " + to_string(lambdas[i]) + " not below p at " + to_string(lambdas[i + 1]);
  rep.add("(ii) monotone", w.empty(), w);

  w.clear();
  for (std::size_t i = 0; i < lambdas.size() && w.empty(); ++i) {
    auto next = breaks.upper_bound(lambdas[i]);
    const Rational step = next == breaks.end() ? Rational(1) : (*next - lambdas[i]) / 2;
    GroupProjection meet = group_spectral(G, g, lambdas[i] + step);
    for (std::size_t j = i + 1; j < lambdas.size(); ++j) meet &= p[j];
    if (meet != p[i]) w = "meet above " + to_string(lambdas[i]) + " differs from p";
  }
  rep.add("(iii) right-continuous", w.empty(), w);

  w.clear();
  for (std::size_t i = 0; i < lambdas.size() && w.empty(); ++i)
    for (std::int64_t k : {1, 3}) {
      const std::int64_t m = lambdas[i].numerator() * k, n = lambdas[i].denominator() * k;
      const GroupProjection q = p[i], qq = G.supplement(p[i]);
      if (!G.leq(G.scale(n, G.compress(q, g)), G.scale(m, G.element(q))) ||
          !G.leq(G.scale(m, G.element(qq)), G.scale(n, G.compress(qq, g))))
        w = "lambda = " + std::to_string(m) + "/" + std::to_string(n);
    }
  rep.add("(iv) n J_p(g) <= m p and m p' <= n J_p'(g)", w.empty(), w);
  return rep;
}

Report check_comparability_equivalence(const CompressionBase& cb, const GroupEmbedding& emb, std::uint64_t samples,
                                       std::uint64_t seed) {
  const LatticeGroup& G = emb.group;
  Report rep;
  rep.subject = "b-comparability vs general comparability";
  const bool bcomp = check_b_comparability(cb).passed();
  std::mt19937_64 rng(seed);
  bool general = true;
  std::string w;
  GroupElement g(G.rank());
  auto probe = [&] {
    if (p_plus_minus(G, g).empty()) {
      general = false;
      w = "P_+-(" + to_string(g) + ") is empty";
    }
  };
  for (Elem a : cb.algebra().elements()) {
    if (emb.embed(a).size() != G.rank()) fail(ErrorKind::DomainMismatch, "embedding rank");
  }
  for (std::uint64_t s = 0; s < samples && general; ++s) {
    for (std::size_t i = 0; i < G.rank(); ++i) {
      std::uniform_int_distribution<std::int64_t> d(-2 * G.unit()[i], 2 * G.unit()[i]);
      g[i] = d(rng);
    }
    probe();
  }
  // Differences of embedded elements span the group.
  for (Elem a : cb.algebra().elements()) {
    if (!general) break;
    g = G.sub(emb.embed(a), emb.embed(cb.algebra().supplement(a)));
    probe();
  }
  rep.sampled = true;
  rep.add("agreement", bcomp == general,
          std::string("b-comparability: ") + (bcomp ? "yes" : "no") + ", general comparability: " + (general ? "yes" : "no") +
              (w.empty() ? "" : " (" + w + ")"));
  return rep;
}

std::string to_string(const GroupElement& g) {
  std::string s = "(";
  for (std::size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + std::to_string(g[i]);
  return s + ")";
}

std::string mask_to_string(const LatticeGroup& G, GroupProjection p) { return to_string(G.element(p)); }

}  // namespace ea
