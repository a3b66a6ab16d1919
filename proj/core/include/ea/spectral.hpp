#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ea/backend.hpp"
#include "ea/comparability.hpp"
#include "ea/dyadic.hpp"
#include "ea/error.hpp"
#include "ea/rational.hpp"
#include "ea/report.hpp"
#include "ea/state.hpp"

namespace ea {

// Nodes with u_w = 0 are not stored; their subtree is identically zero.
template <class E>
class SplittingTree {
 public:
  struct Node {
    std::uint64_t k;
    E u;
    E c;
  };

  SplittingTree(unsigned depth, E zero, E cover) : levels_(depth + 1), zero_(std::move(zero)), cover_(std::move(cover)) {}

  unsigned depth() const { return static_cast<unsigned>(levels_.size() - 1); }
  const E& cover() const { return cover_; }
  const std::vector<Node>& level(unsigned l) const { return levels_.at(l); }
  std::vector<Node>& level(unsigned l) { return levels_.at(l); }

  const E& u(unsigned l, std::uint64_t k) const {
    const Node* x = find(l, k);
    return x ? x->u : zero_;
  }
  const E& c(unsigned l, std::uint64_t k) const {
    const Node* x = find(l, k);
    return x ? x->c : zero_;
  }
  const E& u(const BinaryString& w) const { return u(w.length(), w.index()); }
  const E& c(const BinaryString& w) const { return c(w.length(), w.index()); }

 private:
  const Node* find(unsigned l, std::uint64_t k) const {
    const auto& v = levels_.at(l);
    auto it = std::lower_bound(v.begin(), v.end(), k, [](const Node& n, std::uint64_t x) { return n.k < x; });
    return it != v.end() && it->k == k ? &*it : nullptr;
  }

  std::vector<std::vector<Node>> levels_;
  E zero_;
  E cover_;
};

// Projections p_{j/2^n}, j = 0..2^n.
template <class E>
struct SpectralResolution {
  static constexpr unsigned kMaxDepth = 24;

  unsigned depth = 0;
  std::vector<E> entries;

  const E& at(const DyadicRational& lambda) const { return entries.at(lambda.at_level(depth)); }
  E& at(const DyadicRational& lambda) { return entries.at(lambda.at_level(depth)); }
};

template <class E>
struct RationalValue {
  E value;
  bool stable = true;
  unsigned depth = 0;
};

template <class E>
struct CommutationVerdict {
  bool element_commutes = false;
  bool spectrum_commutes = false;
  Report report;
};

namespace detail {

template <SpectralBackend B>
bool is_zero(const B& b, const typename B::element_type& x) {
  return b.equal(x, b.zero());
}

template <class T>
T dyadic_scalar(std::uint64_t k, unsigned n) {
  if constexpr (std::is_floating_point_v<T>) {
    return static_cast<T>(k) / static_cast<T>(std::uint64_t{1} << n);
  } else {
    return T(static_cast<std::int64_t>(k), std::int64_t{1} << n);
  }
}

template <class T>
bool scalar_equal(const T& x, const T& y) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::abs(x - y) <= 1e-9;
  } else {
    return x == y;
  }
}

}  // namespace detail

template <SpectralBackend B>
SplittingTree<typename B::element_type> splitting_tree(const B& b, const typename B::element_type& a, unsigned n) {
  using E = typename B::element_type;
  if (n > DyadicRational::kMaxLevel) fail(ErrorKind::DomainMismatch, "depth too large");
  const E a0 = b.cover(a);
  SplittingTree<E> tree(n, b.zero(), a0);
  if (!detail::is_zero(b, a0)) tree.level(0).push_back({0, a0, a});
  for (unsigned l = 0; l < n; ++l) {
    auto& next = tree.level(l + 1);
    for (const auto& node : tree.level(l)) {
      auto s = split(b, node.c, node.u);
      if (!detail::is_zero(b, s.u0)) next.push_back({2 * node.k, s.u0, s.c0});
      if (!detail::is_zero(b, s.u1)) next.push_back({2 * node.k + 1, s.u1, s.c1});
    }
  }
  const auto bic = b.bicommutant(a);
  for (unsigned l = 0; l <= n; ++l) {
    E acc = b.zero();
    for (const auto& node : tree.level(l)) {
      if (!bic.contains(node.u))
        fail(ErrorKind::InternalConsistency, "u_w outside P(a) at level " + std::to_string(l));
      auto s = b.sum(acc, node.u);
      if (!s) fail(ErrorKind::InternalConsistency, "u_w not orthogonal at level " + std::to_string(l));
      acc = *s;
    }
    if (!b.equal(acc, a0)) fail(ErrorKind::InternalConsistency, "layer " + std::to_string(l) + " does not add up to the cover");
  }
  return tree;
}

template <SpectralBackend B>
SpectralResolution<typename B::element_type> binary_resolution(const B& b,
                                                               const SplittingTree<typename B::element_type>& tree) {
  using E = typename B::element_type;
  const unsigned n = tree.depth();
  if (n > SpectralResolution<E>::kMaxDepth) fail(ErrorKind::DomainMismatch, "resolution depth too large");
  const std::uint64_t top = std::uint64_t{1} << n;
  SpectralResolution<E> res;
  res.depth = n;
  const E p0 = b.supplement(tree.cover());
  res.entries.assign(top + 1, p0);
  res.entries[top] = b.one();
  // p_{j/2^l} for odd j: (a°)' plus u_v over level-l strings v <= w0.
  for (unsigned l = 1; l <= n; ++l) {
    const auto& nodes = tree.level(l);
    std::size_t idx = 0;
    E acc = p0;
    for (std::uint64_t j = 1; j < (std::uint64_t{1} << l); j += 2) {
      while (idx < nodes.size() && nodes[idx].k <= j - 1) {
        auto s = b.sum(acc, nodes[idx].u);
        if (!s) fail(ErrorKind::InternalConsistency, "prefix sum undefined");
        acc = *s;
        ++idx;
      }
      res.entries[j << (n - l)] = acc;
    }
  }
  for (std::uint64_t j = 0; j < top; ++j) {
    if (!b.leq(res.entries[j], res.entries[j + 1]))
      fail(ErrorKind::InternalConsistency, "resolution not monotone at " + DyadicRational(j, n).to_string());
    auto s = b.sum(res.entries[j], tree.u(n, j));
    if (!s || !b.equal(*s, res.entries[j + 1]))
      fail(ErrorKind::InternalConsistency, "p + u_w != next entry at " + DyadicRational(j, n).to_string());
  }
  return res;
}

template <SpectralBackend B>
SpectralResolution<typename B::element_type> binary_resolution(const B& b, const typename B::element_type& a,
                                                               unsigned n) {
  return binary_resolution(b, splitting_tree(b, a, n));
}

// Meet of p_mu over dyadic mu > lambda of level <= depth, compared against depth - 1.
template <SpectralBackend B>
RationalValue<typename B::element_type> rational_resolution(const B& b,
                                                            const SpectralResolution<typename B::element_type>& res,
                                                            const Rational& lambda, bool require_stable = true) {
  using E = typename B::element_type;
  if (!b.archimedean()) fail(ErrorKind::NotArchimedean, "right-continuous extension needs an archimedean algebra");
  if (lambda < 0 || lambda > 1) fail(ErrorKind::DomainMismatch, "lambda outside [0,1]");
  if (res.depth < 1) fail(ErrorKind::DomainMismatch, "rational resolution needs depth >= 1");
  const unsigned n = res.depth;
  if (lambda == 1) return {b.one(), true, n};
  const auto den = static_cast<std::uint64_t>(lambda.denominator());
  if ((den & (den - 1)) == 0 && den <= (std::uint64_t{1} << n))
    return {res.entries[static_cast<std::uint64_t>(lambda.numerator()) * ((std::uint64_t{1} << n) / den)], true, n};
  auto value_at = [&](unsigned m) {
    const std::uint64_t top = std::uint64_t{1} << m;
    using boost::multiprecision::int128_t;
    const auto first =
        static_cast<std::uint64_t>(int128_t(lambda.numerator()) * int128_t(top) / int128_t(lambda.denominator())) + 1;
    E acc = b.one();
    for (std::uint64_t j = first; j <= top; ++j) acc = b.meet(acc, res.entries[j << (n - m)]);
    return acc;
  };
  RationalValue<E> out{value_at(n), true, n};
  out.stable = b.equal(out.value, value_at(n - 1));
  if (require_stable && !out.stable)
    fail(ErrorKind::Unstable, "value at lambda = " + to_string(lambda) + " changed between depth " + std::to_string(n - 1) +
                                  " and " + std::to_string(n));
  return out;
}

// f_w inside [0,q]: f_0(x) = 2x, f_1(x) = (2x')' with primes relative to q.
template <SpectralBackend B>
std::optional<typename B::element_type> apply_fw(const B& b, const BinaryString& w, const typename B::element_type& x,
                                                 const typename B::element_type& q) {
  if (!b.leq(x, q)) return std::nullopt;
  auto cur = x;
  for (auto bit : w.bits) {
    auto rest = b.ominus(q, cur);
    if (!rest) return std::nullopt;
    if (bit == 0) {
      if (!b.leq(cur, *rest)) return std::nullopt;
      auto d = b.sum(cur, cur);
      if (!d) return std::nullopt;
      cur = *d;
    } else {
      if (!b.leq(*rest, cur)) return std::nullopt;
      auto d = b.sum(*rest, *rest);
      if (!d) return std::nullopt;
      auto r = b.ominus(q, *d);
      if (!r) return std::nullopt;
      cur = *r;
    }
  }
  return cur;
}

template <SpectralBackend B>
Report verify_resolution(const B& b, const typename B::element_type& a,
                         const SpectralResolution<typename B::element_type>& res) {
  using E = typename B::element_type;
  const unsigned n = res.depth;
  const std::uint64_t top = std::uint64_t{1} << n;
  Report rep;
  rep.subject = "resolution family at depth " + std::to_string(n);
  if (res.entries.size() != top + 1) {
    rep.add("family shape", false, "expected " + std::to_string(top + 1) + " entries");
    return rep;
  }
  auto lam = [&](std::uint64_t j) { return DyadicRational(j, n).to_string(); };

  std::string w;
  for (std::uint64_t j = 0; j <= top && w.empty(); ++j)
    if (!b.in_commutant(a, res.entries[j])) w = "p_" + lam(j) + " does not commute with a";
  rep.add("(i) p_lambda in PC(a)", w.empty(), w);

  w.clear();
  if (!b.leq(res.entries[0], b.supplement(a))) w = "p_0 not below a'";
  else if (!b.equal(res.entries[top], b.one())) w = "p_1 != 1";
  for (std::uint64_t j = 0; j < top && w.empty(); ++j)
    if (!b.leq(res.entries[j], res.entries[j + 1])) w = "p_" + lam(j) + " not below p_" + lam(j + 1);
  rep.add("(ii) bounds and monotonicity", w.empty(), w);

  std::string w3, w4;
  for (unsigned l = 0; l <= n && w4.empty() && w3.empty(); ++l) {
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << l); ++k) {
      const BinaryString word = BinaryString::from_index(k, l);
      const std::string tag = "w = " + (l == 0 ? std::string("e") : word.to_string());
      try {
        const E& lo = res.entries[k << (n - l)];
        const E& hi = res.entries[(k + 1) << (n - l)];
        const E u = b.meet(hi, b.supplement(lo));
        auto fx = apply_fw(b, word, b.compress(u, a), u);
        if (!fx) {
          w4 = tag + ": f_w(J_u(a)) undefined";
          break;
        }
        if (!b.equal(b.cover(*fx), u)) {
          w3 = tag + ": a attains lambda(w) on u_w";
          break;
        }
      } catch (const Error& e) {
        w4 = tag + ": " + e.what();
        break;
      }
    }
  }
  rep.add("(iii) right-continuity at depth n", w3.empty(), w3);
  rep.add("(iv) f_w(J_{u_w}(a)) exists", w4.empty(), w4);
  return rep;
}

// lo = sum over |w| = n of lambda(w) s(u_w), hi = lo + 2^-n.
template <class E, class S>
auto expectation_bounds(const SplittingTree<E>& tree, const S& s) {
  using T = std::decay_t<decltype(s(std::declval<const E&>()))>;
  const unsigned n = tree.depth();
  T lo = detail::dyadic_scalar<T>(0, 0);
  for (const auto& node : tree.level(n)) lo += detail::dyadic_scalar<T>(node.k, n) * s(node.u);
  T hi = lo + detail::dyadic_scalar<T>(1, n);
  return std::pair<T, T>{lo, hi};
}

template <SpectralBackend B, class S>
CommutationVerdict<typename B::element_type> commutes_iff_spectrum(
    const B& b, const typename B::element_type& a, const typename B::element_type& q,
    const SpectralResolution<typename B::element_type>& res, const std::vector<S>& states) {
  CommutationVerdict<typename B::element_type> v;
  v.report.subject = "commutation through the spectrum";
  v.element_commutes = b.in_commutant(a, q);
  v.spectrum_commutes = std::all_of(res.entries.begin(), res.entries.end(),
                                    [&](const auto& p) { return b.in_commutant(p, q); });
  auto yn = [](bool x) { return std::string(x ? "yes" : "no"); };
  v.report.add("a in C(q) iff every p_lambda in C(q)", v.element_commutes == v.spectrum_commutes,
               "a in C(q): " + yn(v.element_commutes) + ", spectrum in C(q): " + yn(v.spectrum_commutes));
  if (v.spectrum_commutes) {
    const auto qq = b.supplement(q);
    const auto ja = b.compress(q, a), jb = b.compress(qq, a);
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto lhs = states[i](a);
      const auto rhs = states[i](ja) + states[i](jb);
      v.report.add("s(a) = s(J_q a) + s(J_q' a) for state " + std::to_string(i), detail::scalar_equal(lhs, rhs));
    }
  }
  return v;
}

// Finite instances.
SplittingTree<Elem> splitting_tree(const CompressionBase& cb, Elem a, unsigned n);
SpectralResolution<Elem> binary_resolution(const CompressionBase& cb, Elem a, unsigned n);
RationalValue<Elem> rational_resolution(const CompressionBase& cb, Elem a, const Rational& lambda, unsigned n);
std::optional<Elem> apply_fw(const CompressionBase& cb, const BinaryString& w, Elem x, Elem q);
Report verify_resolution(const CompressionBase& cb, Elem a, const SpectralResolution<Elem>& res);
std::pair<Rational, Rational> expectation_bounds(const CompressionBase& cb, Elem a, const ValidatedState& s, unsigned n);
CommutationVerdict<Elem> commutes_iff_spectrum(const CompressionBase& cb, Elem a, Elem q, unsigned n,
                                               const std::vector<ValidatedState>& states);

}  // namespace ea
