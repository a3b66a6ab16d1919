#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ea/algebra.hpp"
#include "ea/rational.hpp"
#include "ea/report.hpp"

namespace ea {

class CompressionBase;

using GroupElement = std::vector<std::int64_t>;
// Support mask over X; stands for the sharp element with coordinates u_i on the mask, 0 elsewhere.
using GroupProjection = std::uint64_t;

// Z^X with coordinatewise order and order unit u (all u_i >= 1).
class LatticeGroup {
 public:
  static constexpr std::size_t kMaxRank = 63;

  explicit LatticeGroup(GroupElement unit);

  std::size_t rank() const { return unit_.size(); }
  const GroupElement& unit() const { return unit_; }
  GroupProjection full() const { return (GroupProjection{1} << rank()) - 1; }
  GroupProjection supplement(GroupProjection p) const { return full() & ~p; }

  void check(const GroupElement& g) const;  // throws DomainMismatch on rank mismatch
  GroupElement zero() const { return GroupElement(rank(), 0); }
  GroupElement element(GroupProjection p) const;
  GroupElement compress(GroupProjection p, const GroupElement& g) const;
  bool in_commutant(const GroupElement& g, GroupProjection p) const;
  bool leq(const GroupElement& g, const GroupElement& h) const;
  bool positive(const GroupElement& g) const { return leq(zero(), g); }
  GroupElement add(const GroupElement& g, const GroupElement& h) const;
  GroupElement sub(const GroupElement& g, const GroupElement& h) const;
  GroupElement scale(std::int64_t k, const GroupElement& g) const;
  // n g - m u.
  GroupElement shift(const GroupElement& g, std::int64_t m, std::int64_t n) const;

 private:
  GroupElement unit_;
};

struct Decomposition {
  GroupElement pos, neg;
  GroupProjection p = 0;
};

Decomposition orthogonal_decomposition(const LatticeGroup& G, const GroupElement& g);
// Largest projection annihilating g. For rank <= 12 the defining biconditional is
// checked against every projection.
GroupProjection rickart(const LatticeGroup& G, const GroupElement& g);
// ((n g - m u)_+)^*, checked against the representation (2m, 2n).
GroupProjection group_spectral(const LatticeGroup& G, const GroupElement& g, std::int64_t m, std::int64_t n);
GroupProjection group_spectral(const LatticeGroup& G, const GroupElement& g, const Rational& lambda);
std::pair<Rational, Rational> bounds(const LatticeGroup& G, const GroupElement& g);
Rational norm(const LatticeGroup& G, const GroupElement& g);
// inf{n/k : -n u <= k g <= n u} over k <= max_k.
Rational norm_by_definition(const LatticeGroup& G, const GroupElement& g, std::int64_t max_k);
// All p with J_p(g) >= 0 >= J_{p'}(g); rank <= 20.
std::vector<GroupProjection> p_plus_minus(const LatticeGroup& G, const GroupElement& g);

struct DyadicApproximation {
  std::vector<GroupProjection> parts;  // u_1..u_N
  Rational error;                      // ||n g - sum m_i u_i||
  Rational bound;                      // max gap of the grid
};

// Grid m_0 <= ... <= m_N with m_0 <= -n||g|| and m_N >= n||g||.
DyadicApproximation dyadic_approximation(const LatticeGroup& G, const GroupElement& g, const std::vector<std::int64_t>& grid,
                                         std::int64_t n);

// Checks the four clauses of the group characterization at the given rationals
// (breakpoints and midpoints are added automatically).
Report verify_group_resolution(const LatticeGroup& G, const GroupElement& g, std::vector<Rational> lambdas);

// Embedding of a finite MV instance into its universal group.
struct GroupEmbedding {
  LatticeGroup group;
  std::function<GroupElement(Elem)> embed;
};

Report check_comparability_equivalence(const CompressionBase& cb, const GroupEmbedding& emb, std::uint64_t samples = 500,
                                       std::uint64_t seed = 1);

std::string to_string(const GroupElement& g);
std::string mask_to_string(const LatticeGroup& G, GroupProjection p);

}  // namespace ea
