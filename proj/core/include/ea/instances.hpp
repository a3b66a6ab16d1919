#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ea/compbase.hpp"
#include "ea/group.hpp"
#include "ea/matrix.hpp"
#include "ea/report.hpp"
#include "ea/spectral.hpp"
#include "ea/state.hpp"

namespace ea {

struct InstanceOptions {
  bool validate = true;          // run validate_axioms and validate_base before returning
  bool require_faithful = true;  // horizontal-sum states
  ValidationOptions validation;
};

struct MvShape {
  unsigned denominator;
  unsigned arity;
};

struct FiniteInstance {
  std::string name;
  nlohmann::json document;
  CompressionBase base;
  std::optional<GroupEmbedding> group;
  std::optional<MvShape> mv;

  const FiniteEffectAlgebra& algebra() const { return base.algebra(); }
  Elem element(const nlohmann::json& address) const;  // throws ElementNotFound
};

struct MatrixInstance {
  std::string name;
  nlohmann::json document;
  MatrixEffectAlgebra algebra;

  Matrix element(const nlohmann::json& address) const;  // throws ElementNotFound
};

// Carrier cap, from EA_MAX_CARRIER (default 100000).
std::size_t max_carrier();

FiniteInstance make_boolean(unsigned atoms, const InstanceOptions& opts = {});
FiniteInstance make_mv_product(unsigned denominator, unsigned arity, const InstanceOptions& opts = {});
MatrixInstance make_matrix(int dim);
FiniteInstance make_product(const FiniteInstance& a, const FiniteInstance& b, const InstanceOptions& opts = {});
// Cross compressions J_{(p,i)}(x) = s_j(x) p for x in the other part j.
FiniteInstance make_horizontal_sum(const FiniteInstance& a, const FiniteInstance& b, const State& sa, const State& sb,
                                   const InstanceOptions& opts = {});
// Horizontal sum carrying the central base of the pasted algebra.
FiniteInstance make_horizontal_sum_central(const FiniteInstance& a, const FiniteInstance& b,
                                           const InstanceOptions& opts = {});
FiniteInstance make_mo2(const InstanceOptions& opts = {});

struct TableBase {
  std::vector<Elem> projections;
  std::vector<std::vector<Elem>> maps;  // maps[i][a] = J_{projections[i]}(a)
};
// table[a*n+b] = a+b or -1. Without an explicit base the central base is used.
FiniteInstance make_table(std::size_t n, Elem zero, Elem one, std::vector<std::int32_t> table,
                          std::vector<std::string> labels, std::optional<TableBase> base,
                          const InstanceOptions& opts = {});

// s(a) = sum_i w_i g_i(a) / u_i through the group embedding.
State state_from_weights(const FiniteInstance& inst, const std::vector<Rational>& weights);
// Uniform weights.
State average_state(const FiniteInstance& inst);

// Numerator vector <-> element for mv products.
Elem mv_element(const FiniteInstance& inst, const std::vector<std::int64_t>& numerators);
std::vector<std::int64_t> mv_numerators(const FiniteInstance& inst, Elem a);

// Tree from U_w = {i : k(w)/2^n < a_i <= (k(w)+1)/2^n}, c_w(i) = 2^n a_i - k(w).
SplittingTree<Elem> closed_form_mv_resolution(const FiniteInstance& inst, Elem a, unsigned n);

// e != f with e + e = f + f = 1.
std::optional<std::pair<Elem, Elem>> torsion_witness(const FiniteEffectAlgebra& E);

// Validation of an already built instance: axioms then base.
Report validate_instance(const FiniteInstance& inst, const ValidationOptions& opts = {});

}  // namespace ea
