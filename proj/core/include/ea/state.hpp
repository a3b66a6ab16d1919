#pragma once

#include <vector>

#include "ea/algebra.hpp"
#include "ea/rational.hpp"
#include "ea/report.hpp"

namespace ea {

// Exact-valued state candidate on a finite carrier.
struct State {
  std::vector<Rational> values;

  const Rational& operator()(Elem a) const { return values.at(a.id); }
};

Report validate_state(const FiniteEffectAlgebra& E, const State& s, const ValidationOptions& opts = {});
bool is_faithful(const FiniteEffectAlgebra& E, const State& s);

// A state that passed validate_state. Construction throws InvalidState.
class ValidatedState {
 public:
  ValidatedState(const FiniteEffectAlgebra& E, State s, const ValidationOptions& opts = {});

  const Rational& operator()(Elem a) const { return s_.values[a.id]; }
  const State& state() const { return s_; }

 private:
  State s_;
};

}  // namespace ea
