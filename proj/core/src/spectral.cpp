#include "ea/spectral.hpp"

namespace ea {

SplittingTree<Elem> splitting_tree(const CompressionBase& cb, Elem a, unsigned n) {
  cb.algebra().check(a);
  return splitting_tree(FiniteBackend(cb), a, n);
}

SpectralResolution<Elem> binary_resolution(const CompressionBase& cb, Elem a, unsigned n) {
  cb.algebra().check(a);
  return binary_resolution(FiniteBackend(cb), a, n);
}

RationalValue<Elem> rational_resolution(const CompressionBase& cb, Elem a, const Rational& lambda, unsigned n) {
  FiniteBackend b(cb);
  return rational_resolution(b, binary_resolution(b, a, n), lambda);
}

std::optional<Elem> apply_fw(const CompressionBase& cb, const BinaryString& w, Elem x, Elem q) {
  cb.algebra().check(x);
  cb.slot_of(q);
  return apply_fw(FiniteBackend(cb), w, x, q);
}

Report verify_resolution(const CompressionBase& cb, Elem a, const SpectralResolution<Elem>& res) {
  cb.algebra().check(a);
  return verify_resolution(FiniteBackend(cb), a, res);
}

std::pair<Rational, Rational> expectation_bounds(const CompressionBase& cb, Elem a, const ValidatedState& s, unsigned n) {
  return expectation_bounds(splitting_tree(cb, a, n), s);
}

CommutationVerdict<Elem> commutes_iff_spectrum(const CompressionBase& cb, Elem a, Elem q, unsigned n,
                                               const std::vector<ValidatedState>& states) {
  FiniteBackend b(cb);
  cb.slot_of(q);
  return commutes_iff_spectrum(b, a, q, binary_resolution(b, a, n), states);
}

}  // namespace ea
