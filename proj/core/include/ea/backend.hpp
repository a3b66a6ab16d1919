#pragma once

#include <concepts>
#include <optional>

namespace ea {

// Operations the spectral construction needs from an algebra with a
// spectral compression base. Implemented by FiniteBackend and MatrixBackend.
template <class B>
concept SpectralBackend = requires(const B& b, const typename B::element_type& x) {
  typename B::element_type;
  { b.zero() } -> std::convertible_to<typename B::element_type>;
  { b.one() } -> std::convertible_to<typename B::element_type>;
  { b.equal(x, x) } -> std::same_as<bool>;
  { b.leq(x, x) } -> std::same_as<bool>;
  { b.sum(x, x) } -> std::same_as<std::optional<typename B::element_type>>;
  { b.ominus(x, x) } -> std::same_as<std::optional<typename B::element_type>>;
  { b.supplement(x) } -> std::convertible_to<typename B::element_type>;
  { b.compress(x, x) } -> std::convertible_to<typename B::element_type>;
  { b.cover(x) } -> std::convertible_to<typename B::element_type>;
  { b.positive_part(x, x) } -> std::convertible_to<typename B::element_type>;
  { b.meet(x, x) } -> std::convertible_to<typename B::element_type>;
  { b.in_commutant(x, x) } -> std::same_as<bool>;
  { b.bicommutant(x).contains(x) } -> std::same_as<bool>;
  { b.archimedean() } -> std::same_as<bool>;
};

}  // namespace ea
