#include <doctest.h>

#include <random>

#include "ea/matrix.hpp"
#include "ea/spectral.hpp"
#include "oracles.hpp"

using namespace ea;

namespace {

Matrix m2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

bool close(const Matrix& a, const Matrix& b, double tol = 1e-9) { return (a - b).cwiseAbs().maxCoeff() <= tol; }

}  // namespace

TEST_CASE("matrix effect algebra basics") {
  MatrixEffectAlgebra E(2);
  const Matrix a = m2(0.5, 0, 0, 0.25), b = m2(0.5, 0, 0, 0.75);
  CHECK(E.is_effect(a));
  CHECK_FALSE(E.is_effect(m2(1.5, 0, 0, 0)));
  CHECK(E.sum(a, b).has_value());
  CHECK(E.equal(*E.sum(a, b), m2(1, 0, 0, 1)));
  CHECK_FALSE(E.sum(b, b).has_value());
  CHECK(E.leq(a, b));
  CHECK(E.equal(*E.ominus(b, a), m2(0, 0, 0, 0.5)));
  CHECK(E.is_projection(m2(0.5, 0.5, 0.5, 0.5)));
  CHECK_FALSE(E.is_projection(a));
}

TEST_CASE("eigenprojections and covers") {
  MatrixEffectAlgebra E(2);
  const Matrix a = m2(0.5, 0.25, 0.25, 0.5);
  const auto es = E.eigenspaces(a);
  REQUIRE(es.size() == 2);
  CHECK(es[0].value == doctest::Approx(0.25));
  CHECK(es[1].value == doctest::Approx(0.75));
  CHECK(close(es[0].projection, m2(0.5, -0.5, -0.5, 0.5)));
  CHECK(close(es[1].projection, m2(0.5, 0.5, 0.5, 0.5)));
  CHECK(close(E.cover(a), E.one()));
  CHECK(close(E.cover(m2(0.5, 0, 0, 0)), m2(1, 0, 0, 0)));
  CHECK(close(E.cover(E.zero()), E.zero()));
  CHECK(E.in_bicommutant(a, es[0].projection));
  CHECK_FALSE(E.in_bicommutant(a, m2(1, 0, 0, 0)));
}

TEST_CASE("commutation of matrix effects") {
  MatrixEffectAlgebra E(2);
  const Matrix p = m2(1, 0, 0, 0);
  CHECK(E.commute(m2(0.3, 0, 0, 0.6), p));
  CHECK_FALSE(E.commute(m2(0.5, 0.25, 0.25, 0.5), p));
  CHECK(close(E.compress(p, m2(0.5, 0.25, 0.25, 0.5)), m2(0.5, 0, 0, 0)));
}

TEST_CASE("sampled checks") {
  MatrixEffectAlgebra E(3);
  CHECK(validate_axioms(E, 300, 7).passed());
  CHECK(validate_base(E, 300, 7).passed());
  CHECK(check_b_property(E, 100, 7).passed());
}

TEST_CASE("positive part and meet") {
  MatrixEffectAlgebra E(2);
  const Matrix a = m2(0.25, 0, 0, 0.75), b = m2(0.5, 0, 0, 0.5);
  CHECK(close(E.positive_part(b, a), m2(0.25, 0, 0, 0)));
  CHECK(close(E.meet(m2(1, 0, 0, 0), m2(0.5, 0.5, 0.5, 0.5)), E.zero()));
  CHECK(close(E.meet(E.one(), m2(0.5, 0.5, 0.5, 0.5)), m2(0.5, 0.5, 0.5, 0.5)));
}

TEST_CASE("resolution of [[1/2,1/4],[1/4,1/2]]") {
  MatrixEffectAlgebra E(2);
  MatrixBackend b(E);
  const Matrix a = m2(0.5, 0.25, 0.25, 0.5);
  const auto res = binary_resolution(b, a, 2);
  CHECK(close(res.entries[0], E.zero()));
  CHECK(close(res.entries[1], m2(0.5, -0.5, -0.5, 0.5)));
  CHECK(close(res.entries[2], m2(0.5, -0.5, -0.5, 0.5)));
  CHECK(close(res.entries[3], E.one()));
  CHECK(close(res.entries[4], E.one()));
  CHECK(verify_resolution(b, a, res).passed());
}

TEST_CASE("random resolutions agree with the Jacobi oracle") {
  MatrixEffectAlgebra E(4);
  MatrixBackend b(E);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_effect(4, rng, 0.05);
    const unsigned n = 6;
    const auto res = binary_resolution(b, a, n);
    for (std::uint64_t j = 0; j <= (std::uint64_t{1} << n); ++j) {
      const double lambda = static_cast<double>(j) / 64.0;
      CHECK(close(res.entries[j], oracle::chi_le(a, lambda), 1e-6));
    }
  }
}

TEST_CASE("expectation bounds for a density state") {
  MatrixEffectAlgebra E(3);
  MatrixBackend b(E);
  std::mt19937_64 rng(5);
  const Matrix a = random_effect(3, rng, 0.05);
  const DensityState s = random_density(3, rng);
  const auto tree = splitting_tree(b, a, 8);
  const auto [lo, hi] = expectation_bounds(tree, s);
  CHECK(hi - lo == doctest::Approx(1.0 / 256));
  CHECK(lo <= s(a) + 1e-9);
  CHECK(s(a) <= hi + 1e-9);
}

TEST_CASE("commutation through the spectrum for matrices") {
  MatrixEffectAlgebra E(2);
  MatrixBackend b(E);
  const Matrix a = m2(0.3, 0, 0, 0.6);
  const Matrix rho = m2(0.5, 0, 0, 0.5);
  const std::vector<DensityState> states{DensityState(rho)};
  auto v = commutes_iff_spectrum(b, a, m2(1, 0, 0, 0), binary_resolution(b, a, 4), states);
  CHECK(v.element_commutes);
  CHECK(v.spectrum_commutes);
  CHECK(v.report.passed());
  v = commutes_iff_spectrum(b, a, m2(0.5, 0.5, 0.5, 0.5), binary_resolution(b, a, 4), states);
  CHECK_FALSE(v.element_commutes);
  CHECK_FALSE(v.spectrum_commutes);
  CHECK(v.report.passed());
}
