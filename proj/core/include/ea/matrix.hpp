#pragma once

#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ea/report.hpp"

namespace ea {

using Matrix = Eigen::MatrixXd;

// Effects 0 <= a <= I on R^dim (real symmetric), compressions a -> pap.
// Equality, order and idempotence hold up to eps.
class MatrixEffectAlgebra {
 public:
  static constexpr double kEps = 1e-9;
  // Eigenvalues closer than this are treated as one eigenspace.
  static constexpr double kClusterTol = 1e-7;

  explicit MatrixEffectAlgebra(int dim, double eps = kEps);

  int dim() const { return dim_; }
  double eps() const { return eps_; }
  Matrix zero() const { return Matrix::Zero(dim_, dim_); }
  Matrix one() const { return Matrix::Identity(dim_, dim_); }

  bool equal(const Matrix& a, const Matrix& b) const;
  bool is_symmetric(const Matrix& a) const;
  bool is_effect(const Matrix& a) const;
  bool leq(const Matrix& a, const Matrix& b) const;
  std::optional<Matrix> sum(const Matrix& a, const Matrix& b) const;
  std::optional<Matrix> ominus(const Matrix& b, const Matrix& a) const;
  Matrix supplement(const Matrix& a) const { return one() - a; }
  bool is_projection(const Matrix& p) const;
  Matrix compress(const Matrix& p, const Matrix& a) const;
  bool commute(const Matrix& a, const Matrix& b) const;
  // a in C(p) for a projection p.
  bool in_commutant(const Matrix& a, const Matrix& p) const { return commute(a, p); }
  // Support projection of an effect.
  Matrix cover(const Matrix& a) const;
  // (b - a)_+ with eigenvalues |x| <= eps sent to 0.
  Matrix positive_part(const Matrix& b, const Matrix& a) const;
  // Projection onto ran p intersected with ran q.
  Matrix meet(const Matrix& p, const Matrix& q) const;
  // Spectral projections of a, ascending by eigenvalue.
  struct Eigenspace {
    double value;
    Matrix projection;
  };
  std::vector<Eigenspace> eigenspaces(const Matrix& a) const;
  // p lies in the Boolean algebra generated by the eigenprojections of a.
  bool in_bicommutant(const Matrix& a, const Matrix& p) const;
  double min_eigenvalue(const Matrix& a) const;

 private:
  int dim_;
  double eps_;
};

Matrix symmetrize(const Matrix& a);
Matrix random_orthogonal(int dim, std::mt19937_64& rng);
// Uniform eigenvalues in [0,1]; consecutive eigenvalues at least min_gap apart.
Matrix random_effect(int dim, std::mt19937_64& rng, double min_gap = 0.0);
Matrix random_projection(int dim, std::mt19937_64& rng);

class MatrixBackend {
 public:
  using element_type = Matrix;

  struct Bicommutant {
    const MatrixEffectAlgebra* alg;
    Matrix a;
    bool contains(const Matrix& p) const { return alg->in_bicommutant(a, p); }
  };

  explicit MatrixBackend(const MatrixEffectAlgebra& alg) : alg_(&alg) {}
  const MatrixEffectAlgebra& algebra() const { return *alg_; }

  Matrix zero() const { return alg_->zero(); }
  Matrix one() const { return alg_->one(); }
  bool equal(const Matrix& a, const Matrix& b) const { return alg_->equal(a, b); }
  bool leq(const Matrix& a, const Matrix& b) const { return alg_->leq(a, b); }
  std::optional<Matrix> sum(const Matrix& a, const Matrix& b) const { return alg_->sum(a, b); }
  std::optional<Matrix> ominus(const Matrix& b, const Matrix& a) const { return alg_->ominus(b, a); }
  Matrix supplement(const Matrix& a) const { return alg_->supplement(a); }
  Matrix compress(const Matrix& p, const Matrix& a) const { return alg_->compress(p, a); }
  Matrix cover(const Matrix& a) const { return alg_->cover(a); }
  Matrix positive_part(const Matrix& b, const Matrix& a) const { return alg_->positive_part(b, a); }
  Matrix meet(const Matrix& p, const Matrix& q) const { return alg_->meet(p, q); }
  bool in_commutant(const Matrix& a, const Matrix& p) const { return alg_->in_commutant(a, p); }
  Bicommutant bicommutant(const Matrix& a) const { return {alg_, a}; }
  bool archimedean() const { return true; }

 private:
  const MatrixEffectAlgebra* alg_;
};

// s(a) = tr(rho a) for a density matrix rho.
class DensityState {
 public:
  explicit DensityState(Matrix rho);  // throws InvalidState
  double operator()(const Matrix& a) const { return (rho_ * a).trace(); }
  const Matrix& rho() const { return rho_; }

 private:
  Matrix rho_;
};

DensityState random_density(int dim, std::mt19937_64& rng);

// Sampled checks over random effects and projections.
Report validate_axioms(const MatrixEffectAlgebra& E, std::uint64_t samples = 2000, std::uint64_t seed = 1);
Report validate_base(const MatrixEffectAlgebra& E, std::uint64_t samples = 2000, std::uint64_t seed = 1);
Report check_b_property(const MatrixEffectAlgebra& E, std::uint64_t samples = 500, std::uint64_t seed = 1);

}  // namespace ea
