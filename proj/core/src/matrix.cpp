#include "ea/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "ea/error.hpp"

namespace ea {

namespace {

Eigen::SelfAdjointEigenSolver<Matrix> eig(const Matrix& a) { return Eigen::SelfAdjointEigenSolver<Matrix>(symmetrize(a)); }

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

}  // namespace

Matrix symmetrize(const Matrix& a) { return (a + a.transpose()) / 2.0; }

MatrixEffectAlgebra::MatrixEffectAlgebra(int dim, double eps) : dim_(dim), eps_(eps) {
  if (dim < 1 || dim > 4) fail(ErrorKind::InvalidInstance, "matrix dimension must be in 1..4");
}

bool MatrixEffectAlgebra::equal(const Matrix& a, const Matrix& b) const { return max_abs(a - b) <= eps_; }

bool MatrixEffectAlgebra::is_symmetric(const Matrix& a) const {
  return a.rows() == dim_ && a.cols() == dim_ && max_abs(a - a.transpose()) <= eps_;
}

double MatrixEffectAlgebra::min_eigenvalue(const Matrix& a) const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool MatrixEffectAlgebra::is_effect(const Matrix& a) const {
  return is_symmetric(a) && min_eigenvalue(a) >= -eps_ && min_eigenvalue(one() - a) >= -eps_;
}

bool MatrixEffectAlgebra::leq(const Matrix& a, const Matrix& b) const { return min_eigenvalue(b - a) >= -eps_; }

std::optional<Matrix> MatrixEffectAlgebra::sum(const Matrix& a, const Matrix& b) const {
  Matrix s = a + b;
  if (min_eigenvalue(one() - s) < -eps_) return std::nullopt;
  return s;
}

std::optional<Matrix> MatrixEffectAlgebra::ominus(const Matrix& b, const Matrix& a) const {
  if (!leq(a, b)) return std::nullopt;
  return Matrix(b - a);
}

bool MatrixEffectAlgebra::is_projection(const Matrix& p) const { return is_symmetric(p) && max_abs(p * p - p) <= eps_; }

Matrix MatrixEffectAlgebra::compress(const Matrix& p, const Matrix& a) const { return symmetrize(p * a * p); }

bool MatrixEffectAlgebra::commute(const Matrix& a, const Matrix& b) const { return max_abs(a * b - b * a) <= eps_; }

Matrix MatrixEffectAlgebra::cover(const Matrix& a) const {
  auto es = eig(a);
  Matrix p = zero();
  for (int i = 0; i < dim_; ++i)
    if (es.eigenvalues()(i) > eps_) p += es.eigenvectors().col(i) * es.eigenvectors().col(i).transpose();
  return p;
}

Matrix MatrixEffectAlgebra::positive_part(const Matrix& b, const Matrix& a) const {
  auto es = eig(b - a);
  Matrix p = zero();
  for (int i = 0; i < dim_; ++i) {
    const double x = es.eigenvalues()(i);
    if (x > eps_) p += x * es.eigenvectors().col(i) * es.eigenvectors().col(i).transpose();
  }
  return p;
}

Matrix MatrixEffectAlgebra::meet(const Matrix& p, const Matrix& q) const {
  auto es = eig((p + q) / 2.0);
  Matrix r = zero();
  for (int i = 0; i < dim_; ++i)
    if (es.eigenvalues()(i) >= 1.0 - kClusterTol) r += es.eigenvectors().col(i) * es.eigenvectors().col(i).transpose();
  return r;
}

std::vector<MatrixEffectAlgebra::Eigenspace> MatrixEffectAlgebra::eigenspaces(const Matrix& a) const {
  auto es = eig(a);
  std::vector<Eigenspace> out;
  int start = 0;
  for (int i = 1; i <= dim_; ++i) {
    if (i < dim_ && es.eigenvalues()(i) - es.eigenvalues()(i - 1) <= kClusterTol) continue;
    Matrix p = zero();
    double v = 0;
    for (int j = start; j < i; ++j) {
      p += es.eigenvectors().col(j) * es.eigenvectors().col(j).transpose();
      v += es.eigenvalues()(j);
    }
    out.push_back({v / (i - start), p});
    start = i;
  }
  return out;
}

bool MatrixEffectAlgebra::in_bicommutant(const Matrix& a, const Matrix& p) const {
  if (!is_projection(p)) return false;
  for (const auto& e : eigenspaces(a)) {
    Matrix pe = p * e.projection;
    if (max_abs(pe) > eps_ && max_abs(pe - e.projection) > eps_) return false;
  }
  return true;
}

Matrix random_orthogonal(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = g(rng);
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR();
  for (int j = 0; j < dim; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

Matrix random_effect(int dim, std::mt19937_64& rng, double min_gap) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> ev(static_cast<std::size_t>(dim));
  for (int attempt = 0;; ++attempt) {
    if (attempt > 100000) fail(ErrorKind::DomainMismatch, "eigenvalue gap too large for the dimension");
    for (auto& x : ev) x = unit(rng);
    std::sort(ev.begin(), ev.end());
    bool ok = true;
    for (std::size_t i = 1; i < ev.size(); ++i) ok = ok && ev[i] - ev[i - 1] >= min_gap;
    if (ok) break;
  }
  Matrix q = random_orthogonal(dim, rng);
  Matrix d = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) d(i, i) = ev[static_cast<std::size_t>(i)];
  return symmetrize(q * d * q.transpose());
}

Matrix random_projection(int dim, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> rank(0, dim);
  const int r = rank(rng);
  Matrix q = random_orthogonal(dim, rng);
  Matrix cols = q.leftCols(r);
  return symmetrize(cols * cols.transpose());
}

DensityState::DensityState(Matrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols()) fail(ErrorKind::InvalidState, "density matrix must be square");
  const double eps = MatrixEffectAlgebra::kEps;
  if (max_abs(rho_ - rho_.transpose()) > eps) fail(ErrorKind::InvalidState, "density matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -eps) fail(ErrorKind::InvalidState, "density matrix must be positive");
  if (std::abs(rho_.trace() - 1.0) > eps) fail(ErrorKind::InvalidState, "density matrix must have trace 1");
}

DensityState random_density(int dim, std::mt19937_64& rng) {
  std::exponential_distribution<double> ex(1.0);
  Matrix d = Matrix::Zero(dim, dim);
  double total = 0;
  for (int i = 0; i < dim; ++i) total += d(i, i) = ex(rng);
  d /= total;
  Matrix q = random_orthogonal(dim, rng);
  return DensityState(symmetrize(q * d * q.transpose()));
}

Report validate_axioms(const MatrixEffectAlgebra& E, std::uint64_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = E.dim();
  Report rep;
  rep.subject = "matrix effect algebra dim " + std::to_string(n);
  rep.sampled = true;
  auto draw = [&] {
    Matrix a = random_effect(n, rng);
    return unit(rng) < 0.5 ? Matrix(a / 3.0) : a;
  };
  std::string e1, e2, e3, e4;
  for (std::uint64_t i = 0; i < samples; ++i) {
    Matrix a = draw(), b = draw(), c = draw();
    auto ab = E.sum(a, b), ba = E.sum(b, a);
    if (e1.empty() && (ab.has_value() != ba.has_value() || (ab && !E.equal(*ab, *ba)))) e1 = "sample " + std::to_string(i);
    if (e2.empty() && ab) {
      if (auto abc = E.sum(*ab, c)) {
        auto bc = E.sum(b, c);
        auto a_bc = bc ? E.sum(a, *bc) : std::nullopt;
        if (!a_bc || !E.equal(*a_bc, *abc)) e2 = "sample " + std::to_string(i);
      }
    }
    auto aa = E.sum(a, E.supplement(a));
    if (e3.empty() && (!aa || !E.equal(*aa, E.one()))) e3 = "sample " + std::to_string(i);
    if (e4.empty() && !E.equal(a, E.zero()) && E.sum(a, E.one())) e4 = "sample " + std::to_string(i);
  }
  rep.add("E1 commutativity", e1.empty(), e1);
  rep.add("E2 associativity", e2.empty(), e2);
  rep.add("E3 orthosupplement", e3.empty(), e3);
  rep.add("E4 zero-one law", e4.empty() && E.sum(E.zero(), E.one()).has_value(), e4);
  return rep;
}

Report validate_base(const MatrixEffectAlgebra& E, std::uint64_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = E.dim();
  Report rep;
  rep.subject = "compressions a -> pap, dim " + std::to_string(n);
  rep.sampled = true;
  std::string c1, law, add, c2, closed;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::string tag = "sample " + std::to_string(i);
    Matrix p = random_projection(n, rng), a = random_effect(n, rng), b = random_effect(n, rng) / 2.0;
    Matrix pp = E.supplement(p);
    if (c1.empty() && !E.equal(E.compress(p, E.one()), p)) c1 = tag;
    Matrix j = E.compress(p, a);
    Matrix below = E.compress(p, b);
    if (law.empty() && (!E.leq(j, p) || !E.equal(E.compress(p, j), j) || !E.equal(E.compress(p, below), below) ||
                        !E.equal(E.compress(p, E.compress(pp, a)), E.zero())))
      law = tag;
    Matrix half = a / 2.0;
    auto s = E.sum(half, b);
    auto t = s ? E.sum(E.compress(p, half), E.compress(p, b)) : std::nullopt;
    if (add.empty() && s && (!t || !E.equal(*t, E.compress(p, *s)))) add = tag;
    // Commuting pair from a shared eigenbasis.
    Matrix q = random_orthogonal(n, rng);
    std::uniform_int_distribution<int> bit(0, 1);
    Matrix dp = Matrix::Zero(n, n), dq = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
      dp(k, k) = bit(rng);
      dq(k, k) = bit(rng);
    }
    Matrix p1 = symmetrize(q * dp * q.transpose()), q1 = symmetrize(q * dq * q.transpose());
    Matrix pq = symmetrize(p1 * q1);
    if (c2.empty() && !E.equal(E.compress(p1, E.compress(q1, a)), E.compress(pq, a))) c2 = tag;
    Matrix o = symmetrize(q * (dp.cwiseProduct(Matrix::Ones(n, n) - dq)) * q.transpose());
    auto ps = E.sum(o, symmetrize(q * (Matrix::Identity(n, n) - dp).cwiseProduct(dq) * q.transpose()));
    if (closed.empty() && (!E.is_projection(pq) || !ps || !E.is_projection(*ps))) closed = tag;
  }
  rep.add("(C1) J_p(1) = p", c1.empty(), c1);
  rep.add("compression law", law.empty(), law);
  rep.add("J_p additive", add.empty(), add);
  rep.add("(C2) compatible projections compose", c2.empty(), c2);
  rep.add("projections closed under orthogonal sums", closed.empty(), closed);
  return rep;
}

Report check_b_property(const MatrixEffectAlgebra& E, std::uint64_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, 1);
  Report rep;
  rep.subject = "b-property, dim " + std::to_string(E.dim());
  rep.sampled = true;
  std::string w;
  for (std::uint64_t i = 0; i < samples && w.empty(); ++i) {
    Matrix a = random_effect(E.dim(), rng, 0.05);
    auto spaces = E.eigenspaces(a);
    Matrix p;
    if (coin(rng)) {
      p = E.zero();
      for (const auto& s : spaces)
        if (coin(rng)) p += s.projection;
    } else {
      p = random_projection(E.dim(), rng);
    }
    const bool lhs = E.in_commutant(a, p);
    const bool rhs = std::all_of(spaces.begin(), spaces.end(), [&](const auto& s) { return E.commute(s.projection, p); });
    if (lhs != rhs) w = "sample " + std::to_string(i);
  }
  rep.add("a in C(p) iff P(a) in C(p)", w.empty(), w);
  return rep;
}

}  // namespace ea
