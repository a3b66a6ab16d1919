#pragma once

// Reference computations that share no code with the library.

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

struct Eigen2 {
  std::vector<double> values;
  Eigen::MatrixXd vectors;  // columns
};

// Cyclic Jacobi rotations on a symmetric matrix.
inline Eigen2 jacobi_eigen(Eigen::MatrixXd a) {
  const auto n = a.rows();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-30) break;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  Eigen2 out;
  for (Eigen::Index i = 0; i < n; ++i) out.values.push_back(a(i, i));
  out.vectors = v;
  return out;
}

// Spectral projection onto eigenvalues <= lambda.
inline Eigen::MatrixXd chi_le(const Eigen::MatrixXd& a, double lambda) {
  const Eigen2 e = jacobi_eigen(a);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(a.rows(), a.cols());
  for (std::size_t i = 0; i < e.values.size(); ++i)
    if (e.values[i] <= lambda) p += e.vectors.col(static_cast<Eigen::Index>(i)) * e.vectors.col(static_cast<Eigen::Index>(i)).transpose();
  return p;
}

// Zero-one vector {i : x_i / den <= num_l / den_l}.
inline std::vector<int> mv_chi_le(const std::vector<std::int64_t>& x, std::int64_t den, std::int64_t num_l,
                                  std::int64_t den_l) {
  std::vector<int> out;
  for (auto xi : x) out.push_back(xi * den_l <= num_l * den ? 1 : 0);
  return out;
}

// Zero-one vector {i : n g_i <= m u_i}.
inline std::vector<int> group_chi_le(const std::vector<std::int64_t>& g, const std::vector<std::int64_t>& u,
                                     std::int64_t m, std::int64_t n) {
  std::vector<int> out;
  for (std::size_t i = 0; i < g.size(); ++i) out.push_back(n * g[i] <= m * u[i] ? 1 : 0);
  return out;
}

// Cell membership k/2^l < x_i/den <= (k+1)/2^l and c numerator 2^l x_i - k den.
struct Cell {
  std::vector<int> member;
  std::vector<std::int64_t> c;  // over den
};
inline Cell mv_cell(const std::vector<std::int64_t>& x, std::int64_t den, unsigned l, std::int64_t k) {
  Cell out;
  for (auto xi : x) {
    const std::int64_t scaled = xi << l;
    const bool in = k * den < scaled && scaled <= (k + 1) * den;
    out.member.push_back(in ? 1 : 0);
    out.c.push_back(in ? scaled - k * den : 0);
  }
  return out;
}

inline std::vector<std::int64_t> positive_part(const std::vector<std::int64_t>& b, const std::vector<std::int64_t>& a) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(b[i] > a[i] ? b[i] - a[i] : 0);
  return out;
}

}  // namespace oracle
