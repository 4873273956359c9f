#include "cayley/connection.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace cayley {

namespace {

Eigen::MatrixXd to_eigen(const Matrix<double>& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
  return e;
}

Matrix<double> from_eigen(const Eigen::MatrixXd& e) {
  Matrix<double> m(static_cast<int>(e.rows()), static_cast<int>(e.cols()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) m(r, c) = e(r, c);
  return m;
}

// Reorders rows so that the +1 entries of eta come first (stable).
Factorization sort_signs(const Eigen::MatrixXd& E, const std::vector<double>& signs) {
  const int n = static_cast<int>(signs.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return signs[a] > signs[b]; });
  Factorization f{Matrix<double>(n, n), Matrix<double>(n, n)};
  for (int r = 0; r < n; ++r) {
    f.eta(r, r) = signs[order[r]];
    for (int c = 0; c < n; ++c) f.E(r, c) = E(order[r], c);
  }
  return f;
}

}  // namespace

Factorization factor_metric(const Matrix<double>& g) {
  const int n = g.rows();
  Eigen::MatrixXd G = to_eigen(g);
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  if (llt.info() == Eigen::Success) {
    Factorization f;
    f.E = from_eigen(llt.matrixU());
    f.eta = Matrix<double>::identity(n);
    return f;
  }
  // Unpivoted LDL^T: G = L D L^T, E = sqrt|D| L^T.
  Eigen::MatrixXd L = Eigen::MatrixXd::Identity(n, n);
  std::vector<double> d(n, 0.0);
  bool ok = true;
  for (int j = 0; j < n && ok; ++j) {
    double s = G(j, j);
    for (int k = 0; k < j; ++k) s -= L(j, k) * L(j, k) * d[k];
    d[j] = s;
    if (std::fabs(s) < kFloatTol) {
      ok = false;
      break;
    }
    for (int i = j + 1; i < n; ++i) {
      double t = G(i, j);
      for (int k = 0; k < j; ++k) t -= L(i, k) * L(j, k) * d[k];
      L(i, j) = t / s;
    }
  }
  if (ok) {
    Eigen::MatrixXd E = L.transpose();
    std::vector<double> signs(n);
    for (int i = 0; i < n; ++i) {
      E.row(i) *= std::sqrt(std::fabs(d[i]));
      signs[i] = d[i] > 0 ? 1.0 : -1.0;
    }
    return sort_signs(E, signs);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  Eigen::MatrixXd E = es.eigenvectors().transpose();
  std::vector<double> signs(n);
  for (int i = 0; i < n; ++i) {
    double l = es.eigenvalues()(i);
    E.row(i) *= std::sqrt(std::fabs(l));
    signs[i] = l > 0 ? 1.0 : -1.0;
  }
  return sort_signs(E, signs);
}

}  // namespace cayley
