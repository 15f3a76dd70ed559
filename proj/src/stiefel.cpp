#include "bsufs/stiefel.hpp"

#include <cmath>

#include "bsufs/errors.hpp"

namespace bsufs {

StiefelPoint stiefel_point(const Eigen::MatrixXd& w, double tol) {
  if (w.cols() < 1 || w.rows() < w.cols())
    throw ShapeMismatch("orthonormal frame needs d >= m >= 1, got " +
                        std::to_string(w.rows()) + " x " + std::to_string(w.cols()));
  Eigen::MatrixXd gram = w.transpose() * w;
  gram -= Eigen::MatrixXd::Identity(w.cols(), w.cols());
  if (gram.norm() > tol)
    throw BadSpec("columns are not orthonormal (deviation " + std::to_string(gram.norm()) +
                  ")");
  return StiefelPoint{w};
}

Eigen::MatrixXd sym(const Eigen::MatrixXd& x) {
  return 0.5 * (x + x.transpose().eval());
}

Eigen::MatrixXd project_tangent(const StiefelPoint& w, const Eigen::MatrixXd& a) {
  return a - w.w * sym(w.w.transpose() * a);
}

double tangency_violation(const StiefelPoint& w, const Eigen::MatrixXd& m) {
  Eigen::MatrixXd k = w.w.transpose() * m;
  return (k + k.transpose().eval()).norm();
}

StiefelPoint retract(const StiefelPoint& w, const Eigen::MatrixXd& m) {
  Eigen::MatrixXd b = w.w + m;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(b);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(b.rows(), b.cols());
  Eigen::VectorXd diag = qr.matrixQR().diagonal().head(b.cols());
  const double floor = 1e-12 * std::max(1.0, b.norm());
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    if (std::abs(diag(j)) <= floor)
      throw RankDeficient("retraction input lost column rank");
    if (diag(j) < 0.0) q.col(j) = -q.col(j);
  }
  return StiefelPoint{std::move(q)};
}

StiefelPoint random_stiefel(int d, int m, std::mt19937_64& rng) {
  if (m < 1 || d < m) throw ShapeMismatch("orthonormal frame needs d >= m >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd g(d, m);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < m; ++j) g(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, m);
  Eigen::VectorXd diag = qr.matrixQR().diagonal().head(m);
  for (int j = 0; j < m; ++j)
    if (diag(j) < 0.0) q.col(j) = -q.col(j);
  return StiefelPoint{std::move(q)};
}

}  // namespace bsufs
