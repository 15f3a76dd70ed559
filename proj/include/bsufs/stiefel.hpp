#pragma once

#include <Eigen/Dense>
#include <random>

namespace bsufs {

// d x m matrix with orthonormal columns, d >= m >= 1.
struct StiefelPoint {
  Eigen::MatrixXd w;

  int d() const { return static_cast<int>(w.rows()); }
  int m() const { return static_cast<int>(w.cols()); }
};

// Validates shape and W^T W = I within tol (Frobenius) before wrapping;
// throws ShapeMismatch / BadSpec.
StiefelPoint stiefel_point(const Eigen::MatrixXd& w, double tol = 1e-8);

// (x + x^T) / 2; x must be square.
Eigen::MatrixXd sym(const Eigen::MatrixXd& x);

// a - W sym(W^T a): orthogonal projection onto the tangent space at W.
Eigen::MatrixXd project_tangent(const StiefelPoint& w, const Eigen::MatrixXd& a);

// Frobenius norm of W^T m + m^T W; zero iff m is tangent at W.
double tangency_violation(const StiefelPoint& w, const Eigen::MatrixXd& m);

// Thin-QR retraction of W + m with the R diagonal forced positive; throws
// RankDeficient when W + m loses column rank.
StiefelPoint retract(const StiefelPoint& w, const Eigen::MatrixXd& m);

// QR-orthonormalized Gaussian matrix.
StiefelPoint random_stiefel(int d, int m, std::mt19937_64& rng);

}  // namespace bsufs
