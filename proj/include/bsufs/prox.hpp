#pragma once

#include <Eigen/Dense>

namespace bsufs {

// Entries with magnitude at or below this count as zero in the q = 0 / p = 0
// pseudo-norms.
inline constexpr double kNonzeroTol = 1e-12;

// Threshold pair for argmin_x lambda |x|^q + (x - a)^2 / 2 with q in [0, 1):
//   |a| <  kappa -> minimizer is 0
//   |a| == kappa -> minimizers are {0, sign(a) c}; ties resolve to 0
//   |a| >  kappa -> minimizer is the largest positive stationary point
struct ProxThresholds {
  double kappa = 0.0;
  double c = 0.0;
};

// Throws InvalidQ for q outside [0, 1), BadSpec for lambda < 0.
ProxThresholds prox_thresholds(double lambda, double q);

// argmin_x lambda |x|^q + (x - a)^2 / 2. Exactly odd in a; closed forms for
// q in {0, 1/2, 2/3}, safeguarded Newton otherwise.
double scalar_prox_lq(double a, double lambda, double q);

// Generic root-finding path, q strictly inside (0, 1); exists so the closed
// forms can be cross-checked against it.
double scalar_prox_lq_newton(double a, double lambda, double q);

// Entry-wise scalar prox.
Eigen::MatrixXd matrix_prox_lq(const Eigen::MatrixXd& y, double lambda, double q);

// argmin_v lambda |v|_2^p + |v - z|^2 / 2: scales z by the scalar prox of its
// norm; zero rows stay zero. p = 0 hard-thresholds the row norm at sqrt(2 lambda).
Eigen::VectorXd row_prox_l2p(const Eigen::VectorXd& z, double lambda, double p);

// Row-wise prox over a matrix.
Eigen::MatrixXd matrix_row_prox_l2p(const Eigen::MatrixXd& z, double lambda, double p);

// sum_ij |u_ij|^q; for q = 0, the count of entries above kNonzeroTol.
double lq_norm_q(const Eigen::MatrixXd& u, double q);

// sum_i ||row_i||_2^p; for p = 0, the count of rows with norm above kNonzeroTol.
double l2p_norm_p(const Eigen::MatrixXd& v, double p);

}  // namespace bsufs
