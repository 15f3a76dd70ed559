#include "bsufs/prox.hpp"

#include <cmath>

#include "bsufs/errors.hpp"

namespace bsufs {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_q(double q) {
  if (!(q >= 0.0 && q < 1.0)) throw InvalidQ(q);
}

void check_p(double p) {
  if (!(p >= 0.0 && p < 1.0)) throw InvalidP(p);
}

void check_lambda(double lambda) {
  if (!(lambda >= 0.0)) throw BadSpec("penalty weight must be nonnegative");
}

// Largest positive root of h(x) = x - a + lambda q x^(q-1) for a > kappa,
// q = 1/2: the trigonometric closed form.
double root_half(double a, double lambda) {
  double phi = std::acos(0.25 * lambda * std::pow(a / 3.0, -1.5));
  return (2.0 / 3.0) * a * (1.0 + std::cos((2.0 / 3.0) * (kPi - phi)));
}

// q = 2/3: substituting x = y^3 turns h(x) = 0 into y^4 - a y + 2 lambda / 3 = 0,
// which factors through the resolvent cubic t^3 - (2 lambda / 3) t - a^2 / 8 = 0.
// The cubic's discriminant is strictly positive whenever a > kappa, so Cardano
// yields its single real root directly.
double root_two_thirds(double a, double lambda) {
  double half_q = a * a / 16.0;
  double third_p = 2.0 * lambda / 9.0;
  double disc = half_q * half_q - third_p * third_p * third_p;
  double sq = std::sqrt(disc);
  // The cube roots of (half_q + sq) and (half_q - sq) multiply to exactly
  // third_p; dividing avoids the cancellation in the smaller factor.
  double t1 = std::cbrt(half_q + sq);
  double t = t1 + third_p / t1;
  double bigA = std::sqrt(2.0 * t);
  double y = 0.5 * (bigA + std::sqrt(2.0 * a / bigA - bigA * bigA));
  return y * y * y;
}

// Generic q: h is convex and increasing on [c, a] with h(c) < 0 < h(a), so
// Newton from x0 = a stays inside the bracket; bisection backs it up.
double root_newton(double a, double lambda, double q, double lo) {
  double hi = a;
  double x = a;
  const double tol = 1e-14 * std::max(1.0, a);
  for (int it = 0; it < 200; ++it) {
    double h = x - a + lambda * q * std::pow(x, q - 1.0);
    if (std::abs(h) <= tol) return x;
    if (h > 0.0)
      hi = x;
    else
      lo = x;
    double dh = 1.0 + lambda * q * (q - 1.0) * std::pow(x, q - 2.0);
    double next = dh > 0.0 ? x - h / dh : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= tol) return next;
    x = next;
  }
  throw NewtonNoConvergence(a, lambda, q);
}

}  // namespace

ProxThresholds prox_thresholds(double lambda, double q) {
  check_q(q);
  check_lambda(lambda);
  if (lambda == 0.0) return {0.0, 0.0};
  if (q == 0.0) {
    double t = std::sqrt(2.0 * lambda);
    return {t, t};
  }
  double c = std::pow(2.0 * lambda * (1.0 - q), 1.0 / (2.0 - q));
  double kappa = c * (2.0 - q) / (2.0 * (1.0 - q));
  return {kappa, c};
}

double scalar_prox_lq(double a, double lambda, double q) {
  ProxThresholds th = prox_thresholds(lambda, q);
  if (lambda == 0.0) return a;
  double aa = std::abs(a);
  if (aa <= th.kappa) return 0.0;
  double x;
  if (q == 0.0)
    x = aa;
  else if (q == 0.5)
    x = root_half(aa, lambda);
  else if (q == 2.0 / 3.0)
    x = root_two_thirds(aa, lambda);
  else
    x = root_newton(aa, lambda, q, th.c);
  return std::copysign(x, a);
}

double scalar_prox_lq_newton(double a, double lambda, double q) {
  if (!(q > 0.0 && q < 1.0)) throw InvalidQ(q);
  ProxThresholds th = prox_thresholds(lambda, q);
  if (lambda == 0.0) return a;
  double aa = std::abs(a);
  if (aa <= th.kappa) return 0.0;
  return std::copysign(root_newton(aa, lambda, q, th.c), a);
}

Eigen::MatrixXd matrix_prox_lq(const Eigen::MatrixXd& y, double lambda, double q) {
  check_q(q);
  check_lambda(lambda);
  Eigen::MatrixXd out(y.rows(), y.cols());
  for (Eigen::Index j = 0; j < y.cols(); ++j)
    for (Eigen::Index i = 0; i < y.rows(); ++i) out(i, j) = scalar_prox_lq(y(i, j), lambda, q);
  return out;
}

Eigen::VectorXd row_prox_l2p(const Eigen::VectorXd& z, double lambda, double p) {
  check_p(p);
  check_lambda(lambda);
  double nz = z.norm();
  if (nz == 0.0) return Eigen::VectorXd::Zero(z.size());
  double t = scalar_prox_lq(nz, lambda, p);
  if (t == 0.0) return Eigen::VectorXd::Zero(z.size());
  return (t / nz) * z;
}

Eigen::MatrixXd matrix_row_prox_l2p(const Eigen::MatrixXd& z, double lambda, double p) {
  check_p(p);
  check_lambda(lambda);
  Eigen::MatrixXd out(z.rows(), z.cols());
  for (Eigen::Index i = 0; i < z.rows(); ++i)
    out.row(i) = row_prox_l2p(z.row(i).transpose(), lambda, p).transpose();
  return out;
}

double lq_norm_q(const Eigen::MatrixXd& u, double q) {
  check_q(q);
  if (q == 0.0) {
    double count = 0.0;
    for (Eigen::Index j = 0; j < u.cols(); ++j)
      for (Eigen::Index i = 0; i < u.rows(); ++i)
        if (std::abs(u(i, j)) > kNonzeroTol) count += 1.0;
    return count;
  }
  double sum = 0.0;
  for (Eigen::Index j = 0; j < u.cols(); ++j)
    for (Eigen::Index i = 0; i < u.rows(); ++i) sum += std::pow(std::abs(u(i, j)), q);
  return sum;
}

double l2p_norm_p(const Eigen::MatrixXd& v, double p) {
  check_p(p);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    double nr = v.row(i).norm();
    if (p == 0.0)
      sum += nr > kNonzeroTol ? 1.0 : 0.0;
    else
      sum += std::pow(nr, p);
  }
  return sum;
}

}  // namespace bsufs
