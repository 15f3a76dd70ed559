#include "bsufs/trust_region.hpp"

#include <cmath>
#include <limits>

#include "bsufs/errors.hpp"

namespace bsufs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Positive root of |m0 + tau p| = delta; callers guarantee |m0| < delta.
double boundary_tau(const Eigen::MatrixXd& m0, const Eigen::MatrixXd& p, double delta) {
  double a = p.squaredNorm();
  if (a == 0.0) return 0.0;
  double b = (m0.array() * p.array()).sum();
  double c = m0.squaredNorm() - delta * delta;
  return (-b + std::sqrt(b * b - a * c)) / a;
}

double inner_dot(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a.array() * b.array()).sum();
}

// Shared by tr_ratio and the outer loop so both judge steps identically.
double ratio_impl(const WSubproblemData& data, const StiefelPoint& w,
                  const Eigen::MatrixXd& m_step, double g_at_w,
                  const Eigen::MatrixXd& egrad) {
  if (m_step.norm() == 0.0) return -kInf;
  Eigen::MatrixXd grad = project_tangent(w, egrad);
  Eigen::MatrixXd hess_m =
      riemannian_hess_apply(w, egrad, g_euclidean_hess_vec(data, m_step), m_step);
  double pred = -(inner_dot(grad, m_step) + 0.5 * inner_dot(m_step, hess_m));
  if (!(pred > 0.0)) return -kInf;
  double actual = g_at_w - g_value(data, retract(w, m_step).w);
  return actual / pred;
}

}  // namespace

TrConfig resolved_tr_config(const TrConfig& cfg, int d, int m) {
  if (m < 1 || d < m) throw ShapeMismatch("trust region needs d >= m >= 1");
  TrConfig out = cfg;
  if (out.delta_bar <= 0.0) out.delta_bar = std::sqrt(static_cast<double>(m));
  if (out.delta0 <= 0.0) out.delta0 = out.delta_bar / 8.0;
  if (out.max_inner <= 0) out.max_inner = d * m - m * (m + 1) / 2;
  if (!(out.rho_accept > 0.0 && out.rho_accept < 1.0))
    throw BadSpec("rho_accept must lie in (0, 1)");
  if (!(out.grad_tol > 0.0)) throw BadSpec("grad_tol must be positive");
  if (out.max_outer < 1) throw BadSpec("max_outer must be at least 1");
  if (out.max_inner < 1) throw BadSpec("max_inner must be at least 1");
  if (!(out.theta > 0.0)) throw BadSpec("theta must be positive");
  if (!(out.kappa_cg > 0.0 && out.kappa_cg < 1.0)) throw BadSpec("kappa_cg must lie in (0, 1)");
  if (!(out.delta0 <= out.delta_bar)) throw BadSpec("delta0 must not exceed delta_bar");
  return out;
}

double g_value(const WSubproblemData& data, const Eigen::MatrixXd& w) {
  double val = -(w.transpose() * (data.s * w)).trace();
  val += 0.5 * data.beta1 * (w - data.u).squaredNorm();
  val += 0.5 * data.beta2 * (w - data.v).squaredNorm();
  val += 0.5 * data.tau1 * (w - data.w_prev).squaredNorm();
  return val;
}

Eigen::MatrixXd g_euclidean_grad(const WSubproblemData& data, const Eigen::MatrixXd& w) {
  return -2.0 * (data.s * w) + data.beta1 * (w - data.u) + data.beta2 * (w - data.v) +
         data.tau1 * (w - data.w_prev);
}

Eigen::MatrixXd g_euclidean_hess_vec(const WSubproblemData& data,
                                     const Eigen::MatrixXd& m_dir) {
  return -2.0 * (data.s * m_dir) + (data.beta1 + data.beta2 + data.tau1) * m_dir;
}

Eigen::MatrixXd riemannian_grad(const WSubproblemData& data, const StiefelPoint& w) {
  return project_tangent(w, g_euclidean_grad(data, w.w));
}

Eigen::MatrixXd riemannian_hess_apply(const StiefelPoint& w, const Eigen::MatrixXd& egrad,
                                      const Eigen::MatrixXd& ehess_m,
                                      const Eigen::MatrixXd& m_dir) {
  double viol = tangency_violation(w, m_dir);
  if (viol > 1e-6 * std::max(1.0, m_dir.norm())) throw NotTangent(viol);
  Eigen::MatrixXd inner = ehess_m - m_dir * sym(w.w.transpose() * egrad) -
                          w.w * sym(m_dir.transpose() * egrad) -
                          w.w * sym(w.w.transpose() * ehess_m);
  return project_tangent(w, inner);
}

Eigen::MatrixXd solve_tr_subproblem(const WSubproblemData& data, const StiefelPoint& w,
                                    double delta, const TrConfig& cfg) {
  TrConfig rc = resolved_tr_config(cfg, w.d(), w.m());
  Eigen::MatrixXd egrad = g_euclidean_grad(data, w.w);
  Eigen::MatrixXd grad = project_tangent(w, egrad);
  Eigen::MatrixXd m0 = Eigen::MatrixXd::Zero(w.d(), w.m());
  double gnorm = grad.norm();
  if (gnorm == 0.0) return m0;
  const double rtol = gnorm * std::min(std::pow(gnorm, rc.theta), rc.kappa_cg);

  Eigen::MatrixXd r = grad;
  Eigen::MatrixXd p = -grad;
  double rr = r.squaredNorm();
  for (int j = 0; j < rc.max_inner; ++j) {
    Eigen::MatrixXd hp =
        riemannian_hess_apply(w, egrad, g_euclidean_hess_vec(data, p), p);
    double php = inner_dot(p, hp);
    if (php <= 0.0) return m0 + boundary_tau(m0, p, delta) * p;
    double alpha = rr / php;
    if ((m0 + alpha * p).norm() >= delta) return m0 + boundary_tau(m0, p, delta) * p;
    m0 += alpha * p;
    r = project_tangent(w, r + alpha * hp);
    double rr_next = r.squaredNorm();
    if (std::sqrt(rr_next) <= rtol) return m0;
    p = -r + (rr_next / rr) * p;
    rr = rr_next;
  }
  return m0;
}

double tr_ratio(const WSubproblemData& data, const StiefelPoint& w,
                const Eigen::MatrixXd& m_step) {
  return ratio_impl(data, w, m_step, g_value(data, w.w), g_euclidean_grad(data, w.w));
}

TrResult solve_w_subproblem(const WSubproblemData& data, const StiefelPoint& w_init,
                            const TrConfig& cfg, const TrTraceSink& sink) {
  TrConfig rc = resolved_tr_config(cfg, w_init.d(), w_init.m());
  StiefelPoint w = w_init;
  double delta = rc.delta0;
  Eigen::MatrixXd egrad = g_euclidean_grad(data, w.w);
  double g_cur = g_value(data, w.w);
  double gn = project_tangent(w, egrad).norm();

  TrResult res{w, 0, 0, gn, g_cur, false};
  while (gn > rc.grad_tol) {
    if (res.iters >= rc.max_outer) {
      res.hit_cap = true;
      break;
    }
    Eigen::MatrixXd step = solve_tr_subproblem(data, w, delta, rc);
    double rho = ratio_impl(data, w, step, g_cur, egrad);
    double step_norm = step.norm();
    bool accepted = rho > rc.rho_accept;
    if (accepted) {
      w = retract(w, step);
      egrad = g_euclidean_grad(data, w.w);
      g_cur = g_value(data, w.w);
      gn = project_tangent(w, egrad).norm();
      ++res.accepted;
    }
    TrIterRecord rec{res.iters + 1, g_cur, gn, delta, rho, step_norm, accepted};
    ++res.iters;
    if (sink) sink(rec);
    if (rho < 0.25)
      delta *= 0.25;
    else if (rho > 0.75 && step_norm >= delta - 1e-8)
      delta = std::min(2.0 * delta, rc.delta_bar);
  }
  res.w = w;
  res.grad_norm = gn;
  res.g = g_cur;
  return res;
}

}  // namespace bsufs
