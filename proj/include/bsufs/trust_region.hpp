#pragma once

#include <Eigen/Dense>
#include <functional>

#include "bsufs/stiefel.hpp"

namespace bsufs {

struct TrConfig {
  double delta_bar = 0.0;  // <= 0: resolved to sqrt(m)
  double delta0 = 0.0;     // <= 0: resolved to delta_bar / 8
  double rho_accept = 0.1; // accept a step iff rho > rho_accept
  double grad_tol = 1e-6;
  int max_outer = 100;
  int max_inner = 0;       // <= 0: resolved to d m - m (m + 1) / 2
  double theta = 1.0;      // inner residual rule: |r| <= |g| min(|g|^theta, kappa_cg)
  double kappa_cg = 0.1;
};

// Fills the dimension-dependent defaults and validates ranges.
TrConfig resolved_tr_config(const TrConfig& cfg, int d, int m);

// Smooth block around the current iterates:
//   g(W) = -tr(W^T S W) + beta1/2 |W - U|_F^2 + beta2/2 |W - V|_F^2
//          + tau1/2 |W - Wp|_F^2
// All referenced matrices must outlive the struct.
struct WSubproblemData {
  const Eigen::MatrixXd& s;       // d x d symmetric
  const Eigen::MatrixXd& u;       // d x m
  const Eigen::MatrixXd& v;       // d x m
  const Eigen::MatrixXd& w_prev;  // d x m
  double beta1 = 1.0;
  double beta2 = 1.0;
  double tau1 = 1e-3;
};

double g_value(const WSubproblemData& data, const Eigen::MatrixXd& w);
Eigen::MatrixXd g_euclidean_grad(const WSubproblemData& data, const Eigen::MatrixXd& w);

// Euclidean Hessian action: -2 S m + (beta1 + beta2 + tau1) m.
Eigen::MatrixXd g_euclidean_hess_vec(const WSubproblemData& data, const Eigen::MatrixXd& m_dir);

// project_tangent of the Euclidean gradient.
Eigen::MatrixXd riemannian_grad(const WSubproblemData& data, const StiefelPoint& w);

// Projected-connection Hessian action at w applied to the tangent m_dir, given
// the Euclidean gradient at w and the Euclidean Hessian action on m_dir.
// Throws NotTangent if m_dir fails the tangency check.
Eigen::MatrixXd riemannian_hess_apply(const StiefelPoint& w, const Eigen::MatrixXd& egrad,
                                      const Eigen::MatrixXd& ehess_m, const Eigen::MatrixXd& m_dir);

// Truncated CG on the quadratic model; returns a tangent step with
// |M| <= delta and model value no worse than the zero step.
Eigen::MatrixXd solve_tr_subproblem(const WSubproblemData& data, const StiefelPoint& w,
                                    double delta, const TrConfig& cfg);

// (g(W) - g(R_W(M))) / (m(0) - m(M)); -inf when the predicted decrease is
// not positive, so such steps are always rejected.
double tr_ratio(const WSubproblemData& data, const StiefelPoint& w, const Eigen::MatrixXd& m_step);

struct TrIterRecord {
  int iter = 0;
  double g = 0.0;
  double grad_norm = 0.0;
  double delta = 0.0;
  double rho = 0.0;
  double step_norm = 0.0;
  bool accepted = false;
};
using TrTraceSink = std::function<void(const TrIterRecord&)>;

struct TrResult {
  StiefelPoint w;
  int iters = 0;      // trust-region iterations performed (accepted or not)
  int accepted = 0;
  double grad_norm = 0.0;
  double g = 0.0;
  bool hit_cap = false;
};

// Riemannian trust region: stop when the gradient norm drops below grad_tol
// or max_outer iterations have run (a normal, flagged return).
TrResult solve_w_subproblem(const WSubproblemData& data, const StiefelPoint& w_init,
                            const TrConfig& cfg, const TrTraceSink& sink = {});

}  // namespace bsufs
