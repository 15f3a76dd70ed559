#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "bsufs/data.hpp"
#include "bsufs/trust_region.hpp"

namespace bsufs {

struct SolverConfig {
  double lambda1 = 0.01;  // row-sparsity weight on V
  double lambda2 = 0.01;  // element-sparsity weight on U
  double p = 0.5;         // row penalty exponent, in [0, 1)
  double q = 0.5;         // element penalty exponent, in [0, 1)
  double beta1 = 1.0;     // W-U coupling
  double beta2 = 1.0;     // W-V coupling
  double tau1 = 1e-3;     // proximal damping of the W step
  double tau2 = 1e-3;     // proximal damping of the U step
  double tau3 = 1e-3;     // proximal damping of the V step
  int m = 0;              // subspace dimension; 0: min(10, d - 1)
  double rel_tol = 1e-4;  // stop when |f_k+1 - f_k| / max(|f_k|, 1) < rel_tol
  int max_outer = 500;
  std::uint64_t seed = 0; // echoed into manifests; the solver itself is deterministic
  TrConfig tr;
};

struct ObjectiveBreakdown {
  double trace_term = 0.0;  // -tr(W^T S W)
  double l2p_term = 0.0;    // lambda1 |V|_2,p^p
  double lq_term = 0.0;     // lambda2 |U|_q^q
  double coupling_u = 0.0;  // beta1/2 |W - U|_F^2
  double coupling_v = 0.0;  // beta2/2 |W - V|_F^2
  double total = 0.0;
};

ObjectiveBreakdown objective(const Eigen::MatrixXd& s, const Eigen::MatrixXd& w,
                             const Eigen::MatrixXd& u, const Eigen::MatrixXd& v,
                             const SolverConfig& cfg);

// Element-wise prox of the blend ((beta1 W + tau2 U_prev) / (beta1 + tau2))
// at scale lambda2 / (beta1 + tau2).
Eigen::MatrixXd update_u(const Eigen::MatrixXd& w_next, const Eigen::MatrixXd& u_prev,
                         const SolverConfig& cfg);

// Row-wise prox of the blend ((beta2 W + tau3 V_prev) / (beta2 + tau3))
// at scale lambda1 / (beta2 + tau3).
Eigen::MatrixXd update_v(const Eigen::MatrixXd& w_next, const Eigen::MatrixXd& v_prev,
                         const SolverConfig& cfg);

struct IterationRow {
  int k = 0;
  ObjectiveBreakdown obj;
  double grad_norm = 0.0;  // Riemannian gradient norm after the W step
  int inner_iters = 0;     // trust-region iterations spent on the W step
  double ms = 0.0;
};

struct SolverState {
  Eigen::MatrixXd w, u, v;
  int iterations = 0;
  bool converged = false;
  std::vector<IterationRow> trace;
};

struct SelectionResult {
  std::vector<double> scores;  // |v^i|_2 per feature
  std::vector<int> ranked;     // all features, score descending, index ascending on ties
  std::vector<int> selected;   // leading s entries of ranked
};

// Scores features by the row norms of v; throws BadFeatureCount unless
// 1 <= s <= d.
SelectionResult score_and_select(const Eigen::MatrixXd& v, int s);

// Alternating minimization over (W, U, V) with W on the Stiefel manifold:
// trust-region W step, then the U prox, then the V prox, each damped toward
// the previous iterate. Initialized at the top-m eigenvectors of the scatter.
// select_count < 0 selects all d features (full ranking).
std::pair<SolverState, SelectionResult> pam_solve(const DataMatrix& data, const SolverConfig& cfg,
                                                  int select_count = -1);

// Same loop for callers that already hold the scatter matrix.
std::pair<SolverState, SelectionResult> pam_solve_scatter(const ScatterMatrix& scatter,
                                                          const SolverConfig& cfg,
                                                          int select_count = -1);

}  // namespace bsufs
