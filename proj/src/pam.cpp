#include "bsufs/pam.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "bsufs/errors.hpp"
#include "bsufs/prox.hpp"

namespace bsufs {

namespace {

// Returns the config with m resolved; throws on out-of-range values.
SolverConfig validated(const SolverConfig& cfg, int d) {
  SolverConfig out = cfg;
  if (!(out.lambda1 >= 0.0) || !(out.lambda2 >= 0.0))
    throw BadSpec("penalty weights must be nonnegative");
  if (!(out.p >= 0.0 && out.p < 1.0)) throw InvalidP(out.p);
  if (!(out.q >= 0.0 && out.q < 1.0)) throw InvalidQ(out.q);
  if (!(out.beta1 > 0.0) || !(out.beta2 > 0.0))
    throw BadSpec("coupling weights must be positive");
  if (!(out.tau1 > 0.0) || !(out.tau2 > 0.0) || !(out.tau3 > 0.0))
    throw BadSpec("damping weights must be positive");
  if (!(out.rel_tol > 0.0)) throw BadSpec("rel_tol must be positive");
  if (out.max_outer < 1) throw BadSpec("max_outer must be at least 1");
  if (out.m == 0) out.m = std::min(10, d - 1);
  if (out.m < 1 || out.m > d)
    throw BadSpec("subspace dimension " + std::to_string(out.m) + " outside [1, " +
                  std::to_string(d) + "]");
  return out;
}

// Top-m eigenvectors of s, eigenvalues descending, each column signed so its
// largest-magnitude entry is positive.
Eigen::MatrixXd spectral_init(const Eigen::MatrixXd& s, int m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  const int d = static_cast<int>(s.rows());
  Eigen::MatrixXd w(d, m);
  for (int j = 0; j < m; ++j) {
    Eigen::VectorXd col = es.eigenvectors().col(d - 1 - j);
    Eigen::Index idx = 0;
    col.cwiseAbs().maxCoeff(&idx);
    if (col(idx) < 0.0) col = -col;
    w.col(j) = col;
  }
  return w;
}

}  // namespace

ObjectiveBreakdown objective(const Eigen::MatrixXd& s, const Eigen::MatrixXd& w,
                             const Eigen::MatrixXd& u, const Eigen::MatrixXd& v,
                             const SolverConfig& cfg) {
  ObjectiveBreakdown out;
  out.trace_term = -(w.transpose() * (s * w)).trace();
  out.l2p_term = cfg.lambda1 * l2p_norm_p(v, cfg.p);
  out.lq_term = cfg.lambda2 * lq_norm_q(u, cfg.q);
  out.coupling_u = 0.5 * cfg.beta1 * (w - u).squaredNorm();
  out.coupling_v = 0.5 * cfg.beta2 * (w - v).squaredNorm();
  out.total = out.trace_term + out.l2p_term + out.lq_term + out.coupling_u + out.coupling_v;
  return out;
}

Eigen::MatrixXd update_u(const Eigen::MatrixXd& w_next, const Eigen::MatrixXd& u_prev,
                         const SolverConfig& cfg) {
  double denom = cfg.beta1 + cfg.tau2;
  Eigen::MatrixXd blend = (cfg.beta1 * w_next + cfg.tau2 * u_prev) / denom;
  return matrix_prox_lq(blend, cfg.lambda2 / denom, cfg.q);
}

Eigen::MatrixXd update_v(const Eigen::MatrixXd& w_next, const Eigen::MatrixXd& v_prev,
                         const SolverConfig& cfg) {
  double denom = cfg.beta2 + cfg.tau3;
  Eigen::MatrixXd blend = (cfg.beta2 * w_next + cfg.tau3 * v_prev) / denom;
  return matrix_row_prox_l2p(blend, cfg.lambda1 / denom, cfg.p);
}

SelectionResult score_and_select(const Eigen::MatrixXd& v, int s) {
  const int d = static_cast<int>(v.rows());
  if (s < 1 || s > d) throw BadFeatureCount(s, d);
  SelectionResult out;
  out.scores.resize(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) out.scores[static_cast<std::size_t>(i)] = v.row(i).norm();
  out.ranked.resize(static_cast<std::size_t>(d));
  std::iota(out.ranked.begin(), out.ranked.end(), 0);
  std::stable_sort(out.ranked.begin(), out.ranked.end(), [&out](int a, int b) {
    return out.scores[static_cast<std::size_t>(a)] > out.scores[static_cast<std::size_t>(b)];
  });
  out.selected.assign(out.ranked.begin(), out.ranked.begin() + s);
  return out;
}

std::pair<SolverState, SelectionResult> pam_solve_scatter(const ScatterMatrix& scatter,
                                                          const SolverConfig& cfg0,
                                                          int select_count) {
  const Eigen::MatrixXd& s = scatter.s;
  if (s.rows() < 1 || s.rows() != s.cols())
    throw ShapeMismatch("scatter matrix must be square");
  const int d = static_cast<int>(s.rows());
  SolverConfig cfg = validated(cfg0, d);

  SolverState state;
  state.w = spectral_init(s, cfg.m);
  state.u = state.w;
  state.v = state.w;
  double f_prev = objective(s, state.w, state.u, state.v, cfg).total;

  for (int k = 1; k <= cfg.max_outer; ++k) {
    auto t0 = std::chrono::steady_clock::now();
    Eigen::MatrixXd w_prev = state.w;
    WSubproblemData wd{s, state.u, state.v, w_prev, cfg.beta1, cfg.beta2, cfg.tau1};
    TrResult tr = solve_w_subproblem(wd, StiefelPoint{state.w}, cfg.tr);
    state.w = tr.w.w;
    state.u = update_u(state.w, state.u, cfg);
    state.v = update_v(state.w, state.v, cfg);
    ObjectiveBreakdown obj = objective(s, state.w, state.u, state.v, cfg);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    state.trace.push_back(IterationRow{k, obj, tr.grad_norm, tr.iters, ms});
    state.iterations = k;
    if (std::abs(obj.total - f_prev) / std::max(std::abs(f_prev), 1.0) < cfg.rel_tol) {
      state.converged = true;
      break;
    }
    f_prev = obj.total;
  }

  SelectionResult sel = score_and_select(state.v, select_count < 0 ? d : select_count);
  return {std::move(state), std::move(sel)};
}

std::pair<SolverState, SelectionResult> pam_solve(const DataMatrix& data,
                                                  const SolverConfig& cfg, int select_count) {
  validate_data(data);
  return pam_solve_scatter(compute_scatter(data), cfg, select_count);
}

}  // namespace bsufs
