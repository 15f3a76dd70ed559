#include "bsufs/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "bsufs/errors.hpp"

namespace bsufs {

SweepGrid SweepGrid::defaults() {
  SweepGrid g;
  g.lambda1 = {1e-6, 1e-4, 1e-2, 1.0, 1e2, 1e4, 1e6};
  g.lambda2 = g.lambda1;
  g.p = {0.0, 0.5, 2.0 / 3.0};
  g.q = g.p;
  for (int s = 10; s <= 100; s += 10) g.feature_counts.push_back(s);
  return g;
}

std::vector<SweepCell> enumerate_cells(const SweepGrid& grid, int d) {
  if (d < 1) throw BadSpec("d must be at least 1");
  if (grid.lambda1.empty() || grid.lambda2.empty() || grid.p.empty() || grid.q.empty() ||
      grid.feature_counts.empty())
    throw BadSpec("sweep grid has an empty axis");
  std::vector<int> counts;
  for (int s : grid.feature_counts) {
    int c = std::min(s, d);
    if (c < 1) throw BadSpec("feature counts must be positive");
    if (std::find(counts.begin(), counts.end(), c) == counts.end()) counts.push_back(c);
  }
  std::vector<SweepCell> cells;
  cells.reserve(grid.lambda1.size() * grid.lambda2.size() * grid.p.size() * grid.q.size() *
                counts.size());
  for (double l1 : grid.lambda1)
    for (double l2 : grid.lambda2)
      for (double p : grid.p)
        for (double q : grid.q)
          for (int s : counts) cells.push_back(SweepCell{l1, l2, p, q, s});
  return cells;
}

namespace {

struct TupleRun {
  SweepCell params;  // s unused
  SolverState state;
  SelectionResult sel;
  double wall_ms = 0.0;
};

}  // namespace

std::vector<SweepCellResult> run_sweep(const DataMatrix& data, const LabelVector* labels,
                                       const SolverConfig& base, const SweepGrid& grid,
                                       const SweepOptions& opts) {
  validate_data(data);
  const int d = data.d();
  const bool eval = opts.evaluate && labels != nullptr;
  if (eval && labels->y.size() != static_cast<std::size_t>(data.n()))
    throw LengthMismatch(labels->y.size(), static_cast<std::size_t>(data.n()));

  std::vector<SweepCell> cells = enumerate_cells(grid, d);
  ScatterMatrix scatter = compute_scatter(data);

  // One solve per penalty tuple; every feature count reuses its full ranking.
  std::vector<TupleRun> runs;
  for (double l1 : grid.lambda1)
    for (double l2 : grid.lambda2)
      for (double p : grid.p)
        for (double q : grid.q) runs.push_back(TupleRun{SweepCell{l1, l2, p, q, 0}, {}, {}, 0.0});

  int workers = opts.workers > 0 ? opts.workers
                                 : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min<int>(workers, static_cast<int>(runs.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= runs.size()) return;
      try {
        TupleRun& run = runs[i];
        SolverConfig cfg = base;
        cfg.lambda1 = run.params.lambda1;
        cfg.lambda2 = run.params.lambda2;
        cfg.p = run.params.p;
        cfg.q = run.params.q;
        auto t0 = std::chrono::steady_clock::now();
        auto [state, sel] = pam_solve_scatter(scatter, cfg, -1);
        run.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        run.state = std::move(state);
        run.sel = std::move(sel);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  Eigen::MatrixXd samples = data.x.transpose();
  std::vector<SweepCellResult> out;
  out.reserve(cells.size());
  std::size_t run_idx = 0;
  std::size_t cells_per_tuple = cells.size() / runs.size();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    run_idx = i / cells_per_tuple;
    const TupleRun& run = runs[run_idx];
    const SweepCell& cell = cells[i];
    SweepCellResult res;
    res.cell = cell;
    res.scores = run.sel.scores;
    res.selected.assign(run.sel.ranked.begin(), run.sel.ranked.begin() + cell.s);
    res.iterations = run.state.iterations;
    res.converged = run.state.converged;
    res.objective_total = run.state.trace.back().obj.total;
    res.wall_ms = run.wall_ms;
    if (eval) {
      Eigen::MatrixXd points(samples.rows(), cell.s);
      for (int j = 0; j < cell.s; ++j) points.col(j) = samples.col(res.selected[static_cast<std::size_t>(j)]);
      res.eval = repeated_eval(points, labels->y, labels->class_count, opts.reps, opts.eval_seed);
    }
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace bsufs
