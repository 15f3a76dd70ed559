#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bsufs/clustering.hpp"
#include "bsufs/data.hpp"
#include "bsufs/pam.hpp"

namespace bsufs {

struct SweepGrid {
  std::vector<double> lambda1, lambda2, p, q;
  std::vector<int> feature_counts;

  // lambda in {1e-6, 1e-4, 1e-2, 1, 1e2, 1e4, 1e6}, p and q in {0, 1/2, 2/3},
  // feature counts 10..100 step 10.
  static SweepGrid defaults();
};

struct SweepCell {
  double lambda1 = 0.0, lambda2 = 0.0, p = 0.0, q = 0.0;
  int s = 0;
};

struct SweepCellResult {
  SweepCell cell;
  std::vector<int> selected;
  std::vector<double> scores;  // full per-feature scores
  int iterations = 0;
  bool converged = false;
  double objective_total = 0.0;
  double wall_ms = 0.0;
  std::optional<EvaluationReport> eval;
};

struct SweepOptions {
  int workers = 0;             // <= 0: hardware concurrency
  int reps = 5;                // k-means repetitions per evaluated cell
  std::uint64_t eval_seed = 0; // shared base seed, same across cells
  bool evaluate = true;        // requires labels
};

// Expands the grid in enumeration order lambda1 -> lambda2 -> p -> q -> s,
// clamping feature counts to d and de-duplicating them (order preserved).
std::vector<SweepCell> enumerate_cells(const SweepGrid& grid, int d);

// One solve per (lambda1, lambda2, p, q) sharing one scatter matrix; cells run
// on a bounded worker pool and results come back in enumeration order.
// Evaluation clusters the selected features of `data` against `labels`.
std::vector<SweepCellResult> run_sweep(const DataMatrix& data, const LabelVector* labels,
                                       const SolverConfig& base, const SweepGrid& grid,
                                       const SweepOptions& opts);

}  // namespace bsufs
