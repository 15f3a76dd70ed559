#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace bsufs {

struct KmeansResult {
  std::vector<int> assign;   // n entries in [0, k)
  Eigen::MatrixXd centers;   // k x s
  double inertia = 0.0;      // sum of squared distances to assigned centers
  int iters = 0;
};

// Lloyd iterations from k-means++ seeding; empty clusters are re-seeded from
// the point currently farthest from its center. points is n x s, one row per
// sample. Throws BadK unless 1 <= k <= n.
KmeansResult kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, int max_iter = 300);

// Assignment of rows to distinct columns maximizing the total count; entry i
// is the column matched to row i, or -1 for rows matched to padding.
std::vector<int> max_assignment(const Eigen::MatrixXi& counts);

// Fraction of samples matched under the best cluster-to-class relabeling.
double clustering_acc(const std::vector<int>& truth, const std::vector<int>& pred);

// Mutual information normalized by sqrt(H(truth) H(pred)), natural logs.
// Two single-cluster partitions score 1; if exactly one side is single-cluster
// the partitions differ and score 0.
double clustering_nmi(const std::vector<int>& truth, const std::vector<int>& pred);

struct EvaluationReport {
  double acc_mean = 0.0, acc_std = 0.0;
  double nmi_mean = 0.0, nmi_std = 0.0;
  std::vector<double> acc, nmi;
  int k = 0;
  int reps = 0;
  std::uint64_t base_seed = 0;
};

// Runs kmeans with seeds base_seed .. base_seed + reps - 1 and aggregates
// ACC/NMI with population standard deviations.
EvaluationReport repeated_eval(const Eigen::MatrixXd& points, const std::vector<int>& truth,
                               int k, int reps, std::uint64_t base_seed);

}  // namespace bsufs
