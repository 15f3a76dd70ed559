#include "bsufs/clustering.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <random>

#include "bsufs/errors.hpp"

namespace bsufs {

namespace {

void check_partition(const std::vector<int>& truth, const std::vector<int>& pred) {
  if (truth.size() != pred.size()) throw LengthMismatch(pred.size(), truth.size());
  if (truth.empty()) throw DataError("empty partitions");
  for (int v : truth)
    if (v < 0) throw DataError("negative label");
  for (int v : pred)
    if (v < 0) throw DataError("negative label");
}

Eigen::MatrixXi contingency(const std::vector<int>& truth, const std::vector<int>& pred) {
  int kt = 1 + *std::max_element(truth.begin(), truth.end());
  int kp = 1 + *std::max_element(pred.begin(), pred.end());
  Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(kt, kp);
  for (std::size_t i = 0; i < truth.size(); ++i) counts(truth[i], pred[i]) += 1;
  return counts;
}

}  // namespace

KmeansResult kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, int max_iter) {
  const int n = static_cast<int>(points.rows());
  const int s = static_cast<int>(points.cols());
  if (k < 1 || k > n) throw BadK(k, n);
  if (max_iter < 1) throw BadSpec("max_iter must be at least 1");
  std::mt19937_64 rng(seed);

  // k-means++ seeding.
  Eigen::MatrixXd centers(k, s);
  {
    std::uniform_int_distribution<int> uniform(0, n - 1);
    centers.row(0) = points.row(uniform(rng));
    Eigen::VectorXd d2 = (points.rowwise() - centers.row(0)).rowwise().squaredNorm();
    for (int c = 1; c < k; ++c) {
      double total = d2.sum();
      int pick = -1;
      if (total > 0.0) {
        double r = std::uniform_real_distribution<double>(0.0, total)(rng);
        double cum = 0.0;
        for (int i = 0; i < n; ++i) {
          cum += d2(i);
          if (cum > r) {
            pick = i;
            break;
          }
        }
      }
      if (pick < 0) pick = uniform(rng);
      centers.row(c) = points.row(pick);
      d2 = d2.cwiseMin((points.rowwise() - centers.row(c)).rowwise().squaredNorm());
    }
  }

  std::vector<int> assign(static_cast<std::size_t>(n), -1);
  std::vector<int> next(static_cast<std::size_t>(n), 0);
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  Eigen::VectorXd best_d2(n);
  int iters = 0;
  for (int iter = 0; iter < max_iter; ++iter) {
    // Nearest center, lowest index on ties.
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double bd = (points.row(i) - centers.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        double d = (points.row(i) - centers.row(c)).squaredNorm();
        if (d < bd) {
          bd = d;
          best = c;
        }
      }
      next[static_cast<std::size_t>(i)] = best;
      best_d2(i) = bd;
    }

    // Re-seed empty clusters from the farthest point.
    std::fill(counts.begin(), counts.end(), 0);
    for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(next[i])];
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) continue;
      int far = 0;
      for (int i = 1; i < n; ++i)
        if (best_d2(i) > best_d2(far)) far = i;
      --counts[static_cast<std::size_t>(next[far])];
      next[static_cast<std::size_t>(far)] = c;
      counts[static_cast<std::size_t>(c)] = 1;
      best_d2(far) = 0.0;
    }

    centers.setZero();
    for (int i = 0; i < n; ++i) centers.row(next[static_cast<std::size_t>(i)]) += points.row(i);
    for (int c = 0; c < k; ++c)
      if (counts[static_cast<std::size_t>(c)] > 0)
        centers.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);

    ++iters;
    if (next == assign) break;
    assign = next;
  }
  assign = next;

  double inertia = 0.0;
  for (int i = 0; i < n; ++i)
    inertia += (points.row(i) - centers.row(assign[static_cast<std::size_t>(i)])).squaredNorm();
  return KmeansResult{std::move(assign), std::move(centers), inertia, iters};
}

std::vector<int> max_assignment(const Eigen::MatrixXi& counts) {
  const int r = static_cast<int>(counts.rows());
  const int c = static_cast<int>(counts.cols());
  if (r < 1 || c < 1) throw ShapeMismatch("assignment table must be nonempty");
  const int kk = std::max(r, c);
  const long long maxv = static_cast<long long>(counts.maxCoeff());

  // Square min-cost table; padding cells behave like zero counts.
  std::vector<std::vector<long long>> a(static_cast<std::size_t>(kk + 1),
                                        std::vector<long long>(static_cast<std::size_t>(kk + 1), 0));
  for (int i = 1; i <= kk; ++i)
    for (int j = 1; j <= kk; ++j) {
      long long value = (i <= r && j <= c) ? static_cast<long long>(counts(i - 1, j - 1)) : 0;
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = maxv - value;
    }

  std::vector<long long> u(static_cast<std::size_t>(kk + 1), 0);
  std::vector<long long> v(static_cast<std::size_t>(kk + 1), 0);
  std::vector<int> p(static_cast<std::size_t>(kk + 1), 0);
  std::vector<int> way(static_cast<std::size_t>(kk + 1), 0);
  for (int i = 1; i <= kk; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<long long> minv(static_cast<std::size_t>(kk + 1), LLONG_MAX);
    std::vector<char> used(static_cast<std::size_t>(kk + 1), 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      int i0 = p[static_cast<std::size_t>(j0)];
      int j1 = 0;
      long long delta = LLONG_MAX;
      for (int j = 1; j <= kk; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        long long cur = a[static_cast<std::size_t>(i0)][static_cast<std::size_t>(j)] -
                        u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= kk; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<std::size_t>(j0)] != 0);
    do {
      int j1 = way[static_cast<std::size_t>(j0)];
      p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0);
  }

  std::vector<int> match(static_cast<std::size_t>(r), -1);
  for (int j = 1; j <= kk; ++j) {
    int i = p[static_cast<std::size_t>(j)];
    if (i >= 1 && i <= r) match[static_cast<std::size_t>(i - 1)] = j <= c ? j - 1 : -1;
  }
  return match;
}

double clustering_acc(const std::vector<int>& truth, const std::vector<int>& pred) {
  check_partition(truth, pred);
  Eigen::MatrixXi counts = contingency(truth, pred);
  std::vector<int> match = max_assignment(counts);
  long long total = 0;
  for (int i = 0; i < counts.rows(); ++i)
    if (match[static_cast<std::size_t>(i)] >= 0)
      total += counts(i, match[static_cast<std::size_t>(i)]);
  return static_cast<double>(total) / static_cast<double>(truth.size());
}

double clustering_nmi(const std::vector<int>& truth, const std::vector<int>& pred) {
  check_partition(truth, pred);
  Eigen::MatrixXi counts = contingency(truth, pred);
  const double n = static_cast<double>(truth.size());
  Eigen::VectorXi row = counts.rowwise().sum();
  Eigen::VectorXi col = counts.colwise().sum();

  double hy = 0.0, hc = 0.0;
  for (int i = 0; i < row.size(); ++i)
    if (row(i) > 0) {
      double pr = row(i) / n;
      hy -= pr * std::log(pr);
    }
  for (int j = 0; j < col.size(); ++j)
    if (col(j) > 0) {
      double pc = col(j) / n;
      hc -= pc * std::log(pc);
    }
  if (hy == 0.0 && hc == 0.0) return 1.0;
  if (hy == 0.0 || hc == 0.0) return 0.0;

  double mi = 0.0;
  for (int i = 0; i < counts.rows(); ++i)
    for (int j = 0; j < counts.cols(); ++j)
      if (counts(i, j) > 0) {
        double pij = counts(i, j) / n;
        mi += pij * std::log(n * counts(i, j) / (static_cast<double>(row(i)) * col(j)));
      }
  return mi / std::sqrt(hy * hc);
}

EvaluationReport repeated_eval(const Eigen::MatrixXd& points, const std::vector<int>& truth,
                               int k, int reps, std::uint64_t base_seed) {
  if (reps < 1) throw BadSpec("reps must be at least 1");
  if (truth.size() != static_cast<std::size_t>(points.rows()))
    throw LengthMismatch(truth.size(), static_cast<std::size_t>(points.rows()));
  EvaluationReport rep;
  rep.k = k;
  rep.reps = reps;
  rep.base_seed = base_seed;
  for (int r = 0; r < reps; ++r) {
    KmeansResult km = kmeans(points, k, base_seed + static_cast<std::uint64_t>(r));
    rep.acc.push_back(clustering_acc(truth, km.assign));
    rep.nmi.push_back(clustering_nmi(truth, km.assign));
  }
  auto mean = [](const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
  };
  auto pop_std = [](const std::vector<double>& xs, double mu) {
    double s = 0.0;
    for (double x : xs) s += (x - mu) * (x - mu);
    return std::sqrt(s / static_cast<double>(xs.size()));
  };
  rep.acc_mean = mean(rep.acc);
  rep.nmi_mean = mean(rep.nmi);
  rep.acc_std = pop_std(rep.acc, rep.acc_mean);
  rep.nmi_std = pop_std(rep.nmi, rep.nmi_mean);
  return rep;
}

}  // namespace bsufs
