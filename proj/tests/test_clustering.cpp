#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "bsufs/clustering.hpp"
#include "bsufs/errors.hpp"

using namespace bsufs;

namespace {

// Brute-force best assignment total over all row-to-column bijections of the
// square padding of the matrix.
int brute_best_total(const Eigen::MatrixXi& counts) {
  int k = static_cast<int>(std::max(counts.rows(), counts.cols()));
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  int best = 0;
  do {
    int total = 0;
    for (int i = 0; i < k; ++i) {
      if (i < counts.rows() && perm[i] < counts.cols()) total += counts(i, perm[i]);
    }
    best = std::max(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Eigen::MatrixXd two_blobs(int per_blob, std::uint64_t seed, std::vector<int>* truth) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 0.1);
  Eigen::MatrixXd pts(2 * per_blob, 2);
  truth->clear();
  for (int i = 0; i < per_blob; ++i) {
    pts(i, 0) = g(rng);
    pts(i, 1) = g(rng);
    truth->push_back(0);
  }
  for (int i = 0; i < per_blob; ++i) {
    pts(per_blob + i, 0) = 10.0 + g(rng);
    pts(per_blob + i, 1) = 10.0 + g(rng);
    truth->push_back(1);
  }
  return pts;
}

}  // namespace

TEST_CASE("frozen accuracy value") {
  std::vector<int> y{0, 0, 1, 1};
  std::vector<int> c{0, 1, 1, 1};
  CHECK(clustering_acc(y, c) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(clustering_acc(y, y) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("accuracy is invariant to a relabeling of the prediction") {
  std::vector<int> y{0, 0, 1, 1, 2, 2, 0, 1};
  std::vector<int> c{1, 1, 0, 2, 2, 2, 1, 0};
  std::vector<int> swapped(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) swapped[i] = (c[i] + 1) % 3;
  CHECK(clustering_acc(y, c) == doctest::Approx(clustering_acc(y, swapped)).epsilon(1e-15));
}

TEST_CASE("accuracy equals the brute-force relabeling optimum") {
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<int> classes(2, 5);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 30;
    int ky = classes(rng), kc = classes(rng);
    std::vector<int> y(n), c(n);
    for (int i = 0; i < n; ++i) {
      y[i] = std::uniform_int_distribution<int>(0, ky - 1)(rng);
      c[i] = std::uniform_int_distribution<int>(0, kc - 1)(rng);
    }
    // The oracle works on the contingency table.
    int my = *std::max_element(y.begin(), y.end()) + 1;
    int mc = *std::max_element(c.begin(), c.end()) + 1;
    Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(my, mc);
    for (int i = 0; i < n; ++i) counts(y[i], c[i])++;
    double expect = static_cast<double>(brute_best_total(counts)) / n;
    CHECK(clustering_acc(y, c) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("assignment solver matches brute force on random tables") {
  std::mt19937_64 rng(304);
  std::uniform_int_distribution<int> dim(1, 6);
  std::uniform_int_distribution<int> val(0, 20);
  for (int trial = 0; trial < 60; ++trial) {
    int r = dim(rng), c = dim(rng);
    Eigen::MatrixXi counts(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) counts(i, j) = val(rng);

    std::vector<int> a = max_assignment(counts);
    REQUIRE(static_cast<int>(a.size()) == r);
    int total = 0;
    std::vector<int> used;
    for (int i = 0; i < r; ++i) {
      if (a[i] >= 0) {
        CHECK(a[i] < c);
        used.push_back(a[i]);
        total += counts(i, a[i]);
      }
    }
    std::sort(used.begin(), used.end());
    CHECK(std::adjacent_find(used.begin(), used.end()) == used.end());
    CHECK(total == brute_best_total(counts));
  }
}

TEST_CASE("frozen normalized mutual information values") {
  std::vector<int> y{0, 0, 1, 1};
  CHECK(clustering_nmi(y, {0, 0, 1, 2}) ==
        doctest::Approx(0.8164965809277260).epsilon(1e-12));
  CHECK(clustering_nmi(y, y) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(clustering_nmi(y, {1, 1, 0, 0}) == doctest::Approx(1.0).epsilon(1e-12));
  // Independent partitions carry no information.
  CHECK(clustering_nmi(y, {0, 1, 0, 1}) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  // Degenerate single-cluster sides.
  CHECK(clustering_nmi({0, 0, 0}, {0, 0, 0}) == 1.0);
  CHECK(clustering_nmi({0, 0, 1}, {0, 0, 0}) == 0.0);
  CHECK(clustering_nmi({0, 0, 0}, {0, 1, 2}) == 0.0);
}

TEST_CASE("metric inputs must have matching lengths") {
  CHECK_THROWS_AS(clustering_acc({0, 1}, {0, 1, 2}), LengthMismatch);
  CHECK_THROWS_AS(clustering_nmi({0, 1}, {0}), LengthMismatch);
}

TEST_CASE("kmeans recovers well-separated blobs") {
  std::vector<int> truth;
  Eigen::MatrixXd pts = two_blobs(20, 42, &truth);
  KmeansResult res = kmeans(pts, 2, 0);
  CHECK(clustering_acc(truth, res.assign) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(clustering_nmi(truth, res.assign) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.centers.rows() == 2);
  CHECK(res.centers.cols() == 2);
  CHECK(res.inertia >= 0.0);
}

TEST_CASE("kmeans is deterministic for a fixed seed") {
  std::vector<int> truth;
  Eigen::MatrixXd pts = two_blobs(15, 7, &truth);
  KmeansResult a = kmeans(pts, 3, 99);
  KmeansResult b = kmeans(pts, 3, 99);
  CHECK(a.assign == b.assign);
  CHECK((a.centers - b.centers).norm() == 0.0);
  CHECK(a.inertia == b.inertia);
  CHECK(a.iters == b.iters);
}

TEST_CASE("kmeans edge cases") {
  std::vector<int> truth;
  Eigen::MatrixXd pts = two_blobs(5, 3, &truth);  // n = 10

  CHECK_THROWS_AS(kmeans(pts, 0, 0), BadK);
  CHECK_THROWS_AS(kmeans(pts, 11, 0), BadK);

  KmeansResult one = kmeans(pts, 1, 0);
  Eigen::RowVectorXd mean = pts.colwise().mean();
  double inertia = (pts.rowwise() - mean).squaredNorm();
  CHECK(one.inertia == doctest::Approx(inertia).epsilon(1e-12));
  for (int v : one.assign) CHECK(v == 0);

  KmeansResult full = kmeans(pts, 10, 0);
  CHECK(full.inertia <= 1e-18);
  std::vector<int> sorted = full.assign;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 10; ++i) CHECK(sorted[i] == i);
}

TEST_CASE("kmeans stays well-defined with heavy duplicate points") {
  Eigen::MatrixXd pts(6, 1);
  pts << 0.0, 0.0, 1.0, 1.0, 2.0, 2.0;
  KmeansResult res = kmeans(pts, 4, 5);
  REQUIRE(res.assign.size() == 6);
  for (int v : res.assign) {
    CHECK(v >= 0);
    CHECK(v < 4);
  }
  CHECK(std::isfinite(res.inertia));
  CHECK(res.inertia >= 0.0);
  CHECK(res.centers.allFinite());
}

TEST_CASE("repeated evaluation aggregates per-seed metrics") {
  std::vector<int> truth;
  Eigen::MatrixXd pts = two_blobs(12, 21, &truth);
  EvaluationReport rep = repeated_eval(pts, truth, 2, 5, 1000);
  CHECK(rep.k == 2);
  CHECK(rep.reps == 5);
  CHECK(rep.base_seed == 1000);
  REQUIRE(rep.acc.size() == 5);
  REQUIRE(rep.nmi.size() == 5);

  double am = std::accumulate(rep.acc.begin(), rep.acc.end(), 0.0) / 5.0;
  double av = 0.0;
  for (double a : rep.acc) av += (a - am) * (a - am);
  double as = std::sqrt(av / 5.0);  // population convention
  CHECK(rep.acc_mean == doctest::Approx(am).epsilon(1e-14));
  CHECK(rep.acc_std == doctest::Approx(as).scale(1.0).epsilon(1e-14));

  double nm = std::accumulate(rep.nmi.begin(), rep.nmi.end(), 0.0) / 5.0;
  double nv = 0.0;
  for (double x : rep.nmi) nv += (x - nm) * (x - nm);
  CHECK(rep.nmi_mean == doctest::Approx(nm).epsilon(1e-14));
  CHECK(rep.nmi_std == doctest::Approx(std::sqrt(nv / 5.0)).scale(1.0).epsilon(1e-14));

  for (double a : rep.acc) {
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
  }

  // Per-seed runs line up with direct calls.
  KmeansResult k0 = kmeans(pts, 2, 1000);
  CHECK(rep.acc[0] == doctest::Approx(clustering_acc(truth, k0.assign)).epsilon(1e-15));
  KmeansResult k3 = kmeans(pts, 2, 1003);
  CHECK(rep.acc[3] == doctest::Approx(clustering_acc(truth, k3.assign)).epsilon(1e-15));

  EvaluationReport rep2 = repeated_eval(pts, truth, 2, 5, 1000);
  CHECK(rep.acc == rep2.acc);
  CHECK(rep.nmi == rep2.nmi);
}
