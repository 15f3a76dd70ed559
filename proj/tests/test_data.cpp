#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "bsufs/csv.hpp"
#include "bsufs/data.hpp"
#include "bsufs/errors.hpp"

using namespace bsufs;
namespace fs = std::filesystem;

namespace {

// Oracle: build the centering matrix explicitly and form X H H^T X^T.
Eigen::MatrixXd scatter_oracle(const Eigen::MatrixXd& x) {
  const auto n = x.cols();
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) -
                      Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  Eigen::MatrixXd xc = x * h;
  return xc * xc.transpose();
}

fs::path temp_dir() {
  fs::path dir = fs::temp_directory_path() / "bsufs_data_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("scatter matches the explicit centering-matrix oracle") {
  std::mt19937_64 rng(123);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXd x(6, 11);
    for (int i = 0; i < x.size(); ++i) x(i) = g(rng);
    DataMatrix data{x};
    ScatterMatrix s = compute_scatter(data);
    Eigen::MatrixXd ref = scatter_oracle(x);
    CHECK((s.s - ref).norm() <= 1e-10 * std::max(1.0, ref.norm()));
    CHECK((s.s - s.s.transpose()).norm() <= 1e-12 * std::max(1.0, s.s.norm()));
  }
}

TEST_CASE("frozen scatter for a two-feature instance") {
  Eigen::MatrixXd x(2, 2);
  x << 1.0, -1.0,
       0.0, 0.0;
  ScatterMatrix s = compute_scatter(DataMatrix{x});
  CHECK(s.s(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s.s(0, 1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(s.s(1, 0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(s.s(1, 1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
}

TEST_CASE("scatter is invariant to translating every sample") {
  std::mt19937_64 rng(321);
  std::normal_distribution<double> g(0.0, 2.0);
  Eigen::MatrixXd x(4, 9);
  for (int i = 0; i < x.size(); ++i) x(i) = g(rng);
  Eigen::VectorXd shift(4);
  shift << 100.0, -3.0, 0.5, 7.0;
  Eigen::MatrixXd xs = x.colwise() + shift;
  Eigen::MatrixXd a = compute_scatter(DataMatrix{x}).s;
  Eigen::MatrixXd b = compute_scatter(DataMatrix{xs}).s;
  CHECK((a - b).norm() <= 1e-9 * std::max(1.0, a.norm()));
}

TEST_CASE("scatter is positive semidefinite") {
  std::mt19937_64 rng(55);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd x(5, 8);
  for (int i = 0; i < x.size(); ++i) x(i) = g(rng);
  Eigen::MatrixXd s = compute_scatter(DataMatrix{x}).s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  CHECK(es.eigenvalues().minCoeff() >= -1e-10 * std::max(1.0, s.norm()));
}

TEST_CASE("validation rejects non-finite entries and tiny sample counts") {
  Eigen::MatrixXd x = Eigen::MatrixXd::Ones(3, 4);
  x(1, 2) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(validate_data(DataMatrix{x}), NonFiniteEntry);
  x(1, 2) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate_data(DataMatrix{x}), NonFiniteEntry);

  try {
    x(1, 2) = std::numeric_limits<double>::quiet_NaN();
    validate_data(DataMatrix{x});
    CHECK(false);
  } catch (const NonFiniteEntry& e) {
    CHECK(e.row == 1);
    CHECK(e.col == 2);
  }

  Eigen::MatrixXd one(3, 1);
  one << 1.0, 2.0, 3.0;
  CHECK_THROWS_AS(validate_data(DataMatrix{one}), TooFewSamples);
  Eigen::MatrixXd none(3, 0);
  CHECK_THROWS_AS(validate_data(DataMatrix{none}), TooFewSamples);
}

TEST_CASE("from_samples transposes a samples-by-features table") {
  Eigen::MatrixXd table(3, 2);  // 3 samples, 2 features
  table << 1.0, 2.0,
           3.0, 4.0,
           5.0, 6.0;
  DataMatrix d = from_samples(table);
  CHECK(d.d() == 2);
  CHECK(d.n() == 3);
  CHECK(d.x(0, 0) == 1.0);
  CHECK(d.x(1, 0) == 2.0);
  CHECK(d.x(0, 2) == 5.0);
}

TEST_CASE("labels are validated and relabeled to a dense range") {
  std::vector<int> raw{4, 4, 9, 2, 9};
  LabelVector lv = make_labels(raw);
  CHECK(lv.class_count == 3);
  CHECK(lv.y.size() == 5);
  CHECK(lv.y[0] == lv.y[1]);
  CHECK(lv.y[2] == lv.y[4]);
  CHECK(lv.y[0] != lv.y[2]);
  CHECK(lv.y[0] != lv.y[3]);
  for (int v : lv.y) {
    CHECK(v >= 0);
    CHECK(v < 3);
  }
}

TEST_CASE("fingerprint is shape- and content-sensitive") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 3);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(3, 2);
  Eigen::MatrixXd c = a;
  c(1, 2) = 1e-16;
  CHECK(fingerprint(DataMatrix{a}) != fingerprint(DataMatrix{b}));
  CHECK(fingerprint(DataMatrix{a}) != fingerprint(DataMatrix{c}));
  CHECK(fingerprint(DataMatrix{a}) == fingerprint(DataMatrix{Eigen::MatrixXd::Zero(2, 3)}));
}

TEST_CASE("csv round trip preserves values") {
  fs::path p = temp_dir() / "roundtrip.csv";
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g(0.0, 3.0);
  Eigen::MatrixXd table(7, 4);
  for (int i = 0; i < table.size(); ++i) table(i) = g(rng);
  table(0, 0) = 1e-17;
  table(1, 1) = -12345.678901234567;
  write_csv(p.string(), table);
  bool had_header = true;
  Eigen::MatrixXd back = load_csv(p.string(), &had_header);
  CHECK(!had_header);
  REQUIRE(back.rows() == table.rows());
  REQUIRE(back.cols() == table.cols());
  CHECK((back - table).norm() == 0.0);
  fs::remove(p);
}

TEST_CASE("csv header detection") {
  fs::path p = temp_dir() / "header.csv";
  {
    std::ofstream out(p);
    out << "f0,f1,f2\n1,2,3\n4,5,6\n";
  }
  bool had_header = false;
  Eigen::MatrixXd m = load_csv(p.string(), &had_header);
  CHECK(had_header);
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 3);
  CHECK(m(0, 0) == 1.0);
  CHECK(m(1, 2) == 6.0);
  fs::remove(p);
}

TEST_CASE("csv rejects ragged rows and non-numeric cells") {
  fs::path p = temp_dir() / "ragged.csv";
  {
    std::ofstream out(p);
    out << "1,2,3\n4,5\n";
  }
  CHECK_THROWS_AS(load_csv(p.string()), DataError);
  {
    std::ofstream out(p);
    out << "1,2,3\n4,oops,6\n";
  }
  CHECK_THROWS_AS(load_csv(p.string()), DataError);
  fs::remove(p);
  CHECK_THROWS_AS(load_csv((temp_dir() / "missing.csv").string()), DataError);
}

TEST_CASE("label files round trip") {
  fs::path p = temp_dir() / "labels.csv";
  std::vector<int> y{0, 2, 1, 1, 0};
  write_labels(p.string(), y);
  std::vector<int> back = load_labels(p.string());
  CHECK(back == y);
  fs::remove(p);
}

TEST_CASE("a label column can be split out of a table") {
  Eigen::MatrixXd table(3, 3);
  table << 0.5, 1.0, 0.0,
           0.25, 2.0, 1.0,
           0.75, 3.0, 1.0;
  auto [features, labels] = split_label_column(table, 2);
  REQUIRE(features.cols() == 2);
  CHECK(features(1, 1) == 2.0);
  CHECK(labels == std::vector<int>{0, 1, 1});

  auto [f2, l2] = split_label_column(table, -1);  // negative indexes from the end
  CHECK(f2.cols() == 2);
  CHECK(l2 == std::vector<int>{0, 1, 1});

  CHECK_THROWS_AS(split_label_column(table, 3), DataError);
  Eigen::MatrixXd frac = table;
  frac(0, 2) = 0.5;
  CHECK_THROWS_AS(split_label_column(frac, 2), DataError);
}
