#include "bsufs/synthetic.hpp"

#include <cmath>
#include <random>

#include "bsufs/errors.hpp"

namespace bsufs {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Resolved {
  int n;
  int noise_dims;
  double scale;
};

Resolved resolve(const SyntheticSpec& spec, int default_n, double default_scale, int classes) {
  Resolved r;
  r.n = spec.n == 0 ? default_n : spec.n;
  r.noise_dims = spec.noise_dims;
  r.scale = spec.informative_scale == 0.0 ? default_scale : spec.informative_scale;
  if (r.n < classes)
    throw BadSpec("need at least " + std::to_string(classes) + " samples, got " +
                  std::to_string(r.n));
  if (r.noise_dims < 0) throw BadSpec("noise_dims must be nonnegative");
  if (!(r.scale > 0.0)) throw BadSpec("informative_scale must be positive");
  return r;
}

std::pair<DataMatrix, LabelVector> assemble(int n, int noise_dims, int classes,
                                            const Eigen::MatrixXd& informative,
                                            const std::vector<int>& y, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  DataMatrix data;
  data.x.resize(2 + noise_dims, n);
  data.x.topRows(2) = informative;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < noise_dims; ++i) data.x(2 + i, j) = gauss(rng);
  LabelVector labels{y, classes};
  return {std::move(data), std::move(labels)};
}

}  // namespace

std::pair<DataMatrix, LabelVector> gen_diamond9(const SyntheticSpec& spec) {
  Resolved r = resolve(spec, 3000, 2.0, 9);
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double rot = std::sqrt(2.0) / 2.0;
  const double blob_std = 0.12 * r.scale;

  Eigen::MatrixXd informative(2, r.n);
  std::vector<int> y(static_cast<std::size_t>(r.n));
  for (int j = 0; j < r.n; ++j) {
    int cls = j % 9;
    double gi = static_cast<double>(cls / 3 - 1);
    double gj = static_cast<double>(cls % 3 - 1);
    double cx = rot * r.scale * (gi - gj);
    double cy = rot * r.scale * (gi + gj);
    informative(0, j) = cx + blob_std * gauss(rng);
    informative(1, j) = cy + blob_std * gauss(rng);
    y[static_cast<std::size_t>(j)] = cls;
  }
  return assemble(r.n, r.noise_dims, 9, informative, y, rng);
}

std::pair<DataMatrix, LabelVector> gen_dartboard1(const SyntheticSpec& spec) {
  Resolved r = resolve(spec, 1000, 3.0, 4);
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);

  Eigen::MatrixXd informative(2, r.n);
  std::vector<int> y(static_cast<std::size_t>(r.n));
  for (int j = 0; j < r.n; ++j) {
    int cls = j % 4;
    double radius = 0.25 * (cls + 1) * r.scale + 0.02 * r.scale * gauss(rng);
    double theta = angle(rng);
    informative(0, j) = radius * std::cos(theta);
    informative(1, j) = radius * std::sin(theta);
    y[static_cast<std::size_t>(j)] = cls;
  }
  return assemble(r.n, r.noise_dims, 4, informative, y, rng);
}

std::pair<DataMatrix, LabelVector> gen_synthetic(const SyntheticSpec& spec) {
  switch (spec.kind) {
    case SynthKind::diamond9:
      return gen_diamond9(spec);
    case SynthKind::dartboard1:
      return gen_dartboard1(spec);
  }
  throw BadSpec("unknown synthetic kind");
}

DataMatrix corrupt(const DataMatrix& data, const NoiseSpec& noise, std::uint64_t seed) {
  DataMatrix out{data.x};
  switch (noise.kind) {
    case NoiseSpec::Kind::none:
      return out;
    case NoiseSpec::Kind::gaussian: {
      if (!(noise.sigma >= 0.0)) throw BadSpec("sigma must be nonnegative");
      if (noise.sigma == 0.0) return out;
      std::mt19937_64 rng(seed);
      std::normal_distribution<double> gauss(0.0, noise.sigma);
      for (int i = 0; i < out.d(); ++i)
        for (int j = 0; j < out.n(); ++j) out.x(i, j) += gauss(rng);
      return out;
    }
    case NoiseSpec::Kind::salt_pepper: {
      if (!(noise.fraction >= 0.0 && noise.fraction <= 1.0))
        throw BadSpec("fraction must lie in [0, 1]");
      if (noise.fraction == 0.0) return out;
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> coin(0.0, 1.0);
      Eigen::VectorXd lo = data.x.rowwise().minCoeff();
      Eigen::VectorXd hi = data.x.rowwise().maxCoeff();
      for (int i = 0; i < out.d(); ++i)
        for (int j = 0; j < out.n(); ++j)
          if (coin(rng) < noise.fraction) out.x(i, j) = coin(rng) < 0.5 ? hi(i) : lo(i);
      return out;
    }
  }
  throw BadSpec("unknown noise kind");
}

}  // namespace bsufs
