#include "bsufs/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>

#include "bsufs/errors.hpp"

namespace bsufs {

DataMatrix from_samples(const Eigen::MatrixXd& samples) {
  DataMatrix data{samples.transpose()};
  validate_data(data);
  return data;
}

void validate_data(const DataMatrix& data) {
  if (data.d() < 1) throw ShapeMismatch("data has no features");
  if (data.n() < 2) throw TooFewSamples(data.n());
  for (int i = 0; i < data.d(); ++i)
    for (int j = 0; j < data.n(); ++j)
      if (!std::isfinite(data.x(i, j))) throw NonFiniteEntry(i, j);
}

ScatterMatrix compute_scatter(const DataMatrix& data) {
  Eigen::MatrixXd xc = data.x.colwise() - data.x.rowwise().mean();
  Eigen::MatrixXd s = xc * xc.transpose();
  s = (0.5 * (s + s.transpose())).eval();
  return ScatterMatrix{std::move(s)};
}

LabelVector make_labels(const std::vector<int>& raw) {
  std::map<int, int> remap;
  for (int v : raw) remap.emplace(v, 0);
  int next = 0;
  for (auto& kv : remap) kv.second = next++;
  LabelVector out;
  out.y.reserve(raw.size());
  for (int v : raw) out.y.push_back(remap.at(v));
  out.class_count = next;
  return out;
}

std::uint64_t fingerprint(const DataMatrix& data) {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&h](const unsigned char* bytes, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ULL;
    }
  };
  const std::int64_t shape[2] = {data.x.rows(), data.x.cols()};
  mix(reinterpret_cast<const unsigned char*>(shape), sizeof(shape));
  mix(reinterpret_cast<const unsigned char*>(data.x.data()),
      sizeof(double) * static_cast<std::size_t>(data.x.size()));
  return h;
}

}  // namespace bsufs
