#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace bsufs {

// Feature-major data: x is d x n, row i holds feature i across all n samples.
struct DataMatrix {
  Eigen::MatrixXd x;

  int d() const { return static_cast<int>(x.rows()); }
  int n() const { return static_cast<int>(x.cols()); }
};

// Centered second-moment matrix S = Xc Xc^T, d x d, symmetric PSD.
struct ScatterMatrix {
  Eigen::MatrixXd s;
};

// Labels remapped to the dense range [0, class_count).
struct LabelVector {
  std::vector<int> y;
  int class_count = 0;
};

// Wraps a samples-by-features matrix (one row per sample) into feature-major
// layout and validates it.
DataMatrix from_samples(const Eigen::MatrixXd& samples);

// Throws ShapeMismatch (d < 1), TooFewSamples (n < 2), or NonFiniteEntry for
// the first NaN/Inf in row-major scan order.
void validate_data(const DataMatrix& data);

// Subtracts each feature's mean and forms Xc Xc^T (symmetrized); the centering
// matrix is never materialized.
ScatterMatrix compute_scatter(const DataMatrix& data);

// Remaps arbitrary integer labels onto [0, class_count), preserving the order
// of the distinct sorted values.
LabelVector make_labels(const std::vector<int>& raw);

// FNV-1a over the shape and the raw entry bytes; stable content identity for
// run manifests.
std::uint64_t fingerprint(const DataMatrix& data);

}  // namespace bsufs
