#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "bsufs/data.hpp"

namespace bsufs {

// Loads a CSV of samples (rows) by features (columns). If the first non-empty
// line has any field that does not parse as a number it is treated as a header
// and skipped; had_header reports the decision when non-null.
Eigen::MatrixXd load_csv(const std::string& path, bool* had_header = nullptr);

// load_csv + transpose into feature-major layout + validate_data.
DataMatrix load_data_csv(const std::string& path);

// Writes one sample per row with full double round-trip precision.
void write_csv(const std::string& path, const Eigen::MatrixXd& samples);

// One integer per line.
std::vector<int> load_labels(const std::string& path);
void write_labels(const std::string& path, const std::vector<int>& labels);

// Removes column `col` (negative counts from the end) from a
// samples-by-features matrix and returns it as integer labels; throws
// DataError if the column is out of range or not integral.
std::pair<Eigen::MatrixXd, std::vector<int>> split_label_column(const Eigen::MatrixXd& samples, int col);

}  // namespace bsufs
