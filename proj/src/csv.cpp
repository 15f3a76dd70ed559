#include "bsufs/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bsufs/errors.hpp"

namespace bsufs {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

bool parse_double(const std::string& field, double* out) {
  if (field.empty()) return false;
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size() || errno == ERANGE) return false;
  *out = v;
  return true;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (!t.empty()) lines.push_back(std::move(t));
  }
  return lines;
}

}  // namespace

Eigen::MatrixXd load_csv(const std::string& path, bool* had_header) {
  std::vector<std::string> lines = read_lines(path);
  if (lines.empty()) throw DataError(path + " has no data rows");

  std::vector<std::vector<double>> rows;
  std::size_t first = 0;
  bool header = false;
  {
    std::vector<std::string> fields = split_fields(lines[0]);
    std::vector<double> row(fields.size());
    for (std::size_t j = 0; j < fields.size(); ++j) {
      if (!parse_double(fields[j], &row[j])) {
        header = true;
        break;
      }
    }
    if (!header) rows.push_back(std::move(row));
    first = 1;
  }
  if (had_header) *had_header = header;
  if (header && lines.size() == 1) throw DataError(path + " has no data rows");

  std::size_t cols = header ? split_fields(lines[0]).size() : rows[0].size();
  for (std::size_t i = first; i < lines.size(); ++i) {
    std::vector<std::string> fields = split_fields(lines[i]);
    if (fields.size() != cols)
      throw DataError(path + ": line " + std::to_string(i + 1) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(cols));
    std::vector<double> row(fields.size());
    for (std::size_t j = 0; j < fields.size(); ++j)
      if (!parse_double(fields[j], &row[j]))
        throw DataError(path + ": line " + std::to_string(i + 1) + " field " +
                        std::to_string(j + 1) + " is not a number");
    rows.push_back(std::move(row));
  }

  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return out;
}

DataMatrix load_data_csv(const std::string& path) { return from_samples(load_csv(path)); }

void write_csv(const std::string& path, const Eigen::MatrixXd& samples) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  char buf[64];
  for (Eigen::Index i = 0; i < samples.rows(); ++i) {
    for (Eigen::Index j = 0; j < samples.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", samples(i, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw DataError("failed writing " + path);
}

std::vector<int> load_labels(const std::string& path) {
  std::vector<std::string> lines = read_lines(path);
  if (lines.empty()) throw DataError(path + " has no labels");
  std::vector<int> out;
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    double v = 0;
    if (!parse_double(lines[i], &v) || v != std::floor(v) || std::abs(v) > 2147483647.0)
      throw DataError(path + ": line " + std::to_string(i + 1) + " is not an integer label");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

void write_labels(const std::string& path, const std::vector<int>& labels) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  for (int v : labels) out << v << '\n';
  if (!out) throw DataError("failed writing " + path);
}

std::pair<Eigen::MatrixXd, std::vector<int>> split_label_column(const Eigen::MatrixXd& samples,
                                                                int col) {
  const int cols = static_cast<int>(samples.cols());
  int c = col < 0 ? col + cols : col;
  if (c < 0 || c >= cols)
    throw DataError("label column " + std::to_string(col) + " outside a " +
                    std::to_string(cols) + "-column table");
  std::vector<int> labels(static_cast<std::size_t>(samples.rows()));
  for (Eigen::Index i = 0; i < samples.rows(); ++i) {
    double v = samples(i, c);
    if (!std::isfinite(v) || v != std::floor(v) || std::abs(v) > 2147483647.0)
      throw DataError("label column holds a non-integer at row " + std::to_string(i));
    labels[static_cast<std::size_t>(i)] = static_cast<int>(v);
  }
  Eigen::MatrixXd rest(samples.rows(), samples.cols() - 1);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < samples.cols(); ++j) {
    if (j == c) continue;
    rest.col(k++) = samples.col(j);
  }
  return {std::move(rest), std::move(labels)};
}

}  // namespace bsufs
