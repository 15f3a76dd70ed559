#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bsufs {

// Base of everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad inputs: malformed files, shapes, labels, configuration values.
struct DataError : Error {
  using Error::Error;
};

// Numerical breakdowns inside the solvers.
struct NumericalError : Error {
  using Error::Error;
};

struct NonFiniteEntry : DataError {
  int row;
  int col;
  NonFiniteEntry(int r, int c);
};

struct TooFewSamples : DataError {
  explicit TooFewSamples(int n);
};

struct ShapeMismatch : DataError {
  using DataError::DataError;
};

struct LengthMismatch : DataError {
  LengthMismatch(std::size_t got, std::size_t expected);
};

struct InvalidP : DataError {
  explicit InvalidP(double p);
};

struct InvalidQ : DataError {
  explicit InvalidQ(double q);
};

struct BadK : DataError {
  BadK(int k, int n);
};

struct BadFeatureCount : DataError {
  BadFeatureCount(int s, int d);
};

struct BadSpec : DataError {
  using DataError::DataError;
};

struct NewtonNoConvergence : NumericalError {
  NewtonNoConvergence(double a, double lambda, double q);
};

struct RankDeficient : NumericalError {
  using NumericalError::NumericalError;
};

struct NotTangent : NumericalError {
  explicit NotTangent(double violation);
};

}  // namespace bsufs
