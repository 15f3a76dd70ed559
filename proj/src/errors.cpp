#include "bsufs/errors.hpp"

namespace bsufs {

NonFiniteEntry::NonFiniteEntry(int r, int c)
    : DataError("non-finite value at feature " + std::to_string(r) + ", sample " +
                std::to_string(c)),
      row(r),
      col(c) {}

TooFewSamples::TooFewSamples(int n)
    : DataError("need at least 2 samples, got " + std::to_string(n)) {}

LengthMismatch::LengthMismatch(std::size_t got, std::size_t expected)
    : DataError("length " + std::to_string(got) + " does not match expected " +
                std::to_string(expected)) {}

InvalidP::InvalidP(double p)
    : DataError("row penalty exponent must lie in [0, 1), got " + std::to_string(p)) {}

InvalidQ::InvalidQ(double q)
    : DataError("element penalty exponent must lie in [0, 1), got " + std::to_string(q)) {}

BadK::BadK(int k, int n)
    : DataError("cluster count " + std::to_string(k) + " outside [1, " + std::to_string(n) +
                "]") {}

BadFeatureCount::BadFeatureCount(int s, int d)
    : DataError("feature count " + std::to_string(s) + " outside [1, " + std::to_string(d) +
                "]") {}

NewtonNoConvergence::NewtonNoConvergence(double a, double lambda, double q)
    : NumericalError("scalar prox root search failed at a=" + std::to_string(a) +
                     " lambda=" + std::to_string(lambda) + " q=" + std::to_string(q)) {}

NotTangent::NotTangent(double v)
    : NumericalError("direction leaves the tangent space (violation " + std::to_string(v) +
                     ")") {}

}  // namespace bsufs
