#pragma once

#include <cstdint>
#include <utility>

#include "bsufs/data.hpp"

namespace bsufs {

enum class SynthKind { diamond9, dartboard1 };

struct SyntheticSpec {
  SynthKind kind = SynthKind::diamond9;
  int n = 0;                       // 0: 3000 for diamond9, 1000 for dartboard1
  int noise_dims = 7;              // i.i.d. standard normal features appended
  double informative_scale = 0.0;  // 0: 2.0 for diamond9, 3.0 for dartboard1
  std::uint64_t seed = 0;
};

struct NoiseSpec {
  enum class Kind { none, gaussian, salt_pepper };
  Kind kind = Kind::none;
  double sigma = 0.01;     // gaussian: std of the additive noise on every entry
  double fraction = 0.03;  // salt_pepper: per-entry replacement probability
};

// Nine isotropic Gaussian blobs on a 45-degree-rotated 3x3 grid in features
// 0-1 (grid spacing = informative_scale, blob std = 0.12 x spacing), noise
// elsewhere. Classes are balanced round-robin.
std::pair<DataMatrix, LabelVector> gen_diamond9(const SyntheticSpec& spec);

// Four concentric rings in features 0-1 with radii {0.25, 0.5, 0.75, 1.0} x
// informative_scale, uniform angles, radial jitter std 0.02 x scale; noise
// elsewhere. Classes are balanced round-robin.
std::pair<DataMatrix, LabelVector> gen_dartboard1(const SyntheticSpec& spec);

std::pair<DataMatrix, LabelVector> gen_synthetic(const SyntheticSpec& spec);

// gaussian: adds N(0, sigma^2) to every entry. salt_pepper: replaces each
// entry with probability `fraction` by its feature's min or max (fair coin).
DataMatrix corrupt(const DataMatrix& data, const NoiseSpec& noise, std::uint64_t seed);

}  // namespace bsufs
