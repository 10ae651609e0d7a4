// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

namespace telu::nn {

/// Dense row-major feature matrix with class labels.
struct Dataset {
  std::size_t n_samples = 0;
  std::size_t n_features = 0;
  std::vector<double> features;  // n_samples * n_features
  std::vector<int> labels;       // n_samples
  int n_classes = 0;
  // Summary statistics over all feature values, recorded at construction.
  double feature_mean = 0.0;
  double feature_std = 0.0;

  std::span<const double> row(std::size_t i) const {
    return {features.data() + i * n_features, n_features};
  }

  /// Recomputes feature_mean / feature_std and checks labels and finiteness.
  /// Throws Error(DimensionMismatch / InvalidArgument) on a malformed dataset.
  void finalize();
};

inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

/// Reads an MNIST-family IDX pair (big-endian u8 tensors). Pixels are scaled
/// to [0, 1]. Throws Error(BadMagic / DimensionMismatch / TruncatedFile).
Dataset load_idx(const std::filesystem::path& images_path,
                 const std::filesystem::path& labels_path);

/// Writes features (clamped to [0, 1], scaled to bytes) as rows x cols images.
void write_idx(const Dataset& data, std::size_t rows, std::size_t cols,
               const std::filesystem::path& images_path,
               const std::filesystem::path& labels_path);

struct BlobsConfig {
  int n_classes = 10;
  std::size_t dim = 32;
  std::size_t per_class = 200;
  double spread = 0.35;
};

/// Isotropic Gaussian clusters around unit-norm random centers, class-major order.
/// Throws Error(TooFewSamples) when per_class < 2.
Dataset synth_blobs(std::uint64_t seed, const BlobsConfig& cfg = {});

/// Shuffles (seeded) and splits off the last `val_fraction` of samples.
std::pair<Dataset, Dataset> split_dataset(const Dataset& data, double val_fraction,
                                          std::uint64_t seed);

}  // namespace telu::nn
