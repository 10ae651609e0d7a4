// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "telu/nn/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numeric>
#include <string>

#include "telu/error.hpp"
#include "telu/nn/rng.hpp"

namespace telu::nn {

void Dataset::finalize() {
  if (features.size() != n_samples * n_features || labels.size() != n_samples) {
    throw Error(ErrorCode::DimensionMismatch, "feature/label storage does not match sample count");
  }
  for (int label : labels) {
    if (label < 0 || label >= n_classes) {
      throw Error(ErrorCode::InvalidArgument, "label " + std::to_string(label) + " out of range");
    }
  }
  double sum = 0.0;
  for (double v : features) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite feature value");
    sum += v;
  }
  const double count = static_cast<double>(std::max<std::size_t>(features.size(), 1));
  feature_mean = sum / count;
  double sq = 0.0;
  for (double v : features) sq += (v - feature_mean) * (v - feature_mean);
  feature_std = std::sqrt(sq / count);
}

namespace {

std::vector<unsigned char> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t read_be32(const std::vector<unsigned char>& bytes, std::size_t offset,
                        const std::filesystem::path& path) {
  if (bytes.size() < offset + 4) {
    throw Error(ErrorCode::TruncatedFile, path.string() + ": header cut short");
  }
  return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
         (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

void write_be32(std::ofstream& out, std::uint32_t v) {
  const char b[4] = {static_cast<char>(v >> 24), static_cast<char>(v >> 16),
                     static_cast<char>(v >> 8), static_cast<char>(v)};
  out.write(b, 4);
}

}  // namespace

Dataset load_idx(const std::filesystem::path& images_path,
                 const std::filesystem::path& labels_path) {
  const auto images = read_file(images_path);
  const auto labels = read_file(labels_path);

  if (read_be32(images, 0, images_path) != kIdxImageMagic) {
    throw Error(ErrorCode::BadMagic, images_path.string() + " is not an IDX image file");
  }
  if (read_be32(labels, 0, labels_path) != kIdxLabelMagic) {
    throw Error(ErrorCode::BadMagic, labels_path.string() + " is not an IDX label file");
  }
  const std::size_t count = read_be32(images, 4, images_path);
  const std::size_t rows = read_be32(images, 8, images_path);
  const std::size_t cols = read_be32(images, 12, images_path);
  const std::size_t label_count = read_be32(labels, 4, labels_path);
  if (count != label_count) {
    throw Error(ErrorCode::DimensionMismatch, std::to_string(count) + " images vs " +
                                                  std::to_string(label_count) + " labels");
  }

  constexpr std::size_t kImageHeader = 16;
  constexpr std::size_t kLabelHeader = 8;
  const std::size_t pixels = rows * cols;
  if (images.size() < kImageHeader + count * pixels) {
    throw Error(ErrorCode::TruncatedFile, images_path.string() + ": pixel data cut short");
  }
  if (labels.size() < kLabelHeader + count) {
    throw Error(ErrorCode::TruncatedFile, labels_path.string() + ": label data cut short");
  }

  Dataset d;
  d.n_samples = count;
  d.n_features = pixels;
  d.features.resize(count * pixels);
  for (std::size_t i = 0; i < count * pixels; ++i) {
    d.features[i] = static_cast<double>(images[kImageHeader + i]) / 255.0;
  }
  d.labels.resize(count);
  int max_label = -1;
  for (std::size_t i = 0; i < count; ++i) {
    d.labels[i] = labels[kLabelHeader + i];
    max_label = std::max(max_label, d.labels[i]);
  }
  d.n_classes = max_label + 1;
  d.finalize();
  return d;
}

void write_idx(const Dataset& data, std::size_t rows, std::size_t cols,
               const std::filesystem::path& images_path,
               const std::filesystem::path& labels_path) {
  if (rows * cols != data.n_features) {
    throw Error(ErrorCode::DimensionMismatch, "rows * cols must equal the feature count");
  }
  std::ofstream img(images_path, std::ios::binary);
  std::ofstream lab(labels_path, std::ios::binary);
  if (!img || !lab) throw Error(ErrorCode::InvalidArgument, "cannot open IDX output files");
  write_be32(img, kIdxImageMagic);
  write_be32(img, static_cast<std::uint32_t>(data.n_samples));
  write_be32(img, static_cast<std::uint32_t>(rows));
  write_be32(img, static_cast<std::uint32_t>(cols));
  for (double v : data.features) {
    const double scaled = std::round(std::clamp(v, 0.0, 1.0) * 255.0);
    img.put(static_cast<char>(static_cast<unsigned char>(scaled)));
  }
  write_be32(lab, kIdxLabelMagic);
  write_be32(lab, static_cast<std::uint32_t>(data.n_samples));
  for (int l : data.labels) lab.put(static_cast<char>(static_cast<unsigned char>(l)));
}

Dataset synth_blobs(std::uint64_t seed, const BlobsConfig& cfg) {
  if (cfg.per_class < 2) {
    throw Error(ErrorCode::TooFewSamples, "synth_blobs needs at least 2 samples per class");
  }
  if (cfg.n_classes < 1 || cfg.dim < 1 || cfg.spread < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "invalid blob configuration");
  }
  Rng rng(seed);
  const std::size_t dim = cfg.dim;
  std::vector<double> centers(static_cast<std::size_t>(cfg.n_classes) * dim);
  for (int c = 0; c < cfg.n_classes; ++c) {
    double* center = centers.data() + static_cast<std::size_t>(c) * dim;
    double norm = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      center[j] = rng.normal();
      norm += center[j] * center[j];
    }
    norm = std::sqrt(norm);
    for (std::size_t j = 0; j < dim; ++j) center[j] /= norm;
  }

  Dataset d;
  d.n_classes = cfg.n_classes;
  d.n_features = dim;
  d.n_samples = static_cast<std::size_t>(cfg.n_classes) * cfg.per_class;
  d.features.reserve(d.n_samples * dim);
  d.labels.reserve(d.n_samples);
  for (int c = 0; c < cfg.n_classes; ++c) {
    const double* center = centers.data() + static_cast<std::size_t>(c) * dim;
    for (std::size_t i = 0; i < cfg.per_class; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        d.features.push_back(center[j] + cfg.spread * rng.normal());
      }
      d.labels.push_back(c);
    }
  }
  d.finalize();
  return d;
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& data, double val_fraction,
                                          std::uint64_t seed) {
  if (!(val_fraction > 0.0 && val_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "val_fraction must lie in (0, 1)");
  }
  std::vector<std::size_t> order(data.n_samples);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));

  const auto n_val = static_cast<std::size_t>(std::llround(val_fraction * static_cast<double>(data.n_samples)));
  if (n_val == 0 || n_val >= data.n_samples) {
    throw Error(ErrorCode::TooFewSamples, "split leaves an empty partition");
  }
  const std::size_t n_train = data.n_samples - n_val;

  auto take = [&](std::size_t begin, std::size_t end) {
    Dataset part;
    part.n_classes = data.n_classes;
    part.n_features = data.n_features;
    part.n_samples = end - begin;
    for (std::size_t k = begin; k < end; ++k) {
      const auto r = data.row(order[k]);
      part.features.insert(part.features.end(), r.begin(), r.end());
      part.labels.push_back(data.labels[order[k]]);
    }
    part.finalize();
    return part;
  };
  return {take(0, n_train), take(n_train, data.n_samples)};
}

}  // namespace telu::nn
