#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace paucopt {

/// Labeled feature matrix with fixed positive/negative index partitions.
/// Read-only after construction; the class prior is computed once and
/// never re-derived from batches.
struct SampleSet {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<double> features;  // row-major, n * dim
  std::vector<int> labels;       // 1 = positive, 0 = negative
  std::vector<std::size_t> pos_idx;
  std::vector<std::size_t> neg_idx;
  double prior_p = 0.0;  // |pos_idx| / n, exact

  std::span<const double> row(std::size_t i) const {
    return {features.data() + i * dim, dim};
  }
};

/// Validates labels, builds the index partitions and the prior.
/// Throws std::invalid_argument on an empty set or a single-class set.
SampleSet make_sample_set(std::size_t dim, std::vector<double> features,
                          std::vector<int> labels);

/// Two Gaussian blobs with unit covariance, positives centered at
/// +separation/sqrt(dim) per coordinate and negatives mirrored.
/// Deterministic given the seed.
SampleSet generate_synthetic(std::size_t n_pos, std::size_t n_neg,
                             std::size_t dim, double separation,
                             std::uint64_t seed);

/// Comma-separated file with an optional single header row.
/// `label_column` selects the label column by header name or by
/// zero-based index; every other column becomes a feature.
SampleSet load_csv(const std::string& path, const std::string& label_column);

/// In-place min-max scaling of each feature column to [0, 1].
/// Constant columns are left untouched.
void minmax_scale(SampleSet& set);

struct BatchSpec {
  std::size_t batch_size = 128;
  std::uint64_t shuffle_seed = 0;
  bool stratified = false;
};

/// One epoch of mini-batch index slices: a seeded permutation of all
/// indices cut into consecutive slices (the last may be short).
/// Stratified mode permutes the classes separately and interleaves them
/// proportionally so every slice sees both classes whenever that is
/// arithmetically possible. Pure function of (spec.shuffle_seed, epoch).
std::vector<std::vector<std::size_t>> iter_batches(const SampleSet& set,
                                                   const BatchSpec& spec,
                                                   std::uint64_t epoch);

}  // namespace paucopt
