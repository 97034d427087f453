#include "paucopt/dataio.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace paucopt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_double(const std::string& cell, double& out) {
  const std::string t = trim(cell);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

}  // namespace

SampleSet make_sample_set(std::size_t dim, std::vector<double> features,
                          std::vector<int> labels) {
  const std::size_t n = labels.size();
  if (n == 0) throw std::invalid_argument("empty dataset");
  if (dim == 0) throw std::invalid_argument("feature dimension must be >= 1");
  if (features.size() != n * dim)
    throw std::invalid_argument("feature matrix size does not match n * dim");

  SampleSet set;
  set.n = n;
  set.dim = dim;
  set.features = std::move(features);
  set.labels = std::move(labels);
  for (std::size_t i = 0; i < n; ++i) {
    const int y = set.labels[i];
    if (y != 0 && y != 1)
      throw std::invalid_argument("labels must be 0 or 1");
    (y == 1 ? set.pos_idx : set.neg_idx).push_back(i);
  }
  if (set.pos_idx.empty())
    throw std::invalid_argument("no positive instances");
  if (set.neg_idx.empty())
    throw std::invalid_argument("no negative instances");
  set.prior_p = static_cast<double>(set.pos_idx.size()) /
                static_cast<double>(set.n);
  return set;
}

SampleSet generate_synthetic(std::size_t n_pos, std::size_t n_neg,
                             std::size_t dim, double separation,
                             std::uint64_t seed) {
  if (n_pos == 0 || n_neg == 0)
    throw std::invalid_argument("synthetic generation needs at least one "
                                "instance of each class");
  if (dim == 0) throw std::invalid_argument("dimension must be >= 1");
  if (separation < 0.0)
    throw std::invalid_argument("separation must be nonnegative");

  const std::size_t n = n_pos + n_neg;
  const double shift = separation / std::sqrt(static_cast<double>(dim));
  std::mt19937_64 rng(splitmix64(seed));
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<double> features(n * dim);
  std::vector<int> labels(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const bool positive = i < n_pos;
    labels[i] = positive ? 1 : 0;
    const double mean = positive ? shift : -shift;
    for (std::size_t j = 0; j < dim; ++j)
      features[i * dim + j] = mean + gauss(rng);
  }
  return make_sample_set(dim, std::move(features), std::move(labels));
}

SampleSet load_csv(const std::string& path, const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open file");

  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.empty()) throw std::runtime_error(path + ": empty dataset");

  // A first row with any non-numeric cell is a header.
  bool has_header = false;
  for (const auto& cell : rows.front()) {
    double v;
    if (!parse_double(cell, v)) {
      has_header = true;
      break;
    }
  }

  const std::size_t n_cols = rows.front().size();
  if (n_cols < 2)
    throw std::runtime_error(path + ": need at least one feature column and "
                                    "one label column");

  std::size_t label_col = n_cols;
  if (has_header) {
    for (std::size_t j = 0; j < n_cols; ++j) {
      if (trim(rows.front()[j]) == label_column) {
        label_col = j;
        break;
      }
    }
  }
  if (label_col == n_cols) {
    // Fall back to a zero-based column index.
    char* end = nullptr;
    const long idx = std::strtol(label_column.c_str(), &end, 10);
    if (end != label_column.c_str() + label_column.size() || idx < 0 ||
        static_cast<std::size_t>(idx) >= n_cols)
      throw std::runtime_error(path + ": label column '" + label_column +
                               "' not found");
    label_col = static_cast<std::size_t>(idx);
  }

  const std::size_t first_data = has_header ? 1 : 0;
  if (rows.size() == first_data)
    throw std::runtime_error(path + ": empty dataset");

  const std::size_t dim = n_cols - 1;
  std::vector<double> features;
  std::vector<int> labels;
  features.reserve((rows.size() - first_data) * dim);
  for (std::size_t r = first_data; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    const std::string where = path + ":" + std::to_string(r + 1);
    if (cells.size() != n_cols)
      throw std::runtime_error(where + ": expected " +
                               std::to_string(n_cols) + " columns, got " +
                               std::to_string(cells.size()));
    for (std::size_t j = 0; j < n_cols; ++j) {
      double v;
      if (!parse_double(cells[j], v))
        throw std::runtime_error(where + ": missing or non-numeric value in "
                                         "column " + std::to_string(j));
      if (j == label_col) {
        if (v != 0.0 && v != 1.0)
          throw std::runtime_error(where + ": non-binary label " +
                                   trim(cells[j]));
        labels.push_back(static_cast<int>(v));
      } else {
        features.push_back(v);
      }
    }
  }
  try {
    return make_sample_set(dim, std::move(features), std::move(labels));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void minmax_scale(SampleSet& set) {
  for (std::size_t j = 0; j < set.dim; ++j) {
    double lo = set.features[j], hi = set.features[j];
    for (std::size_t i = 1; i < set.n; ++i) {
      const double v = set.features[i * set.dim + j];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi <= lo) continue;
    const double scale = 1.0 / (hi - lo);
    for (std::size_t i = 0; i < set.n; ++i) {
      double& v = set.features[i * set.dim + j];
      v = (v - lo) * scale;
    }
  }
}

std::vector<std::vector<std::size_t>> iter_batches(const SampleSet& set,
                                                   const BatchSpec& spec,
                                                   std::uint64_t epoch) {
  if (spec.batch_size == 0 || spec.batch_size > set.n)
    throw std::invalid_argument("batch_size must be in [1, n]");

  std::mt19937_64 rng(splitmix64(spec.shuffle_seed ^ splitmix64(epoch)));
  std::vector<std::size_t> order;
  order.reserve(set.n);

  if (!spec.stratified) {
    order.resize(set.n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
  } else {
    std::vector<std::size_t> pos = set.pos_idx;
    std::vector<std::size_t> neg = set.neg_idx;
    std::shuffle(pos.begin(), pos.end(), rng);
    std::shuffle(neg.begin(), neg.end(), rng);
    // Proportional interleave: position g takes a positive exactly when
    // the running positive quota increments. The rotation offset varies
    // per epoch so class positions move around.
    const std::size_t n = set.n, np = pos.size();
    const std::size_t rot = rng() % n;
    std::size_t ip = 0, in = 0;
    for (std::size_t g = 0; g < n; ++g) {
      const bool take_pos = ((g + 1) * np + rot) / n > (g * np + rot) / n;
      if (take_pos && ip < np)
        order.push_back(pos[ip++]);
      else if (in < neg.size())
        order.push_back(neg[in++]);
      else
        order.push_back(pos[ip++]);
    }
  }

  std::vector<std::vector<std::size_t>> slices;
  for (std::size_t start = 0; start < set.n; start += spec.batch_size) {
    const std::size_t stop = std::min(set.n, start + spec.batch_size);
    slices.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start),
                        order.begin() + static_cast<std::ptrdiff_t>(stop));
  }
  return slices;
}

}  // namespace paucopt
