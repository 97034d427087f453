#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>

#include <stdexcept>

#include <doctest.h>

#include "paucopt/dataio.hpp"

using namespace paucopt;

namespace {

std::string write_temp_csv(const std::string& name, const std::string& body) {
  const auto path =
      (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path);
  out << body;
  return path;
}

std::vector<std::size_t> flatten(
    const std::vector<std::vector<std::size_t>>& slices) {
  std::vector<std::size_t> all;
  for (const auto& s : slices) all.insert(all.end(), s.begin(), s.end());
  return all;
}

}  // namespace

TEST_CASE("synthetic generation: prior, shapes, determinism") {
  const auto set = generate_synthetic(50, 950, 2, 2.0, 7);
  CHECK(set.n == 1000);
  CHECK(set.dim == 2);
  CHECK(set.prior_p == 0.05);  // 50/1000 is exact
  CHECK(set.pos_idx.size() == 50);
  CHECK(set.neg_idx.size() == 950);

  const auto again = generate_synthetic(50, 950, 2, 2.0, 7);
  CHECK(set.features == again.features);  // bit-identical
  CHECK(set.labels == again.labels);

  const auto other = generate_synthetic(50, 950, 2, 2.0, 8);
  CHECK(set.features != other.features);
}

TEST_CASE("synthetic generation: degenerate and invalid arguments") {
  const auto tiny = generate_synthetic(1, 1, 1, 0.0, 0);
  CHECK(tiny.n == 2);
  CHECK(tiny.prior_p == 0.5);
  CHECK_THROWS_AS(generate_synthetic(0, 10, 2, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(generate_synthetic(10, 0, 2, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(generate_synthetic(1, 1, 0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(generate_synthetic(1, 1, 1, -1.0, 0),
                  std::invalid_argument);
}

TEST_CASE("csv loading by name and by index") {
  const auto path = write_temp_csv(
      "paucopt_ok.csv", "x1,x2,label\n0.5,1.0,1\n0.1,-2.0,0\n3.5,0.0,0\n");
  const auto set = load_csv(path, "label");
  CHECK(set.n == 3);
  CHECK(set.dim == 2);
  CHECK(set.prior_p == doctest::Approx(1.0 / 3.0));
  CHECK(set.labels == std::vector<int>{1, 0, 0});
  CHECK(set.row(2)[0] == 3.5);

  const auto by_index = load_csv(path, "2");
  CHECK(by_index.labels == set.labels);
  CHECK(by_index.features == set.features);
}

TEST_CASE("csv loading error paths") {
  const auto all_pos =
      write_temp_csv("paucopt_allpos.csv", "a,label\n1.0,1\n2.0,1\n");
  CHECK_THROWS_WITH_AS(load_csv(all_pos, "label"),
                       doctest::Contains("no negative instances"),
                       std::runtime_error);

  const auto header_only = write_temp_csv("paucopt_empty.csv", "a,label\n");
  CHECK_THROWS_WITH_AS(load_csv(header_only, "label"),
                       doctest::Contains("empty dataset"), std::runtime_error);

  const auto bad_label =
      write_temp_csv("paucopt_badlabel.csv", "a,label\n1.0,1\n2.0,3\n");
  CHECK_THROWS_WITH_AS(load_csv(bad_label, "label"),
                       doctest::Contains(":3"), std::runtime_error);

  const auto missing =
      write_temp_csv("paucopt_missing.csv", "a,b,label\n1.0,,1\n2.0,1.0,0\n");
  CHECK_THROWS_AS(load_csv(missing, "label"), std::runtime_error);

  CHECK_THROWS_AS(load_csv("/nonexistent/path.csv", "label"),
                  std::runtime_error);
  CHECK_THROWS_WITH_AS(load_csv(all_pos, "nosuchcol"),
                       doctest::Contains("not found"), std::runtime_error);
}

TEST_CASE("batch iteration covers every index exactly once") {
  const auto set = generate_synthetic(3, 7, 2, 1.0, 3);
  BatchSpec spec{4, 11, false};
  const auto slices = iter_batches(set, spec, 0);
  REQUIRE(slices.size() == 3);
  CHECK(slices[0].size() == 4);
  CHECK(slices[1].size() == 4);
  CHECK(slices[2].size() == 2);

  auto all = flatten(slices);
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> expect(10);
  std::iota(expect.begin(), expect.end(), std::size_t{0});
  CHECK(all == expect);

  for (const bool stratified : {false, true}) {
    BatchSpec s2{3, 99, stratified};
    for (std::uint64_t epoch = 0; epoch < 4; ++epoch) {
      auto cover = flatten(iter_batches(set, s2, epoch));
      std::sort(cover.begin(), cover.end());
      CHECK(cover == expect);
    }
  }
}

TEST_CASE("batch iteration determinism in (seed, epoch)") {
  const auto set = generate_synthetic(5, 20, 3, 1.0, 1);
  BatchSpec spec{8, 42, true};
  CHECK(iter_batches(set, spec, 3) == iter_batches(set, spec, 3));
  CHECK(iter_batches(set, spec, 3) != iter_batches(set, spec, 4));
}

TEST_CASE("stratified batches carry both classes when feasible") {
  const auto set = generate_synthetic(50, 950, 2, 1.0, 5);
  BatchSpec spec{128, 7, true};
  for (std::uint64_t epoch = 0; epoch < 3; ++epoch) {
    for (const auto& slice : iter_batches(set, spec, epoch)) {
      int pos = 0, neg = 0;
      for (auto i : slice) (set.labels[i] ? pos : neg)++;
      CHECK(pos >= 1);
      CHECK(neg >= 1);
    }
  }
}

TEST_CASE("stratified with a single positive puts it in exactly one batch") {
  const auto set = generate_synthetic(1, 14, 1, 0.5, 2);
  BatchSpec spec{5, 1, true};
  const auto slices = iter_batches(set, spec, 0);
  int batches_with_pos = 0;
  for (const auto& slice : slices) {
    int pos = 0;
    for (auto i : slice) pos += set.labels[i];
    if (pos > 0) ++batches_with_pos;
    CHECK(pos <= 1);
  }
  CHECK(batches_with_pos == 1);
}

TEST_CASE("batch size bounds") {
  const auto set = generate_synthetic(2, 2, 1, 1.0, 0);
  CHECK_THROWS_AS(iter_batches(set, BatchSpec{0, 0, false}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(iter_batches(set, BatchSpec{5, 0, false}, 0),
                  std::invalid_argument);
  CHECK(iter_batches(set, BatchSpec{4, 0, false}, 0).size() == 1);
}

TEST_CASE("min-max scaling maps columns into [0,1]") {
  auto set = generate_synthetic(10, 10, 3, 2.0, 9);
  minmax_scale(set);
  for (std::size_t j = 0; j < set.dim; ++j) {
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < set.n; ++i) {
      lo = std::min(lo, set.features[i * set.dim + j]);
      hi = std::max(hi, set.features[i * set.dim + j]);
    }
    CHECK(lo == doctest::Approx(0.0));
    CHECK(hi == doctest::Approx(1.0));
  }
}
