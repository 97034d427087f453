#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace paucopt {

struct PropertyResult {
  std::string name;
  std::size_t instances = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Runs every numerical certificate: the average-top-k identity, the
/// one-way and two-way closed-form/pairwise equivalences, the
/// constrained-reformulation and multiplier-sweep solves, the softplus
/// bias bound, loss monotonicity, gamma concavity and all gradient
/// checks. `only` filters by exact property name; empty runs all.
std::vector<PropertyResult> run_property_suite(std::uint64_t seed,
                                               const std::string& only = "");

/// Names accepted by `only`.
std::vector<std::string> property_names();

}  // namespace paucopt
