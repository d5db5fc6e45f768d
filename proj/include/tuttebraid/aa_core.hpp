#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace tuttebraid {

/// Bijective 64-bit mixer; the basis of every seeded stream below.
std::uint64_t splitmix64(std::uint64_t x);
/// Independent seed for batch `index` of a run seeded with `seed`.
std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t index);
/// Counter-based uniform in [0, 1): draw `counter` of stream `seed`, independent of evaluation order.
double uniform01(std::uint64_t seed, std::uint64_t counter);
/// Counter-based uniform integer in [0, bound).
std::uint64_t uniform_below(std::uint64_t seed, std::uint64_t counter, std::uint64_t bound);

struct AAConfig {
  double epsilon = 0.2;
  double delta = 0.25;
  std::uint64_t seed = 0;
  void validate() const;
};

/// ⌈4/ε²⌉ + 1 samples per batch.
long batch_size(double epsilon);
/// max(1, ⌈8 ln(1/δ)⌉) batches, combined by the median.
long batch_count(double delta);
double median(std::vector<double> v);

struct AAResult {
  double estimate = 0;
  double u = 0;  // normalization
  double epsilon = 0, delta = 0;
  long samples_used = 0;
  long batch_size = 0, batches = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;
  bool within(double exact) const;  // |estimate − exact| ≤ ε·u
  nlohmann::json to_json() const;
};

/// Shortest decimal that round-trips the double.
std::string decimal(double v);

}  // namespace tuttebraid
