#include "tuttebraid/aa_core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "tuttebraid/errors.hpp"

namespace tuttebraid {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ (index * 0xD1B54A32D192ED03ULL + 1));
}

double uniform01(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t r = splitmix64(seed ^ splitmix64(counter));
  return static_cast<double>(r >> 11) * 0x1.0p-53;
}

std::uint64_t uniform_below(std::uint64_t seed, std::uint64_t counter, std::uint64_t bound) {
  // 128-bit multiply-shift; bias below 2^-64·bound, irrelevant at these sizes
  const std::uint64_t r = splitmix64(seed ^ splitmix64(counter));
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) * bound) >> 64);
}

void AAConfig::validate() const {
  require(epsilon > 0 && std::isfinite(epsilon), "epsilon must be positive");
  require(delta > 0 && delta < 0.5, "delta must lie in (0, 1/2)");
}

long batch_size(double epsilon) {
  require(epsilon > 0, "epsilon must be positive");
  // tolerance keeps 4/0.2² at 100, not 101 from rounding noise
  return static_cast<long>(std::ceil(4.0 / (epsilon * epsilon) - 1e-9)) + 1;
}

long batch_count(double delta) {
  require(delta > 0 && delta < 1, "delta must lie in (0, 1)");
  return std::max(1L, static_cast<long>(std::ceil(8.0 * std::log(1.0 / delta) - 1e-9)));
}

double median(std::vector<double> v) {
  require(!v.empty(), "median of an empty sample");
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

bool AAResult::within(double exact) const {
  return std::abs(estimate - exact) <= epsilon * u * (1 + 1e-12) + 1e-12;
}

std::string decimal(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

nlohmann::json AAResult::to_json() const {
  nlohmann::json j = {{"estimate", decimal(estimate)},
                      {"u", decimal(u)},
                      {"epsilon", decimal(epsilon)},
                      {"delta", decimal(delta)},
                      {"samples_used", samples_used},
                      {"batch_size", batch_size},
                      {"batches", batches},
                      {"seed", seed}};
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

}  // namespace tuttebraid
