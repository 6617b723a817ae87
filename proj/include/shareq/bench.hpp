// Scaling benchmark for the checker: transitions and wall time against input
// size, with a least-squares fit of transitions = c * (|N| + |E| + |Q|).

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shareq/checker.hpp"

namespace shareq {

enum class BenchFamily : std::uint8_t { SharedPower, RandomSharing };

struct BenchRow {
  std::uint32_t n = 0;
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;
  std::uint64_t query = 0;
  std::uint64_t transitions = 0;
  std::uint64_t max_query_edges = 0;
  std::uint64_t classes = 0;  // on success
  bool equal = false;
  double seconds = 0;  // median over repeated runs

  std::uint64_t input_size() const { return nodes + edges + query; }
};

struct BenchReport {
  std::vector<BenchRow> rows;
  double slope = 0;              // c in transitions ~ c * input_size
  double relative_residual = 0;  // ||t - c x|| / ||t||
  std::vector<double> time_ratios;        // consecutive rows
  std::vector<double> transition_ratios;  // consecutive rows
  double median_time_ratio = 0;
};

/// "2^10..2^20" (every power in between), "2^4", "100", or a comma list of
/// those. Throws std::invalid_argument.
std::vector<std::uint32_t> parse_sizes(std::string_view text);

/// Least-squares slope through the origin and its relative residual.
std::pair<double, double> fit_through_origin(std::span<const double> x, std::span<const double> y);

double median(std::vector<double> values);

/// Refuses (std::invalid_argument) graphs over 2^26 nodes. `min_seconds` is
/// the total time each size is repeated for before taking the median.
BenchReport run_bench(BenchFamily family, std::span<const std::uint32_t> sizes, Backend backend,
                      std::uint64_t seed, double min_seconds = 0.05);

std::string bench_text(const BenchReport& report);
std::string bench_json(const BenchReport& report);

}  // namespace shareq
