#include "shareq/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"
#include "shareq/generators.hpp"

namespace shareq {

namespace {

constexpr std::uint64_t kMaxNodes = std::uint64_t{1} << 26;
constexpr std::uint32_t kMaxRandomSize = 1u << 16;

std::uint32_t parse_one(std::string_view s) {
  auto number = [](std::string_view t) -> std::uint64_t {
    if (t.empty() || t.size() > 10) throw std::invalid_argument("bad size '" + std::string(t) + "'");
    std::uint64_t v = 0;
    for (char c : t) {
      if (c < '0' || c > '9') throw std::invalid_argument("bad size '" + std::string(t) + "'");
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
  };
  std::uint64_t v;
  if (s.starts_with("2^")) {
    const std::uint64_t e = number(s.substr(2));
    if (e > 31) throw std::invalid_argument("size exponent too large: " + std::string(s));
    v = std::uint64_t{1} << e;
  } else {
    v = number(s);
  }
  if (v > 0xffffffffu) throw std::invalid_argument("size too large: " + std::string(s));
  return static_cast<std::uint32_t>(v);
}

using Clock = std::chrono::steady_clock;

}  // namespace

std::vector<std::uint32_t> parse_sizes(std::string_view text) {
  std::vector<std::uint32_t> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (const auto dots = item.find(".."); dots != std::string_view::npos) {
      std::string_view lo = item.substr(0, dots);
      std::string_view hi = item.substr(dots + 2);
      if (!lo.starts_with("2^") || !hi.starts_with("2^"))
        throw std::invalid_argument("ranges must be powers of two, e.g. 2^10..2^20");
      const std::uint32_t a = parse_one(lo);
      const std::uint32_t b = parse_one(hi);
      if (a > b) throw std::invalid_argument("empty size range '" + std::string(item) + "'");
      for (std::uint64_t v = a; v <= b; v *= 2) out.push_back(static_cast<std::uint32_t>(v));
    } else {
      out.push_back(parse_one(item));
    }
  }
  if (out.empty()) throw std::invalid_argument("no sizes given");
  return out;
}

std::pair<double, double> fit_through_origin(std::span<const double> x, std::span<const double> y) {
  double xy = 0, xx = 0, yy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xy += x[i] * y[i];
    xx += x[i] * x[i];
    yy += y[i] * y[i];
  }
  if (xx == 0 || yy == 0) return {0, 0};
  const double c = xy / xx;
  double rss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) rss += (y[i] - c * x[i]) * (y[i] - c * x[i]);
  return {c, std::sqrt(rss / yy)};
}

double median(std::vector<double> values) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 ? values[m] : (values[m - 1] + values[m]) / 2;
}

BenchReport run_bench(BenchFamily family, std::span<const std::uint32_t> sizes, Backend backend, std::uint64_t seed,
                      double min_seconds) {
  for (std::uint32_t n : sizes) {
    if (family == BenchFamily::SharedPower && 2 * std::uint64_t{n} + 1 > kMaxNodes)
      throw std::invalid_argument("refusing size " + std::to_string(n) + ": graph would exceed 2^26 nodes");
    if (family == BenchFamily::RandomSharing && (n < 2 || n > kMaxRandomSize))
      throw std::invalid_argument("random-sharing sizes must lie in 2..2^16");
  }
  BenchReport report;
  for (std::uint32_t n : sizes) {
    GraphPair pair;
    if (family == BenchFamily::SharedPower) {
      pair = gen_shared_power_pair(n);
    } else {
      const SurfaceAst ast = gen_random_term(n, seed + n);
      GraphBuilder b;
      NodeId roots[2] = {compile_into(b, ast), compile_into(b, ast)};
      LamGraph tree = std::move(b).build();
      LamGraph shared = random_collapse(tree, roots, seed ^ n);
      pair = {std::move(shared), roots[0], roots[1]};
    }
    const Query q{{pair.first, pair.second}};

    BenchRow row;
    row.n = n;
    row.nodes = pair.graph.size();
    row.edges = pair.graph.edge_count();
    row.query = q.size();
    std::vector<double> times;
    double total = 0;
    do {
      const auto start = Clock::now();
      const SharingResult r = sharing_check(pair.graph, q, backend);
      const double dt = std::chrono::duration<double>(Clock::now() - start).count();
      times.push_back(dt);
      total += dt;
      row.transitions = r.stats.transitions;
      row.max_query_edges = r.stats.max_query_edges;
      row.equal = r.ok();
      row.classes = r.ok() ? r.partition.class_count() : 0;
    } while (total < min_seconds && times.size() < 1000);
    row.seconds = median(times);
    report.rows.push_back(row);
  }

  std::vector<double> x, y;
  for (const auto& r : report.rows) {
    x.push_back(static_cast<double>(r.input_size()));
    y.push_back(static_cast<double>(r.transitions));
  }
  std::tie(report.slope, report.relative_residual) = fit_through_origin(x, y);
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const auto& a = report.rows[i - 1];
    const auto& b = report.rows[i];
    report.time_ratios.push_back(a.seconds > 0 ? b.seconds / a.seconds : 0);
    report.transition_ratios.push_back(
        a.transitions > 0 ? static_cast<double>(b.transitions) / static_cast<double>(a.transitions) : 0);
  }
  report.median_time_ratio = median(report.time_ratios);
  return report;
}

std::string bench_text(const BenchReport& report) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%10s %10s %10s %4s %12s %12s %8s %8s\n", "n", "nodes", "edges", "|Q|",
                "transitions", "seconds", "t-ratio", "x-ratio");
  out += line;
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    char tr[16] = "-", xr[16] = "-";
    if (i > 0) {
      std::snprintf(tr, sizeof tr, "%.3f", report.time_ratios[i - 1]);
      std::snprintf(xr, sizeof xr, "%.3f", report.transition_ratios[i - 1]);
    }
    std::snprintf(line, sizeof line, "%10u %10llu %10llu %4llu %12llu %12.6f %8s %8s\n", r.n,
                  static_cast<unsigned long long>(r.nodes), static_cast<unsigned long long>(r.edges),
                  static_cast<unsigned long long>(r.query), static_cast<unsigned long long>(r.transitions), r.seconds,
                  tr, xr);
    out += line;
  }
  std::snprintf(line, sizeof line, "fit: transitions = %.4f * (|N|+|E|+|Q|), relative residual %.3e\n", report.slope,
                report.relative_residual);
  out += line;
  std::snprintf(line, sizeof line, "median time doubling ratio: %.3f\n", report.median_time_ratio);
  out += line;
  return out;
}

std::string bench_json(const BenchReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"n", r.n},
                    {"nodes", r.nodes},
                    {"edges", r.edges},
                    {"query", r.query},
                    {"transitions", r.transitions},
                    {"max_query_edges", r.max_query_edges},
                    {"classes", r.classes},
                    {"equal", r.equal},
                    {"seconds", r.seconds}});
  }
  nlohmann::json doc{{"rows", rows},
                     {"slope", report.slope},
                     {"relative_residual", report.relative_residual},
                     {"time_ratios", report.time_ratios},
                     {"transition_ratios", report.transition_ratios},
                     {"median_time_ratio", report.median_time_ratio}};
  return doc.dump() + "\n";
}

}  // namespace shareq
