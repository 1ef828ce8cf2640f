#include "depuse/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

namespace depuse {

namespace {

constexpr std::array<const char*, 6> kLabels = {"ud", "ui", "ut", "bd", "bi", "bt"};

int count_of(const usage_report& report, const char* label) {
  auto it = report.counts.find(label);
  return it == report.counts.end() ? 0 : it->second;
}

}  // namespace

corpus_stats aggregate(const std::vector<usage_report>& reports) {
  corpus_stats stats;
  for (const char* label : kLabels) stats.global_counts[label] = 0;

  for (const usage_report& report : reports) {
    corpus_stats::artifact_row row;
    row.coord = report.root;
    row.tree_height = report.tree_height;
    row.multi_module = report.multi_module;
    for (const char* label : kLabels) {
      int n = count_of(report, label);
      stats.global_counts[label] += n;
      row.total += n;
    }
    row.transitive_total = count_of(report, "ut") + count_of(report, "bt");
    row.bt_count = count_of(report, "bt");
    for (const char* label : kLabels) {
      row.label_ratios[label] =
          row.total > 0 ? static_cast<double>(count_of(report, label)) / row.total : 0.0;
    }
    if (row.total > 0) {
      row.transitive_ratio = static_cast<double>(row.transitive_total) / row.total;
      int bloated = count_of(report, "bd") + count_of(report, "bi") + count_of(report, "bt");
      row.bloat_ratio = static_cast<double>(bloated) / row.total;
    }
    stats.per_artifact.push_back(std::move(row));
  }

  long total = 0;
  for (const auto& [label, n] : stats.global_counts) total += n;
  for (const char* label : kLabels) {
    stats.global_ratios[label] =
        total > 0 ? static_cast<double>(stats.global_counts[label]) / total : 0.0;
  }
  return stats;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw error(errc::length_mismatch, "rank correlation inputs differ in length");
  }
  if (x.size() < 2) {
    throw error(errc::degenerate_input, "rank correlation needs at least two observations");
  }

  std::vector<double> rx = average_ranks(x);
  std::vector<double> ry = average_ranks(y);
  double n = static_cast<double>(rx.size());
  double mean = (n + 1.0) / 2.0;  // ranks always average to (n+1)/2

  double cov = 0.0, var_x = 0.0, var_y = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    double dx = rx[i] - mean;
    double dy = ry[i] - mean;
    cov += dx * dy;
    var_x += dx * dx;
    var_y += dy * dy;
  }
  if (var_x == 0.0 || var_y == 0.0) {
    throw error(errc::degenerate_input,
                "rank correlation is undefined when a vector has no variation");
  }
  return cov / std::sqrt(var_x * var_y);
}

namespace {

double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.size() == 1) return sorted.front();
  double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  std::size_t lo = static_cast<std::size_t>(h);
  double frac = h - static_cast<double>(lo);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (sorted[lo + 1] - sorted[lo]) * frac;
}

}  // namespace

std::vector<height_bucket> height_vs_bloat(const corpus_stats& stats, int cap) {
  std::vector<height_bucket> buckets(static_cast<std::size_t>(cap));
  for (int h = 1; h < cap; ++h) buckets[h - 1].label = std::to_string(h);
  buckets[cap - 1].label = ">=" + std::to_string(cap);

  std::vector<std::vector<double>> samples(static_cast<std::size_t>(cap));
  for (const auto& row : stats.per_artifact) {
    if (row.total < 1) continue;
    int slot = std::min(row.tree_height, cap) - 1;
    if (slot < 0) continue;
    ++buckets[slot].artifact_count;
    if (row.transitive_total > 0) {
      samples[slot].push_back(static_cast<double>(row.bt_count) / row.transitive_total);
    }
  }

  for (int i = 0; i < cap; ++i) {
    auto& sample = samples[i];
    auto& bucket = buckets[i];
    bucket.sample_count = static_cast<int>(sample.size());
    if (sample.empty()) continue;
    std::sort(sample.begin(), sample.end());
    bucket.min = sample.front();
    bucket.q1 = quantile(sample, 0.25);
    bucket.median = quantile(sample, 0.5);
    bucket.q3 = quantile(sample, 0.75);
    bucket.max = sample.back();
  }
  return buckets;
}

std::string stats_csv(const corpus_stats& stats) {
  std::ostringstream out;
  out << "coordinate,ud,ui,ut,bd,bi,bt,height,transitive_ratio,bloat_ratio,multimodule\n";
  out.precision(6);
  out << std::fixed;
  for (const auto& row : stats.per_artifact) {
    out << row.coord.str();
    for (const char* label : kLabels) out << "," << row.label_ratios.at(label);
    out << "," << row.tree_height << "," << row.transitive_ratio << "," << row.bloat_ratio << ","
        << (row.multi_module ? "true" : "false") << "\n";
  }
  return out.str();
}

}  // namespace depuse
