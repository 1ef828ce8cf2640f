#pragma once

#include <map>
#include <string>
#include <vector>

#include "depuse/usage.hpp"

namespace depuse {

// Corpus-level statistics over a set of usage reports.
struct corpus_stats {
  struct artifact_row {
    coordinate coord;
    std::map<std::string, double> label_ratios;  // six short labels
    int total = 0;
    int transitive_total = 0;  // ut + bt
    int bt_count = 0;
    int tree_height = 0;
    double transitive_ratio = 0.0;
    double bloat_ratio = 0.0;
    bool multi_module = false;
  };

  std::map<std::string, long> global_counts;
  std::map<std::string, double> global_ratios;
  std::vector<artifact_row> per_artifact;
};

corpus_stats aggregate(const std::vector<usage_report>& reports);

// Spearman's rank correlation with average ranks for ties. Throws
// length_mismatch for uneven inputs and degenerate_input when either vector
// carries no rank variation (the coefficient is undefined, not zero).
double spearman_rho(const std::vector<double>& x, const std::vector<double>& y);

// One row of the height table: artifacts whose tree has this height, plus a
// five-number summary of their bloated-transitive ratios. Artifacts with no
// transitive dependencies count toward the bucket but contribute no ratio
// sample.
struct height_bucket {
  std::string label;
  int artifact_count = 0;
  int sample_count = 0;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

std::vector<height_bucket> height_vs_bloat(const corpus_stats& stats, int cap = 10);

std::string stats_csv(const corpus_stats& stats);

}  // namespace depuse
