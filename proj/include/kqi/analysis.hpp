#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kqi/engine.hpp"
#include "kqi/graph.hpp"

namespace kqi {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rss = 0.0;
  double r2 = 1.0;
};

LinearFit fit_linear(std::span<const double> xs, std::span<const double> ys);

// Least-squares a*x^2 + b*x + c; used for curvature checks.
struct QuadFit {
  double a = 0.0, b = 0.0, c = 0.0;
};
QuadFit fit_quadratic(std::span<const double> xs, std::span<const double> ys);

struct GrowthSeries {
  std::vector<long long> years;
  std::vector<double> total_kqi;
  std::vector<std::size_t> node_count;
  std::vector<double> mean_in_strength;  // real references only
  std::vector<double> approx_kqi;        // continuum totals (simulated runs only)
};

// Snapshot the raw graph at each year in [from, to], augment (and optionally
// decay with the snapshot year as reference), and total the KQI.
GrowthSeries growth_series(const CitationGraph& g, long long from_year, long long to_year,
                           std::optional<double> decay_lambda = std::nullopt, int threads = 1);

enum class BoomScale { minmax100, none };

struct BoomReport {
  LinearFit fit;
  bool boomed = false;
  double rss_critical = 9.0;
  double a = 0.0;  // (m - 1) / ln(n) at the final year
  std::optional<long long> threshold_year;
};

BoomReport detect_boom(const GrowthSeries& s, double rss_critical = 9.0,
                       BoomScale scale = BoomScale::minmax100, bool use_increments = false);

struct ParetoReport {
  double p_star = 0.0;
  double share_at_p_star = 0.0;
  // (fraction of nodes, cumulative kqi share), from (0,0) to (1,1).
  std::vector<std::pair<double, double>> curve;
};

ParetoReport pareto_split(const CitationGraph& g, const KqiTable& kt);

enum class PageRankDirection { citing_to_cited, cited_to_citing };

// Power iteration with uniform teleport and dangling-mass redistribution;
// scores are indexed by node index and sum to 1.
std::vector<double> pagerank(const CitationGraph& g, double damping = 0.85, double tol = 1e-10,
                             int max_iter = 10000,
                             PageRankDirection dir = PageRankDirection::citing_to_cited);

int h_index(std::span<const long long> citation_counts);

// Spearman rank correlation with average ranks on ties.
double spearman(std::span<const double> a, std::span<const double> b);
double rank_correlation(const std::map<std::string, double>& a,
                        const std::map<std::string, double>& b);

void export_series_csv(const GrowthSeries& s, std::ostream& out);

}  // namespace kqi
