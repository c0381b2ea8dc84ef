#include "kqi/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <thread>

#include "kqi/format.hpp"

namespace kqi {

LinearFit fit_linear(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) fail(Errc::invalid_argument, "fit_linear: length mismatch");
  const std::size_t n = xs.size();
  if (n < 3) fail(Errc::degenerate_input, "fit_linear needs at least 3 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) fail(Errc::degenerate_input, "fit_linear: all x values are equal");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < n; ++i) {
    double r = ys[i] - (f.slope * xs[i] + f.intercept);
    f.rss += r * r;
  }
  f.r2 = syy == 0.0 ? 1.0 : 1.0 - f.rss / syy;
  return f;
}

QuadFit fit_quadratic(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) fail(Errc::invalid_argument, "fit_quadratic: length mismatch");
  const std::size_t n = xs.size();
  if (n < 4) fail(Errc::degenerate_input, "fit_quadratic needs at least 4 points");
  // Normal equations for [x^2 x 1]; solved with Cramer's rule.
  double s0 = static_cast<double>(n), s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  double t0 = 0, t1 = 0, t2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = xs[i], y = ys[i];
    s1 += x;
    s2 += x * x;
    s3 += x * x * x;
    s4 += x * x * x * x;
    t0 += y;
    t1 += x * y;
    t2 += x * x * y;
  }
  auto det3 = [](double a, double b, double c, double d, double e, double f, double g, double h,
                 double i) { return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g); };
  double d = det3(s4, s3, s2, s3, s2, s1, s2, s1, s0);
  if (d == 0.0) fail(Errc::degenerate_input, "fit_quadratic: singular design");
  QuadFit q;
  q.a = det3(t2, s3, s2, t1, s2, s1, t0, s1, s0) / d;
  q.b = det3(s4, t2, s2, s3, t1, s1, s2, t0, s0) / d;
  q.c = det3(s4, s3, t2, s3, s2, t1, s2, s1, t0) / d;
  return q;
}

namespace {

struct YearStats {
  double total_kqi = 0.0;
  std::size_t nodes = 0;
  double mean_in = 0.0;
};

YearStats year_stats(const CitationGraph& g, long long year, std::optional<double> lambda) {
  CitationGraph snap = g.snapshot(year);
  YearStats st;
  st.nodes = snap.node_count();
  if (st.nodes == 0) return st;
  CitationGraph ga = snap.augment();
  if (lambda) ga = ga.decay(DecaySpec{*lambda, year});
  VolumeTable vt = compute_volumes(ga);
  KqiTable kt = kqi_all(ga, vt);
  st.total_kqi = kt.total;
  double refs = 0.0;
  for (uint32_t v = 0; v < ga.node_count(); ++v) {
    if (ga.is_super_root(v)) continue;
    refs += ga.in_strength_without_root(v);
  }
  st.mean_in = refs / static_cast<double>(st.nodes);
  return st;
}

}  // namespace

GrowthSeries growth_series(const CitationGraph& g, long long from_year, long long to_year,
                           std::optional<double> decay_lambda, int threads) {
  if (g.augmented()) fail(Errc::invalid_argument, "growth_series expects a raw graph");
  if (from_year > to_year) fail(Errc::invalid_argument, "growth_series: empty year range");
  const std::size_t count = static_cast<std::size_t>(to_year - from_year + 1);
  std::vector<YearStats> stats(count);
  auto run = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
      stats[i] = year_stats(g, from_year + static_cast<long long>(i), decay_lambda);
  };
  if (threads <= 1 || count < 2) {
    run(0, count);
  } else {
    std::size_t parts = std::min<std::size_t>(threads, count);
    std::vector<std::thread> pool;
    std::size_t chunk = (count + parts - 1) / parts;
    for (std::size_t p = 0; p < parts; ++p) {
      std::size_t lo = p * chunk, hi = std::min(count, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(run, lo, hi);
    }
    for (auto& t : pool) t.join();
  }
  GrowthSeries s;
  for (std::size_t i = 0; i < count; ++i) {
    s.years.push_back(from_year + static_cast<long long>(i));
    s.total_kqi.push_back(stats[i].total_kqi);
    s.node_count.push_back(stats[i].nodes);
    s.mean_in_strength.push_back(stats[i].mean_in);
  }
  return s;
}

BoomReport detect_boom(const GrowthSeries& s, double rss_critical, BoomScale scale,
                       bool use_increments) {
  const std::size_t n = s.years.size();
  if (n < 5) fail(Errc::too_few_points, "detect_boom needs at least 5 yearly points");
  std::vector<double> xs, ys;
  if (use_increments) {
    for (std::size_t i = 1; i < n; ++i) {
      xs.push_back(static_cast<double>(s.years[i]));
      ys.push_back(s.total_kqi[i] - s.total_kqi[i - 1]);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      xs.push_back(static_cast<double>(s.years[i]));
      ys.push_back(s.total_kqi[i]);
    }
  }
  if (scale == BoomScale::minmax100) {
    auto [lo_it, hi_it] = std::minmax_element(ys.begin(), ys.end());
    const double lo = *lo_it, span = *hi_it - *lo_it;
    for (double& y : ys) y = span == 0.0 ? 0.0 : (y - lo) / span * 100.0;
  }
  BoomReport rep;
  rep.rss_critical = rss_critical;
  rep.fit = fit_linear(xs, ys);
  rep.boomed = rep.fit.rss > rss_critical;
  std::size_t last = n - 1;
  double n_last = static_cast<double>(s.node_count[last]);
  rep.a = n_last >= 2.0 ? (s.mean_in_strength[last] - 1.0) / std::log(n_last)
                        : std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < n; ++i) {
    if (s.node_count[i] == 0) continue;
    double ln_n = std::log(static_cast<double>(s.node_count[i]));
    if (s.mean_in_strength[i] > rep.a * ln_n + 1.0) {
      rep.threshold_year = s.years[i];
      break;
    }
  }
  return rep;
}

ParetoReport pareto_split(const CitationGraph& g, const KqiTable& kt) {
  if (kt.node_count != g.node_count() || kt.total_weight != g.total_weight())
    fail(Errc::mismatched_table, "kqi table was computed from a different graph");
  std::vector<uint32_t> order;
  order.reserve(g.real_node_count());
  for (uint32_t v = 0; v < g.node_count(); ++v)
    if (!g.is_super_root(v)) order.push_back(v);
  if (order.empty()) fail(Errc::all_zero, "pareto_split: no nodes");
  std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    if (kt.kqi[a] != kt.kqi[b]) return kt.kqi[a] > kt.kqi[b];
    return a < b;  // index order is id order
  });
  double total = 0.0;
  for (uint32_t v : order) total += kt.kqi[v];
  if (total <= 0.0) fail(Errc::all_zero, "pareto_split: every node has zero KQI");
  ParetoReport rep;
  rep.curve.reserve(order.size() + 1);
  rep.curve.emplace_back(0.0, 0.0);
  double cum = 0.0;
  const double nn = static_cast<double>(order.size());
  bool found = false;
  for (std::size_t k = 0; k < order.size(); ++k) {
    cum += kt.kqi[order[k]];
    double frac = static_cast<double>(k + 1) / nn;
    double share = cum / total;
    rep.curve.emplace_back(frac, share);
    if (!found && share >= 1.0 - frac) {
      rep.p_star = frac;
      rep.share_at_p_star = share;
      found = true;
    }
  }
  return rep;
}

std::vector<double> pagerank(const CitationGraph& g, double damping, double tol, int max_iter,
                             PageRankDirection dir) {
  const std::size_t n = g.node_count();
  if (n == 0) fail(Errc::invalid_argument, "pagerank on an empty graph");
  if (!(damping >= 0.0 && damping < 1.0))
    fail(Errc::invalid_argument, "pagerank damping must lie in [0, 1)");
  // The walk follows citations.  citing_to_cited traverses stored edges
  // backwards (a paper hands rank to its references).
  auto walk_edges = [&](uint32_t v) {
    return dir == PageRankDirection::citing_to_cited ? g.in_edges(v) : g.out_edges(v);
  };
  auto walk_strength = [&](uint32_t v) {
    return dir == PageRankDirection::citing_to_cited ? g.in_strength(v) : g.out_strength(v);
  };
  std::vector<double> pr(n, 1.0 / static_cast<double>(n)), next(n);
  for (int iter = 0; iter < max_iter; ++iter) {
    double dangling = 0.0;
    for (uint32_t v = 0; v < n; ++v)
      if (walk_strength(v) <= 0.0) dangling += pr[v];
    double base = (1.0 - damping) / static_cast<double>(n) +
                  damping * dangling / static_cast<double>(n);
    std::fill(next.begin(), next.end(), base);
    for (uint32_t v = 0; v < n; ++v) {
      double s = walk_strength(v);
      if (s <= 0.0) continue;
      double share = damping * pr[v] / s;
      for (const Edge& e : walk_edges(v)) next[e.node] += share * e.weight;
    }
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) delta += std::abs(next[i] - pr[i]);
    pr.swap(next);
    if (delta < tol) return pr;
  }
  fail(Errc::nonconvergence, "pagerank failed to converge within iteration budget");
}

int h_index(std::span<const long long> citation_counts) {
  std::vector<long long> c(citation_counts.begin(), citation_counts.end());
  std::sort(c.begin(), c.end(), std::greater<>());
  int h = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] >= static_cast<long long>(i + 1))
      h = static_cast<int>(i + 1);
    else
      break;
  }
  return h;
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> rank(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
    i = j + 1;
  }
  return rank;
}

}  // namespace

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) fail(Errc::invalid_argument, "spearman: length mismatch");
  if (a.size() < 3) fail(Errc::degenerate_input, "spearman needs at least 3 pairs");
  auto ra = average_ranks(a);
  auto rb = average_ranks(b);
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= n;
  mb /= n;
  double cov = 0, va = 0, vb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cov += (ra[i] - ma) * (rb[i] - mb);
    va += (ra[i] - ma) * (ra[i] - ma);
    vb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (va == 0.0 || vb == 0.0)
    fail(Errc::degenerate_input, "spearman: constant input has no rank order");
  return cov / std::sqrt(va * vb);
}

double rank_correlation(const std::map<std::string, double>& a,
                        const std::map<std::string, double>& b) {
  if (a.size() != b.size())
    fail(Errc::key_mismatch, "rank_correlation: the two mappings differ in size");
  std::vector<double> va, vb;
  va.reserve(a.size());
  vb.reserve(b.size());
  auto ib = b.begin();
  for (auto ia = a.begin(); ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first)
      fail(Errc::key_mismatch, "rank_correlation: key sets differ at '" + ia->first + "'");
    va.push_back(ia->second);
    vb.push_back(ib->second);
  }
  return spearman(va, vb);
}

void export_series_csv(const GrowthSeries& s, std::ostream& out) {
  const bool approx = s.approx_kqi.size() == s.years.size() && !s.years.empty();
  out << (approx ? "year,total_kqi,approx_kqi,n,m\n" : "year,total_kqi,n,m\n");
  for (std::size_t i = 0; i < s.years.size(); ++i) {
    out << s.years[i] << ',' << format_double(s.total_kqi[i]) << ',';
    if (approx) out << format_double(s.approx_kqi[i]) << ',';
    out << s.node_count[i] << ',' << format_double(s.mean_in_strength[i]) << '\n';
  }
}

}  // namespace kqi
