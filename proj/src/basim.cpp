#include "kqi/basim.hpp"

#include <algorithm>
#include <cmath>

#include "kqi/engine.hpp"

namespace kqi {

long long ArrivalSchedule::cumulative(int t, int steps, int m) const {
  if (t <= 0) return 0;
  if (t > steps) t = steps;
  if (kind == Kind::custom) {
    if (custom_counts.size() != static_cast<std::size_t>(steps))
      fail(Errc::invalid_argument, "custom schedule length must equal steps");
    long long sum = 0;
    for (int i = 0; i < t; ++i) {
      if (custom_counts[i] < 0) fail(Errc::invalid_argument, "negative arrival count");
      sum += custom_counts[i];
    }
    return sum;
  }
  if (target_nodes < 1) fail(Errc::invalid_argument, "schedule target_nodes must be >= 1");
  double p = 1.0;
  switch (kind) {
    case Kind::standard: p = static_cast<double>(m + 1); break;
    case Kind::accelerated: p = static_cast<double>(m + 3); break;
    case Kind::decelerated: p = 1.0; break;
    case Kind::custom: break;
  }
  double frac = std::pow(static_cast<double>(t) / static_cast<double>(steps), p);
  return std::llround(static_cast<double>(target_nodes) * frac);
}

PrefAttachSampler::PrefAttachSampler(std::size_t capacity) {
  tree_.reserve(capacity + 1);
  mass_.reserve(capacity);
  tree_.push_back(0);
}

void PrefAttachSampler::push_node(long long mass) {
  // Standard Fenwick append: seed the new slot with the prefix it covers.
  std::size_t i = ++size_;
  long long v = mass;
  std::size_t lsb = i & (~i + 1);
  for (std::size_t j = i - 1; j > i - lsb; j -= j & (~j + 1)) v += tree_[j];
  tree_.push_back(v);
  mass_.push_back(mass);
  total_ += mass;
}

void PrefAttachSampler::add_mass(std::size_t i, long long delta) {
  mass_[i] += delta;
  total_ += delta;
  for (std::size_t j = i + 1; j <= size_; j += j & (~j + 1)) tree_[j] += delta;
}

std::size_t PrefAttachSampler::find_prefix(long long r) const {
  // Largest power-of-two descent: returns the first index whose prefix sum
  // exceeds r.
  std::size_t pos = 0;
  std::size_t mask = 1;
  while ((mask << 1) <= size_) mask <<= 1;
  for (; mask; mask >>= 1) {
    std::size_t nxt = pos + mask;
    if (nxt <= size_ && tree_[nxt] <= r) {
      pos = nxt;
      r -= tree_[nxt];
    }
  }
  return pos;  // 0-based node index
}

std::vector<uint32_t> PrefAttachSampler::draw_distinct(std::mt19937_64& rng, std::size_t k) {
  k = std::min(k, size_);
  std::vector<uint32_t> out;
  out.reserve(k);
  std::vector<long long> removed;
  removed.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    if (total_ <= 0) break;
    // Widening multiply keeps the draw unbiased enough and portable.
    unsigned __int128 wide = static_cast<unsigned __int128>(rng()) *
                             static_cast<unsigned __int128>(total_);
    long long r = static_cast<long long>(wide >> 64);
    std::size_t idx = find_prefix(r);
    out.push_back(static_cast<uint32_t>(idx));
    removed.push_back(mass_[idx]);
    add_mass(idx, -mass_[idx]);  // exclude from the remaining draws
  }
  for (std::size_t j = 0; j < out.size(); ++j) add_mass(out[j], removed[j]);
  return out;
}

namespace {

std::string arrival_id(std::size_t index, int width) {
  std::string digits = std::to_string(index + 1);
  std::string id = "n";
  id.append(static_cast<std::size_t>(width) - digits.size(), '0');
  id += digits;
  return id;
}

int id_width(long long total) {
  int w = 1;
  while (total >= 10) {
    total /= 10;
    ++w;
  }
  return w;
}

struct RawBa {
  std::vector<CitationGraph::IndexedNode> nodes;       // arrival order == id order
  std::vector<CitationGraph::IndexedEdge> edges;       // target -> newcomer
  std::vector<std::size_t> edges_after_step;           // prefix edge counts
  std::vector<std::size_t> nodes_after_step;
};

RawBa run_ba(const BaConfig& cfg) {
  if (cfg.m < 1) fail(Errc::invalid_argument, "m must be >= 1");
  if (cfg.steps < 1) fail(Errc::invalid_argument, "steps must be >= 1");
  const long long total = cfg.schedule.cumulative(cfg.steps, cfg.steps, cfg.m);
  if (total < 1) fail(Errc::invalid_argument, "schedule produces no nodes");

  RawBa raw;
  raw.nodes.reserve(static_cast<std::size_t>(total));
  raw.edges.reserve(static_cast<std::size_t>(total) * static_cast<std::size_t>(cfg.m));
  std::mt19937_64 rng(cfg.seed);
  PrefAttachSampler sampler(static_cast<std::size_t>(total));
  const int width = id_width(total);

  long long emitted = 0;
  for (int t = 1; t <= cfg.steps; ++t) {
    long long goal = cfg.schedule.cumulative(t, cfg.steps, cfg.m);
    for (; emitted < goal; ++emitted) {
      std::size_t idx = raw.nodes.size();
      raw.nodes.push_back({arrival_id(idx, width), t});
      std::size_t k = std::min<std::size_t>(cfg.m, idx);
      std::vector<uint32_t> targets;
      if (idx > 0 && idx <= static_cast<std::size_t>(cfg.m)) {
        targets.resize(idx);
        for (std::size_t i = 0; i < idx; ++i) targets[i] = static_cast<uint32_t>(i);
      } else if (k > 0) {
        targets = sampler.draw_distinct(rng, k);
        std::sort(targets.begin(), targets.end());
      }
      for (uint32_t u : targets) {
        raw.edges.push_back({u, static_cast<uint32_t>(idx), 1.0});
        sampler.add_mass(u, 1);
      }
      sampler.push_node(static_cast<long long>(targets.size()) + 1);
    }
    raw.nodes_after_step.push_back(raw.nodes.size());
    raw.edges_after_step.push_back(raw.edges.size());
  }
  return raw;
}

}  // namespace

CitationGraph generate_ba(const BaConfig& cfg) {
  RawBa raw = run_ba(cfg);
  return CitationGraph::assemble(std::move(raw.nodes), std::move(raw.edges));
}

PercolationResult bootstrap_percolation(const CitationGraph& g, const ActivationConfig& cfg) {
  const std::size_t n = g.node_count();
  if (n == 0) fail(Errc::invalid_argument, "percolation on an empty graph");
  if (cfg.a < 1) fail(Errc::invalid_argument, "activation requirement a must be >= 1");
  if (!(cfg.seed_fraction > 0.0 && cfg.seed_fraction <= 1.0))
    fail(Errc::invalid_argument, "seed fraction must lie in (0, 1]");

  std::size_t seeds = static_cast<std::size_t>(
      std::ceil(cfg.seed_fraction * static_cast<double>(n)));
  seeds = std::min(std::max<std::size_t>(seeds, 1), n);

  // Partial Fisher-Yates keeps seed choice portable across libraries.
  std::mt19937_64 rng(cfg.rng_seed);
  std::vector<uint32_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<uint32_t>(i);
  for (std::size_t i = 0; i < seeds; ++i) {
    unsigned __int128 wide =
        static_cast<unsigned __int128>(rng()) * static_cast<unsigned __int128>(n - i);
    std::size_t j = i + static_cast<std::size_t>(wide >> 64);
    std::swap(perm[i], perm[j]);
  }

  std::vector<uint8_t> active(n, 0);
  std::vector<uint32_t> frontier(perm.begin(), perm.begin() + seeds);
  for (uint32_t v : frontier) active[v] = 1;
  std::vector<long long> hot(n, 0);  // active-neighbor counts
  std::size_t active_count = seeds;
  int rounds = 0;

  while (!frontier.empty()) {
    for (uint32_t v : frontier) {
      for (const Edge& e : g.out_edges(v)) ++hot[e.node];
      for (const Edge& e : g.in_edges(v)) ++hot[e.node];
    }
    std::vector<uint32_t> next;
    for (uint32_t v : frontier) {
      for (const Edge& e : g.out_edges(v)) {
        if (!active[e.node] && hot[e.node] >= cfg.a) {
          active[e.node] = 1;
          next.push_back(e.node);
        }
      }
      for (const Edge& e : g.in_edges(v)) {
        if (!active[e.node] && hot[e.node] >= cfg.a) {
          active[e.node] = 1;
          next.push_back(e.node);
        }
      }
    }
    if (!next.empty()) ++rounds;
    active_count += next.size();
    frontier.swap(next);
  }

  PercolationResult res;
  res.active_fraction = static_cast<double>(active_count) / static_cast<double>(n);
  res.rounds = rounds;
  return res;
}

AnalyticPrediction analytic_predictions(int m, double r, double w_ti) {
  if (m < 1) fail(Errc::invalid_argument, "m must be >= 1");
  if (!(r >= 1.0)) fail(Errc::invalid_argument, "growth factor r must be >= 1");
  if (!(w_ti > 0.0)) fail(Errc::invalid_argument, "W(t_i) must be positive");
  const double md = static_cast<double>(m);
  AnalyticPrediction p;
  p.degree = std::pow(r, md / (md + 1.0));
  // The containment estimate only holds while W(t) stays below
  // W(t_i)^(m+2) / m^(m+1).
  double bound = std::pow(w_ti, md + 2.0) / std::pow(md, md + 1.0);
  if (!(r * w_ti < bound))
    fail(Errc::validity_guard, "contain proportion invalid: W(t) exceeds W(t_i)^(m+2)/m^(m+1)");
  p.contain_proportion = (md / w_ti) * std::pow(r, 1.0 / (md + 1.0));
  p.volume = (md * md / (md + 2.0)) * (std::pow(r, (md + 2.0) / (md + 1.0)) - 1.0);
  p.kqi_approx = p.volume / (r * w_ti);
  return p;
}

namespace {

// Continuum volume of a node observed while the graph weight grew by factor r
// since its arrival step.
double continuum_volume(int m, double r) {
  const double md = static_cast<double>(m);
  return (md * md / (md + 2.0)) * (std::pow(r, (md + 2.0) / (md + 1.0)) - 1.0);
}

}  // namespace

std::vector<BaSeriesPoint> kqi_time_series(const BaConfig& cfg) {
  RawBa raw = run_ba(cfg);
  std::vector<BaSeriesPoint> series;
  series.reserve(static_cast<std::size_t>(cfg.steps));
  for (int t = 1; t <= cfg.steps; ++t) {
    std::size_t nn = raw.nodes_after_step[static_cast<std::size_t>(t) - 1];
    std::size_t ne = raw.edges_after_step[static_cast<std::size_t>(t) - 1];
    BaSeriesPoint pt;
    pt.step = t;
    pt.nodes = nn;
    if (nn > 0) {
      std::vector<CitationGraph::IndexedNode> nodes(raw.nodes.begin(),
                                                    raw.nodes.begin() + nn);
      std::vector<CitationGraph::IndexedEdge> edges(raw.edges.begin(),
                                                    raw.edges.begin() + ne);
      CitationGraph g = CitationGraph::assemble(std::move(nodes), std::move(edges));
      CitationGraph ga = g.augment();
      VolumeTable vt = compute_volumes(ga);
      KqiTable kt = kqi_all(ga, vt);
      pt.total_kqi = kt.total;
      pt.mean_in_strength = static_cast<double>(ne) / static_cast<double>(nn);
      // Continuum total: every arrival of step s shares W(t_i) = W(end of s);
      // steps that predate the first edge contribute nothing.
      if (ne > 0) {
        const double wt = static_cast<double>(ne);
        double sum = 0.0;
        std::size_t prev = 0;
        for (int s = 1; s <= t; ++s) {
          std::size_t ns = raw.nodes_after_step[static_cast<std::size_t>(s) - 1];
          std::size_t ws = raw.edges_after_step[static_cast<std::size_t>(s) - 1];
          if (ws > 0 && ns > prev) {
            double r = wt / static_cast<double>(ws);
            sum += static_cast<double>(ns - prev) * continuum_volume(cfg.m, r);
          }
          prev = ns;
        }
        pt.approx_kqi = sum / wt;
      }
    }
    series.push_back(pt);
  }
  return series;
}

LinearFit total_kqi_growth_check(const BaConfig& cfg) {
  if (cfg.schedule.kind != ArrivalSchedule::Kind::standard)
    fail(Errc::invalid_argument, "growth check applies to the standard schedule");
  auto series = kqi_time_series(cfg);
  std::vector<double> xs, ys;
  for (const auto& pt : series) {
    xs.push_back(static_cast<double>(pt.step));
    ys.push_back(pt.approx_kqi);
  }
  return fit_linear(xs, ys);
}

}  // namespace kqi
