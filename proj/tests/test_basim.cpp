#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "kqi/basim.hpp"

using kqi::ArrivalSchedule;
using kqi::BaConfig;
using kqi::CitationGraph;
using kqi::Errc;
using kqi::Error;

namespace {

BaConfig custom_one_by_one(int n, int m, uint64_t seed = 42) {
  BaConfig cfg;
  cfg.m = m;
  cfg.seed = seed;
  cfg.steps = n;
  cfg.schedule.kind = ArrivalSchedule::Kind::custom;
  cfg.schedule.custom_counts.assign(n, 1);
  return cfg;
}

std::string dump_edges(const CitationGraph& g) {
  std::ostringstream out;
  g.save_edges(out);
  return out.str();
}

}  // namespace

TEST_CASE("schedule: cumulative counts hit the target exactly") {
  ArrivalSchedule std_s;
  std_s.kind = ArrivalSchedule::Kind::standard;
  std_s.target_nodes = 12345;
  int m = 3, T = 20;
  long long prev = 0;
  for (int t = 1; t <= T; ++t) {
    long long c = std_s.cumulative(t, T, m);
    CHECK(c >= prev);
    prev = c;
  }
  CHECK(std_s.cumulative(T, T, m) == 12345);

  ArrivalSchedule acc = std_s;
  acc.kind = ArrivalSchedule::Kind::accelerated;
  CHECK(acc.cumulative(T, T, m) == 12345);
  // Accelerated back-loads arrivals harder than standard.
  CHECK(acc.cumulative(T / 2, T, m) <= std_s.cumulative(T / 2, T, m));

  ArrivalSchedule dec = std_s;
  dec.kind = ArrivalSchedule::Kind::decelerated;
  CHECK(dec.cumulative(T, T, m) == 12345);
  CHECK(dec.cumulative(T / 2, T, m) >= std_s.cumulative(T / 2, T, m));

  ArrivalSchedule cus;
  cus.kind = ArrivalSchedule::Kind::custom;
  cus.custom_counts = {2, 0, 5};
  CHECK(cus.cumulative(1, 3, m) == 2);
  CHECK(cus.cumulative(2, 3, m) == 2);
  CHECK(cus.cumulative(3, 3, m) == 7);

  ArrivalSchedule bad;
  bad.kind = ArrivalSchedule::Kind::custom;
  bad.custom_counts = {1, -2};
  try {
    bad.cumulative(2, 2, m);
    FAIL("expected invalid argument");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_argument);
  }
}

TEST_CASE("generate: single arrival yields a single bare node") {
  auto g = kqi::generate_ba(custom_one_by_one(1, 3));
  CHECK(g.node_count() == 1);
  CHECK(g.edge_count() == 0);
  CHECK(g.year_of(0) == 1);
}

TEST_CASE("generate: edge count follows min(m, existing)") {
  int n = 50, m = 3;
  auto g = kqi::generate_ba(custom_one_by_one(n, m));
  size_t expect = 0;
  for (int i = 0; i < n; ++i) expect += std::min<size_t>(m, i);
  CHECK(g.edge_count() == expect);
  CHECK(g.node_count() == (size_t)n);
}

TEST_CASE("generate: deterministic per seed, sensitive to seed") {
  auto a1 = dump_edges(kqi::generate_ba(custom_one_by_one(200, 3, 7)));
  auto a2 = dump_edges(kqi::generate_ba(custom_one_by_one(200, 3, 7)));
  auto b = dump_edges(kqi::generate_ba(custom_one_by_one(200, 3, 8)));
  CHECK(a1 == a2);
  CHECK(a1 != b);
}

TEST_CASE("generate: edges run old to new, years equal arrival steps") {
  auto g = kqi::generate_ba(custom_one_by_one(120, 4, 11));
  for (uint32_t v = 0; v < g.node_count(); ++v) {
    auto yv = g.year_of(v);
    REQUIRE(yv.has_value());
    for (const auto& e : g.out_edges(v)) {
      CHECK(v < e.node);  // id order equals arrival order
      CHECK(*yv <= *g.year_of(e.node));
    }
  }
  // Zero-padded ids keep lexicographic order aligned with arrival order.
  for (uint32_t v = 1; v < g.node_count(); ++v) CHECK(g.id_of(v - 1) < g.id_of(v));
}

TEST_CASE("generate: batch arrivals may cite within their own step") {
  BaConfig cfg;
  cfg.m = 2;
  cfg.steps = 3;
  cfg.schedule.kind = ArrivalSchedule::Kind::custom;
  cfg.schedule.custom_counts = {3, 3, 3};
  auto g = kqi::generate_ba(cfg);
  CHECK(g.node_count() == 9);
  // 0 + 1 + 2 then min(2, existing) = 2 for the remaining six arrivals.
  CHECK(g.edge_count() == 15);
  for (uint32_t v = 0; v < g.node_count(); ++v)
    for (const auto& e : g.out_edges(v)) CHECK(*g.year_of(v) <= *g.year_of(e.node));
}

TEST_CASE("sampler: chi-square against degree-proportional masses") {
  // Frozen 50-node prefix: draw single targets many times and compare the
  // empirical histogram with the degree+1 distribution.
  auto g = kqi::generate_ba(custom_one_by_one(50, 3, 123));
  size_t n = g.node_count();
  kqi::PrefAttachSampler sampler(n);
  std::vector<long long> mass(n);
  for (uint32_t v = 0; v < n; ++v) {
    mass[v] = (long long)(g.out_degree(v) + g.in_degree(v)) + 1;
    sampler.push_node(mass[v]);
  }
  long long total = sampler.total_mass();
  std::mt19937_64 rng(99);
  const int draws = 200000;
  std::vector<long long> hits(n, 0);
  for (int i = 0; i < draws; ++i) {
    auto t = sampler.draw_distinct(rng, 1);
    REQUIRE(t.size() == 1);
    hits[t[0]]++;
  }
  double chi2 = 0.0;
  for (uint32_t v = 0; v < n; ++v) {
    double expect = (double)draws * (double)mass[v] / (double)total;
    double diff = (double)hits[v] - expect;
    chi2 += diff * diff / expect;
  }
  double dof = (double)n - 1.0;
  CHECK(chi2 < dof + 3.0 * std::sqrt(2.0 * dof));
}

TEST_CASE("sampler: distinct draws never repeat and restore mass") {
  kqi::PrefAttachSampler sampler(10);
  for (int i = 0; i < 10; ++i) sampler.push_node(i + 1);
  long long before = sampler.total_mass();
  std::mt19937_64 rng(1);
  for (int it = 0; it < 200; ++it) {
    auto picks = sampler.draw_distinct(rng, 4);
    REQUIRE(picks.size() == 4);
    auto sorted = picks;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  }
  CHECK(sampler.total_mass() == before);
}

TEST_CASE("generate: citation-count tail looks scale-free") {
  // Discrete MLE tail-exponent estimate over received citations.
  double alpha_sum = 0.0;
  int runs = 3;
  for (int s = 0; s < runs; ++s) {
    auto g = kqi::generate_ba(custom_one_by_one(10000, 5, 1000 + s));
    const double xmin = 10.0;
    double logsum = 0.0;
    int count = 0;
    for (uint32_t v = 0; v < g.node_count(); ++v) {
      double cites = (double)g.out_degree(v);
      if (cites >= xmin) {
        logsum += std::log(cites / (xmin - 0.5));
        count++;
      }
    }
    REQUIRE(count > 100);
    alpha_sum += 1.0 + count / logsum;
  }
  double alpha = alpha_sum / runs;
  CHECK(alpha >= 2.5);
  CHECK(alpha <= 3.5);
}

TEST_CASE("percolate: threshold two on a path spreads nowhere") {
  CitationGraph::Builder b;
  for (int i = 0; i + 1 < 9; ++i) b.edge(testutil::padded_id(i), testutil::padded_id(i + 1));
  auto g = std::move(b).build();
  kqi::ActivationConfig cfg;
  cfg.a = 2;
  cfg.seed_fraction = 0.1;  // one seed on nine nodes
  cfg.rng_seed = 5;
  auto res = kqi::bootstrap_percolation(g, cfg);
  CHECK(res.active_fraction == doctest::Approx(1.0 / 9.0));
  CHECK(res.rounds == 0);
}

TEST_CASE("percolate: threshold above max degree keeps only seeds") {
  auto g = kqi::generate_ba(custom_one_by_one(100, 2, 3));
  kqi::ActivationConfig cfg;
  cfg.a = 1000;
  cfg.seed_fraction = 0.25;
  auto res = kqi::bootstrap_percolation(g, cfg);
  CHECK(res.active_fraction == doctest::Approx(0.25));
  CHECK(res.rounds == 0);
}

TEST_CASE("percolate: dense graph floods from two seeds") {
  // Complete DAG: every node sees every other, so with a=1 the two seeded
  // nodes activate everyone in one synchronous round.
  CitationGraph::Builder b;
  for (int i = 0; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j) b.edge(testutil::padded_id(i), testutil::padded_id(j));
  auto g = std::move(b).build();
  kqi::ActivationConfig cfg;
  cfg.a = 1;
  cfg.seed_fraction = 0.15;  // two seeds on twelve nodes
  auto res = kqi::bootstrap_percolation(g, cfg);
  CHECK(res.active_fraction == 1.0);
  CHECK(res.rounds == 1);
}

TEST_CASE("percolate: seed count is the ceiling of fraction times n") {
  auto g = kqi::generate_ba(custom_one_by_one(10, 1, 2));
  kqi::ActivationConfig cfg;
  cfg.a = 1000;          // nothing spreads; active fraction == seed share
  cfg.seed_fraction = 0.01;
  auto res = kqi::bootstrap_percolation(g, cfg);
  CHECK(res.active_fraction == doctest::Approx(0.1));  // ceil(0.1) = 1 of 10
}

TEST_CASE("percolate: monotone in threshold and seed fraction") {
  auto g = kqi::generate_ba(custom_one_by_one(400, 4, 21));
  auto run = [&](int a, double f) {
    kqi::ActivationConfig cfg;
    cfg.a = a;
    cfg.seed_fraction = f;
    cfg.rng_seed = 77;
    return kqi::bootstrap_percolation(g, cfg).active_fraction;
  };
  CHECK(run(1, 0.05) >= run(2, 0.05));
  CHECK(run(2, 0.05) >= run(3, 0.05));
  CHECK(run(1, 0.10) >= run(1, 0.05));
  CHECK(run(1, 0.05) >= run(1, 0.02));
}

TEST_CASE("percolate: deterministic per seed") {
  auto g = kqi::generate_ba(custom_one_by_one(300, 3, 9));
  kqi::ActivationConfig cfg;
  cfg.a = 1;
  cfg.seed_fraction = 0.02;
  cfg.rng_seed = 31;
  auto r1 = kqi::bootstrap_percolation(g, cfg);
  auto r2 = kqi::bootstrap_percolation(g, cfg);
  CHECK(r1.active_fraction == r2.active_fraction);
  CHECK(r1.rounds == r2.rounds);
}

TEST_CASE("analytic: arrival point and large-m limit") {
  auto p = kqi::analytic_predictions(3, 1.0, 1000.0);
  CHECK(p.degree == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.volume == doctest::Approx(0.0).scale(1));
  CHECK(p.kqi_approx == doctest::Approx(0.0).scale(1));
  CHECK(p.contain_proportion == doctest::Approx(0.003).epsilon(1e-12));

  // Degree climbs toward r as m grows.
  double d10 = kqi::analytic_predictions(10, 2.0, 1e9).degree;
  double d100 = kqi::analytic_predictions(100, 2.0, 1e9).degree;
  CHECK(d10 < d100);
  CHECK(d100 < 2.0);
  CHECK(d100 == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("analytic: frozen high-precision degree value") {
  auto p = kqi::analytic_predictions(10, 1024.0, 1e12);
  CHECK(p.degree == doctest::Approx(std::pow(1024.0, 10.0 / 11.0)).epsilon(1e-12));
  CHECK(p.degree > 545.2);
  CHECK(p.degree < 545.4);
}

TEST_CASE("analytic: validity guard rejects out-of-model inputs") {
  try {
    kqi::analytic_predictions(3, 2.0, 1.0);  // W(t_i)=1 breaks the bound
    FAIL("expected validity guard");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::validity_guard);
  }
  CHECK(kqi::analytic_predictions(3, 2.0, 1000.0).contain_proportion > 0.0);
}

TEST_CASE("series: per-step totals grow and standard growth is near linear") {
  BaConfig cfg;
  cfg.m = 3;
  cfg.steps = 10;
  cfg.seed = 4;
  cfg.schedule.kind = ArrivalSchedule::Kind::standard;
  cfg.schedule.target_nodes = 3000;
  auto pts = kqi::kqi_time_series(cfg);
  REQUIRE(pts.size() == 10);
  for (size_t i = 1; i < pts.size(); ++i) {
    CHECK(pts[i].nodes >= pts[i - 1].nodes);
    CHECK(pts[i].total_kqi >= 0.0);
    CHECK(pts[i].approx_kqi >= pts[i - 1].approx_kqi);
  }
  CHECK(pts.back().nodes == 3000);
  CHECK(pts.back().total_kqi > pts.front().total_kqi);
  CHECK(pts.back().approx_kqi > 0.0);

  auto fit = kqi::total_kqi_growth_check(cfg);
  CHECK(fit.r2 >= 0.9);
}

TEST_CASE("series: continuum totals match the closed form on a forced prefix") {
  // Schedule {1,2,3} with m=2: the first three arrivals connect to everyone
  // older, so edge counts per step are 0, 3, 9 regardless of the RNG.
  BaConfig cfg;
  cfg.m = 2;
  cfg.steps = 3;
  cfg.schedule.kind = ArrivalSchedule::Kind::custom;
  cfg.schedule.custom_counts = {1, 2, 3};
  auto pts = kqi::kqi_time_series(cfg);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].approx_kqi == doctest::Approx(0.0).scale(1));  // no edges yet
  // Step 2: both arrivals share W(t_i)=3 and r=1, contributing nothing yet.
  CHECK(pts[1].approx_kqi == doctest::Approx(0.0).scale(1));
  // Step 3: the step-2 pair is seen at r = 9/3 = 3; V(r) = (4/4)(3^(4/3)-1).
  double v = std::pow(3.0, 4.0 / 3.0) - 1.0;
  CHECK(pts[2].approx_kqi == doctest::Approx(2.0 * v / 9.0).epsilon(1e-12));
}

TEST_CASE("series: W^(1/(m+1))/m is affine under the standard schedule") {
  BaConfig cfg;
  cfg.m = 3;
  cfg.steps = 12;
  cfg.seed = 6;
  cfg.schedule.kind = ArrivalSchedule::Kind::standard;
  cfg.schedule.target_nodes = 20000;
  auto pts = kqi::kqi_time_series(cfg);
  std::vector<double> xs, ys;
  for (const auto& p : pts) {
    if (p.nodes < 200) continue;  // skip the warm-up where rounding bites
    double w = p.mean_in_strength * (double)p.nodes;
    xs.push_back(p.step);
    ys.push_back(std::pow(w, 1.0 / (cfg.m + 1)) / cfg.m);
  }
  REQUIRE(xs.size() >= 5);
  auto fit = kqi::fit_linear(xs, ys);
  CHECK(fit.r2 >= 0.999);
}
