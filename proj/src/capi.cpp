#include "kqi.h"

#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "kqi/analysis.hpp"
#include "kqi/basim.hpp"
#include "kqi/engine.hpp"
#include "kqi/format.hpp"
#include "kqi/graph.hpp"
#include "kqi/vein.hpp"

using kqi::CitationGraph;
using kqi::Errc;

struct kqi_graph {
  std::shared_ptr<const CitationGraph> g;
  std::vector<uint32_t> real;  // real node indices, ascending id
};

struct kqi_result {
  std::shared_ptr<const CitationGraph> g;
  std::vector<uint32_t> real;
  kqi::VolumeTable vt;
  kqi::KqiTable kt;
};

struct kqi_agg {
  kqi::GroupAggregate agg;
};

struct kqi_vein {
  kqi::VeinGraph v;
};

struct kqi_series {
  kqi::GrowthSeries s;
};

namespace {

thread_local std::string g_last_error;

kqi_status to_status(Errc c) {
  switch (c) {
    case Errc::ok: return KQI_OK;
    case Errc::io: return KQI_E_IO;
    case Errc::malformed_line: return KQI_E_MALFORMED_LINE;
    case Errc::duplicate_edge: return KQI_E_DUPLICATE_EDGE;
    case Errc::cycle: return KQI_E_CYCLE;
    case Errc::already_augmented: return KQI_E_ALREADY_AUGMENTED;
    case Errc::not_augmented: return KQI_E_NOT_AUGMENTED;
    case Errc::missing_year: return KQI_E_MISSING_YEAR;
    case Errc::zero_in_strength: return KQI_E_ZERO_IN_STRENGTH;
    case Errc::mismatched_table: return KQI_E_MISMATCHED_TABLE;
    case Errc::unknown_group_kind: return KQI_E_UNKNOWN_GROUP_KIND;
    case Errc::unknown_node: return KQI_E_UNKNOWN_NODE;
    case Errc::degenerate_input: return KQI_E_DEGENERATE_INPUT;
    case Errc::too_few_points: return KQI_E_TOO_FEW_POINTS;
    case Errc::all_zero: return KQI_E_ALL_ZERO;
    case Errc::nonconvergence: return KQI_E_NONCONVERGENCE;
    case Errc::key_mismatch: return KQI_E_KEY_MISMATCH;
    case Errc::empty_selection: return KQI_E_EMPTY_SELECTION;
    case Errc::fragment_explosion: return KQI_E_FRAGMENT_EXPLOSION;
    case Errc::validity_guard: return KQI_E_VALIDITY_GUARD;
    case Errc::invalid_argument: return KQI_E_INVALID_ARGUMENT;
    case Errc::internal: return KQI_E_INTERNAL;
  }
  return KQI_E_INTERNAL;
}

template <typename Fn>
kqi_status guarded(Fn&& fn) {
  try {
    fn();
    return KQI_OK;
  } catch (const kqi::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return KQI_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return KQI_E_INTERNAL;
  }
}

kqi_status usage_error(const char* msg) {
  g_last_error = msg;
  return KQI_E_INVALID_ARGUMENT;
}

std::vector<uint32_t> real_indices(const CitationGraph& g) {
  std::vector<uint32_t> out;
  out.reserve(g.real_node_count());
  for (uint32_t v = 0; v < g.node_count(); ++v)
    if (!g.is_super_root(v)) out.push_back(v);
  return out;
}

kqi_graph* wrap(CitationGraph&& g) {
  auto* h = new kqi_graph;
  h->g = std::make_shared<CitationGraph>(std::move(g));
  h->real = real_indices(*h->g);
  return h;
}

kqi_status write_file(const char* path, const std::string& content) {
  if (std::strcmp(path, "-") == 0) {
    std::cout << content;
    std::cout.flush();
    return KQI_OK;
  }
  std::ofstream out(path);
  if (!out) kqi::fail(Errc::io, std::string("cannot write file: ") + path);
  out << content;
  if (!out) kqi::fail(Errc::io, std::string("write failed: ") + path);
  return KQI_OK;
}

kqi::ArrivalSchedule parse_schedule(const char* schedule, long long target_nodes, int steps,
                                    const long long* arrivals) {
  kqi::ArrivalSchedule sch;
  std::string s = schedule ? schedule : "standard";
  if (s == "standard") {
    sch.kind = kqi::ArrivalSchedule::Kind::standard;
  } else if (s == "accelerated") {
    sch.kind = kqi::ArrivalSchedule::Kind::accelerated;
  } else if (s == "decelerated" || s == "constant") {
    sch.kind = kqi::ArrivalSchedule::Kind::decelerated;
  } else if (s == "custom") {
    sch.kind = kqi::ArrivalSchedule::Kind::custom;
    if (!arrivals) kqi::fail(Errc::invalid_argument, "custom schedule needs arrival counts");
    sch.custom_counts.assign(arrivals, arrivals + steps);
  } else {
    kqi::fail(Errc::invalid_argument, "unknown schedule kind: " + s);
  }
  sch.target_nodes = target_nodes;
  return sch;
}

}  // namespace

extern "C" {

const char* kqi_status_name(kqi_status s) {
  switch (s) {
    case KQI_OK: return "ok";
    case KQI_E_IO: return "io";
    case KQI_E_MALFORMED_LINE: return "malformed_line";
    case KQI_E_DUPLICATE_EDGE: return "duplicate_edge";
    case KQI_E_CYCLE: return "cycle";
    case KQI_E_ALREADY_AUGMENTED: return "already_augmented";
    case KQI_E_NOT_AUGMENTED: return "not_augmented";
    case KQI_E_MISSING_YEAR: return "missing_year";
    case KQI_E_ZERO_IN_STRENGTH: return "zero_in_strength";
    case KQI_E_MISMATCHED_TABLE: return "mismatched_table";
    case KQI_E_UNKNOWN_GROUP_KIND: return "unknown_group_kind";
    case KQI_E_UNKNOWN_NODE: return "unknown_node";
    case KQI_E_DEGENERATE_INPUT: return "degenerate_input";
    case KQI_E_TOO_FEW_POINTS: return "too_few_points";
    case KQI_E_ALL_ZERO: return "all_zero";
    case KQI_E_NONCONVERGENCE: return "nonconvergence";
    case KQI_E_KEY_MISMATCH: return "key_mismatch";
    case KQI_E_EMPTY_SELECTION: return "empty_selection";
    case KQI_E_FRAGMENT_EXPLOSION: return "fragment_explosion";
    case KQI_E_VALIDITY_GUARD: return "validity_guard";
    case KQI_E_INVALID_ARGUMENT: return "invalid_argument";
    case KQI_E_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* kqi_last_error(void) { return g_last_error.c_str(); }

const char* kqi_version(void) { return "1.0.0"; }

kqi_status kqi_graph_load(const char* edge_path, const char* node_path, kqi_graph** out) {
  if (!edge_path || !out) return usage_error("kqi_graph_load: null argument");
  return guarded([&] {
    std::optional<std::string> np;
    if (node_path) np = node_path;
    *out = wrap(CitationGraph::load(edge_path, np));
  });
}

void kqi_graph_free(kqi_graph* g) { delete g; }

kqi_status kqi_graph_augment(const kqi_graph* g, kqi_graph** out) {
  if (!g || !out) return usage_error("kqi_graph_augment: null argument");
  return guarded([&] { *out = wrap(g->g->augment()); });
}

kqi_status kqi_graph_decay(const kqi_graph* g, double lambda, const long long* reference_year,
                           kqi_graph** out) {
  if (!g || !out) return usage_error("kqi_graph_decay: null argument");
  return guarded([&] {
    kqi::DecaySpec spec;
    spec.lambda = lambda;
    if (reference_year) spec.reference_year = *reference_year;
    *out = wrap(g->g->decay(spec));
  });
}

kqi_status kqi_graph_snapshot(const kqi_graph* g, long long year, kqi_graph** out) {
  if (!g || !out) return usage_error("kqi_graph_snapshot: null argument");
  return guarded([&] { *out = wrap(g->g->snapshot(year)); });
}

kqi_status kqi_graph_save(const kqi_graph* g, const char* edge_path, const char* node_path) {
  if (!g || !edge_path) return usage_error("kqi_graph_save: null argument");
  return guarded([&] {
    std::ostringstream ebuf;
    g->g->save_edges(ebuf);
    write_file(edge_path, ebuf.str());
    if (node_path) {
      std::ostringstream nbuf;
      g->g->save_nodes(nbuf);
      write_file(node_path, nbuf.str());
    }
  });
}

size_t kqi_graph_node_count(const kqi_graph* g) { return g ? g->real.size() : 0; }

size_t kqi_graph_edge_count(const kqi_graph* g) { return g ? g->g->edge_count() : 0; }

double kqi_graph_total_weight(const kqi_graph* g) { return g ? g->g->total_weight() : 0.0; }

int kqi_graph_is_augmented(const kqi_graph* g) { return g && g->g->augmented() ? 1 : 0; }

kqi_status kqi_graph_node_id(const kqi_graph* g, size_t i, const char** id) {
  if (!g || !id) return usage_error("kqi_graph_node_id: null argument");
  if (i >= g->real.size()) return usage_error("kqi_graph_node_id: index out of range");
  *id = g->g->id_of(g->real[i]).c_str();
  return KQI_OK;
}

kqi_status kqi_graph_node_year(const kqi_graph* g, size_t i, long long* year, int* has_year) {
  if (!g || !year || !has_year) return usage_error("kqi_graph_node_year: null argument");
  if (i >= g->real.size()) return usage_error("kqi_graph_node_year: index out of range");
  auto y = g->g->year_of(g->real[i]);
  *has_year = y.has_value() ? 1 : 0;
  *year = y.value_or(0);
  return KQI_OK;
}

kqi_status kqi_compute(const kqi_graph* g, int threads, kqi_result** out) {
  if (!g || !out) return usage_error("kqi_compute: null argument");
  return guarded([&] {
    auto* r = new kqi_result;
    try {
      r->g = g->g;
      r->real = g->real;
      r->vt = kqi::compute_volumes(*g->g);
      r->kt = kqi::kqi_all(*g->g, r->vt, threads);
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
  });
}

void kqi_result_free(kqi_result* r) { delete r; }

size_t kqi_result_size(const kqi_result* r) { return r ? r->real.size() : 0; }

double kqi_result_total(const kqi_result* r) { return r ? r->kt.total : 0.0; }

kqi_status kqi_result_row(const kqi_result* r, size_t i, const char** id, double* kqi,
                          double* volume, double* in_strength, double* out_strength) {
  if (!r) return usage_error("kqi_result_row: null argument");
  if (i >= r->real.size()) return usage_error("kqi_result_row: index out of range");
  uint32_t v = r->real[i];
  if (id) *id = r->g->id_of(v).c_str();
  if (kqi) *kqi = r->kt.kqi[v];
  if (volume) *volume = r->vt.volume[v];
  if (in_strength) *in_strength = r->g->in_strength(v);
  if (out_strength) *out_strength = r->g->out_strength(v);
  return KQI_OK;
}

kqi_status kqi_result_lookup(const kqi_result* r, const char* id, double* kqi, double* volume) {
  if (!r || !id) return usage_error("kqi_result_lookup: null argument");
  return guarded([&] {
    uint32_t v = r->g->index_of(id);
    if (kqi) *kqi = r->kt.kqi[v];
    if (volume) *volume = r->vt.volume[v];
  });
}

kqi_status kqi_result_export(const kqi_result* r, const char* path, const char* format) {
  if (!r || !path || !format) return usage_error("kqi_result_export: null argument");
  return guarded([&] {
    std::ostringstream buf;
    std::string f = format;
    if (f == "csv")
      kqi::export_kqi_csv(*r->g, r->vt, r->kt, buf);
    else if (f == "json")
      kqi::export_kqi_json(*r->g, r->vt, r->kt, buf);
    else
      kqi::fail(Errc::invalid_argument, "unknown result format: " + f);
    write_file(path, buf.str());
  });
}

kqi_status kqi_oracle(const kqi_graph* g, const char* node_id, double* out) {
  if (!g || !node_id || !out) return usage_error("kqi_oracle: null argument");
  return guarded([&] { *out = kqi::fragment_oracle_kqi(*g->g, g->g->index_of(node_id)); });
}

kqi_status kqi_aggregate(const kqi_result* r, const char* kind, int first_author_only,
                         kqi_agg** out) {
  if (!r || !kind || !out) return usage_error("kqi_aggregate: null argument");
  return guarded([&] {
    auto k = kqi::parse_group_kind(kind);
    if (!k) kqi::fail(Errc::unknown_group_kind, std::string("unknown group kind: ") + kind);
    auto* a = new kqi_agg;
    try {
      a->agg = kqi::aggregate_kqi(*r->g, r->kt, *k, first_author_only != 0);
    } catch (...) {
      delete a;
      throw;
    }
    *out = a;
  });
}

void kqi_agg_free(kqi_agg* a) { delete a; }

size_t kqi_agg_size(const kqi_agg* a) { return a ? a->agg.scores.size() : 0; }

size_t kqi_agg_skipped(const kqi_agg* a) { return a ? a->agg.skipped : 0; }

kqi_status kqi_agg_row(const kqi_agg* a, size_t i, const char** key, double* kqi_sum,
                       long long* paper_count) {
  if (!a) return usage_error("kqi_agg_row: null argument");
  if (i >= a->agg.scores.size()) return usage_error("kqi_agg_row: index out of range");
  if (key) *key = a->agg.scores[i].key.c_str();
  if (kqi_sum) *kqi_sum = a->agg.scores[i].kqi_sum;
  if (paper_count) *paper_count = static_cast<long long>(a->agg.scores[i].paper_count);
  return KQI_OK;
}

kqi_status kqi_agg_export_csv(const kqi_agg* a, const char* path, size_t top_n) {
  if (!a || !path) return usage_error("kqi_agg_export_csv: null argument");
  return guarded([&] {
    std::ostringstream buf;
    kqi::export_aggregate_csv(a->agg, buf, top_n);
    write_file(path, buf.str());
  });
}

kqi_status kqi_vein_extract(const kqi_result* r, double top_fraction, const char* const* ids,
                            size_t id_count, int max_depth, int complete_level, kqi_vein** out) {
  if (!r || !out) return usage_error("kqi_vein_extract: null argument");
  if (ids && top_fraction >= 0.0)
    return usage_error("kqi_vein_extract: pass top_fraction < 0 with an explicit id list");
  return guarded([&] {
    kqi::VeinConfig cfg;
    if (ids) {
      for (size_t i = 0; i < id_count; ++i) cfg.ids.emplace_back(ids[i]);
    } else {
      cfg.top_fraction = top_fraction;
    }
    cfg.max_depth = max_depth;
    cfg.complete_level = complete_level != 0;
    auto* v = new kqi_vein;
    try {
      v->v = kqi::extract_vein(*r->g, r->kt, cfg);
    } catch (...) {
      delete v;
      throw;
    }
    *out = v;
  });
}

void kqi_vein_free(kqi_vein* v) { delete v; }

size_t kqi_vein_node_count(const kqi_vein* v) { return v ? v->v.nodes.size() : 0; }

size_t kqi_vein_edge_count(const kqi_vein* v) { return v ? v->v.edges.size() : 0; }

double kqi_vein_covered_share(const kqi_vein* v) { return v ? v->v.covered_kqi_share : 0.0; }

kqi_status kqi_vein_node(const kqi_vein* v, size_t i, const char** id) {
  if (!v || !id) return usage_error("kqi_vein_node: null argument");
  if (i >= v->v.nodes.size()) return usage_error("kqi_vein_node: index out of range");
  *id = v->v.nodes[i].c_str();
  return KQI_OK;
}

kqi_status kqi_vein_edge(const kqi_vein* v, size_t i, const char** ancestor,
                         const char** descendant) {
  if (!v) return usage_error("kqi_vein_edge: null argument");
  if (i >= v->v.edges.size()) return usage_error("kqi_vein_edge: index out of range");
  if (ancestor) *ancestor = v->v.edges[i].first.c_str();
  if (descendant) *descendant = v->v.edges[i].second.c_str();
  return KQI_OK;
}

kqi_status kqi_vein_export(const kqi_vein* v, const char* path, const char* format) {
  if (!v || !path || !format) return usage_error("kqi_vein_export: null argument");
  return guarded([&] {
    std::ostringstream buf;
    std::string f = format;
    if (f == "dot")
      kqi::export_vein_dot(v->v, buf);
    else if (f == "csv")
      kqi::export_vein_csv(v->v, buf);
    else
      kqi::fail(Errc::invalid_argument, "unknown vein format: " + f);
    write_file(path, buf.str());
  });
}

kqi_status kqi_growth_series(const kqi_graph* g, long long from_year, long long to_year,
                             const double* decay_lambda, int threads, kqi_series** out) {
  if (!g || !out) return usage_error("kqi_growth_series: null argument");
  return guarded([&] {
    std::optional<double> lambda;
    if (decay_lambda) lambda = *decay_lambda;
    auto* s = new kqi_series;
    try {
      s->s = kqi::growth_series(*g->g, from_year, to_year, lambda, threads);
    } catch (...) {
      delete s;
      throw;
    }
    *out = s;
  });
}

void kqi_series_free(kqi_series* s) { delete s; }

size_t kqi_series_size(const kqi_series* s) { return s ? s->s.years.size() : 0; }

kqi_status kqi_series_point(const kqi_series* s, size_t i, long long* year, double* total_kqi,
                            size_t* nodes, double* mean_in_strength) {
  if (!s) return usage_error("kqi_series_point: null argument");
  if (i >= s->s.years.size()) return usage_error("kqi_series_point: index out of range");
  if (year) *year = s->s.years[i];
  if (total_kqi) *total_kqi = s->s.total_kqi[i];
  if (nodes) *nodes = s->s.node_count[i];
  if (mean_in_strength) *mean_in_strength = s->s.mean_in_strength[i];
  return KQI_OK;
}

kqi_status kqi_series_approx(const kqi_series* s, size_t i, double* approx_kqi) {
  if (!s) return usage_error("kqi_series_approx: null argument");
  if (i >= s->s.years.size()) return usage_error("kqi_series_approx: index out of range");
  if (s->s.approx_kqi.size() != s->s.years.size())
    return usage_error("kqi_series_approx: series has no continuum column");
  if (approx_kqi) *approx_kqi = s->s.approx_kqi[i];
  return KQI_OK;
}

kqi_status kqi_series_export_csv(const kqi_series* s, const char* path) {
  if (!s || !path) return usage_error("kqi_series_export_csv: null argument");
  return guarded([&] {
    std::ostringstream buf;
    kqi::export_series_csv(s->s, buf);
    write_file(path, buf.str());
  });
}

kqi_status kqi_detect_boom(const kqi_series* s, double rss_critical, const char* scale,
                           int use_increments, kqi_boom* out) {
  if (!s || !out) return usage_error("kqi_detect_boom: null argument");
  return guarded([&] {
    kqi::BoomScale sc = kqi::BoomScale::minmax100;
    if (scale) {
      std::string sv = scale;
      if (sv == "minmax100")
        sc = kqi::BoomScale::minmax100;
      else if (sv == "none")
        sc = kqi::BoomScale::none;
      else
        kqi::fail(Errc::invalid_argument, "unknown boom scale: " + sv);
    }
    auto rep = kqi::detect_boom(s->s, rss_critical, sc, use_increments != 0);
    out->slope = rep.fit.slope;
    out->intercept = rep.fit.intercept;
    out->rss = rep.fit.rss;
    out->r2 = rep.fit.r2;
    out->boomed = rep.boomed ? 1 : 0;
    out->rss_critical = rep.rss_critical;
    out->a = rep.a;
    out->has_threshold_year = rep.threshold_year.has_value() ? 1 : 0;
    out->threshold_year = rep.threshold_year.value_or(0);
  });
}

kqi_status kqi_fit_linear(const double* xs, const double* ys, size_t n, double* slope,
                          double* intercept, double* rss, double* r2) {
  if (!xs || !ys) return usage_error("kqi_fit_linear: null argument");
  return guarded([&] {
    auto f = kqi::fit_linear({xs, n}, {ys, n});
    if (slope) *slope = f.slope;
    if (intercept) *intercept = f.intercept;
    if (rss) *rss = f.rss;
    if (r2) *r2 = f.r2;
  });
}

kqi_status kqi_pareto_split(const kqi_result* r, kqi_pareto* out) {
  if (!r || !out) return usage_error("kqi_pareto_split: null argument");
  return guarded([&] {
    auto rep = kqi::pareto_split(*r->g, r->kt);
    out->p_star = rep.p_star;
    out->share_at_p_star = rep.share_at_p_star;
  });
}

kqi_status kqi_pareto_export_csv(const kqi_result* r, const char* path) {
  if (!r || !path) return usage_error("kqi_pareto_export_csv: null argument");
  return guarded([&] {
    auto rep = kqi::pareto_split(*r->g, r->kt);
    std::ostringstream buf;
    buf << "fraction,share\n";
    for (const auto& [frac, share] : rep.curve)
      buf << kqi::format_double(frac) << ',' << kqi::format_double(share) << '\n';
    write_file(path, buf.str());
  });
}

kqi_status kqi_ba_generate(int m, const char* schedule, long long target_nodes, int steps,
                           const long long* arrivals, uint64_t seed, kqi_graph** out) {
  if (!out) return usage_error("kqi_ba_generate: null argument");
  return guarded([&] {
    kqi::BaConfig cfg;
    cfg.m = m;
    cfg.steps = steps;
    cfg.seed = seed;
    cfg.schedule = parse_schedule(schedule, target_nodes, steps, arrivals);
    *out = wrap(kqi::generate_ba(cfg));
  });
}

kqi_status kqi_ba_series(int m, const char* schedule, long long target_nodes, int steps,
                         const long long* arrivals, uint64_t seed, kqi_series** out) {
  if (!out) return usage_error("kqi_ba_series: null argument");
  return guarded([&] {
    kqi::BaConfig cfg;
    cfg.m = m;
    cfg.steps = steps;
    cfg.seed = seed;
    cfg.schedule = parse_schedule(schedule, target_nodes, steps, arrivals);
    auto pts = kqi::kqi_time_series(cfg);
    auto* s = new kqi_series;
    for (const auto& pt : pts) {
      s->s.years.push_back(pt.step);
      s->s.total_kqi.push_back(pt.total_kqi);
      s->s.node_count.push_back(pt.nodes);
      s->s.mean_in_strength.push_back(pt.mean_in_strength);
      s->s.approx_kqi.push_back(pt.approx_kqi);
    }
    *out = s;
  });
}

kqi_status kqi_percolate(const kqi_graph* g, int a, double seed_fraction, uint64_t rng_seed,
                         double* active_fraction, int* rounds) {
  if (!g) return usage_error("kqi_percolate: null argument");
  return guarded([&] {
    kqi::ActivationConfig cfg;
    cfg.a = a;
    cfg.seed_fraction = seed_fraction;
    cfg.rng_seed = rng_seed;
    auto res = kqi::bootstrap_percolation(*g->g, cfg);
    if (active_fraction) *active_fraction = res.active_fraction;
    if (rounds) *rounds = res.rounds;
  });
}

kqi_status kqi_analytic_predictions(int m, double r, double w_ti, kqi_analytic* out) {
  if (!out) return usage_error("kqi_analytic_predictions: null argument");
  return guarded([&] {
    auto p = kqi::analytic_predictions(m, r, w_ti);
    out->degree = p.degree;
    out->contain_proportion = p.contain_proportion;
    out->volume = p.volume;
    out->kqi_approx = p.kqi_approx;
  });
}

kqi_status kqi_pagerank(const kqi_graph* g, double damping, double tol, int max_iter,
                        const char* direction, double* scores, size_t cap) {
  if (!g || !scores) return usage_error("kqi_pagerank: null argument");
  if (cap < g->real.size()) return usage_error("kqi_pagerank: score buffer too small");
  return guarded([&] {
    kqi::PageRankDirection dir = kqi::PageRankDirection::citing_to_cited;
    if (direction) {
      std::string d = direction;
      if (d == "citing-to-cited")
        dir = kqi::PageRankDirection::citing_to_cited;
      else if (d == "cited-to-citing")
        dir = kqi::PageRankDirection::cited_to_citing;
      else
        kqi::fail(Errc::invalid_argument, "unknown pagerank direction: " + d);
    }
    auto pr = kqi::pagerank(*g->g, damping, tol, max_iter, dir);
    for (size_t i = 0; i < g->real.size(); ++i) scores[i] = pr[g->real[i]];
  });
}

kqi_status kqi_h_index(const long long* citation_counts, size_t n, int* out) {
  if (!citation_counts || !out) return usage_error("kqi_h_index: null argument");
  return guarded([&] { *out = kqi::h_index({citation_counts, n}); });
}

kqi_status kqi_spearman(const double* a, const double* b, size_t n, double* out) {
  if (!a || !b || !out) return usage_error("kqi_spearman: null argument");
  return guarded([&] { *out = kqi::spearman({a, n}, {b, n}); });
}

}  // extern "C"
