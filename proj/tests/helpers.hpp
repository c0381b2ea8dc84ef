#pragma once

// Shared fixtures for the unit tests: temp files, tiny graphs, random DAGs.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kqi/engine.hpp"
#include "kqi/graph.hpp"

namespace testutil {

inline std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "kqi_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string write_temp(const std::string& name, const std::string& content) {
  auto path = temp_dir() / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// A -> B -> C in knowledge direction (B cites A, C cites B).
inline kqi::CitationGraph chain3() {
  kqi::CitationGraph::Builder b;
  b.edge("A", "B");
  b.edge("B", "C");
  return std::move(b).build();
}

// R -> A, A -> {B, C}, {B, C} -> D after augmentation.
inline kqi::CitationGraph diamond() {
  kqi::CitationGraph::Builder b;
  b.edge("A", "B");
  b.edge("A", "C");
  b.edge("B", "D");
  b.edge("C", "D");
  return std::move(b).build();
}

inline std::string padded_id(int i, int width = 4) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "v%0*d", width, i);
  return buf;
}

// Random DAG over n nodes; ids are assigned through a random permutation so
// that id order and topological order disagree.  Edges i -> j only for
// topological positions i < j.
inline kqi::CitationGraph random_dag(std::mt19937_64& rng, int n, double edge_prob,
                                     bool random_weights = false) {
  std::vector<int> label(n);
  for (int i = 0; i < n; ++i) label[i] = i;
  std::shuffle(label.begin(), label.end(), rng);
  std::bernoulli_distribution coin(edge_prob);
  std::uniform_real_distribution<double> wdist(0.1, 3.0);
  kqi::CitationGraph::Builder b;
  for (int i = 0; i < n; ++i) b.node(padded_id(label[i]));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng))
        b.edge(padded_id(label[i]), padded_id(label[j]), random_weights ? wdist(rng) : 1.0);
  return std::move(b).build();
}

// Random tree: node i > 0 cites exactly one earlier node.
inline kqi::CitationGraph random_tree(std::mt19937_64& rng, int n) {
  std::vector<int> label(n);
  for (int i = 0; i < n; ++i) label[i] = i;
  std::shuffle(label.begin(), label.end(), rng);
  kqi::CitationGraph::Builder b;
  for (int i = 0; i < n; ++i) b.node(padded_id(label[i]));
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    b.edge(padded_id(label[pick(rng)]), padded_id(label[i]));
  }
  return std::move(b).build();
}

}  // namespace testutil
