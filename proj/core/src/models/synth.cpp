#include "bayesel/models/synth.hpp"

#include "bayesel/errors.hpp"
#include "bayesel/rng.hpp"

namespace bayesel {

RegressionData synth_regression(std::uint64_t seed, int n, int s,
                                const Vector& beta_true, double sigma_true) {
  if (n < 1 || s < 0 || s >= n)
    throw DimensionError("synth_regression: need 0 <= s < n");
  if (beta_true.size() != s)
    throw DimensionError("synth_regression: beta_true must have s entries");
  RngStream rng(seed);
  RegressionData d;
  d.x.resize(n, s);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < s; ++j) d.x(i, j) = rng.normal();
  d.y.resize(n);
  for (int i = 0; i < n; ++i)
    d.y[i] = d.x.row(i).dot(beta_true) + sigma_true * rng.normal();
  return d;
}

namespace {

constexpr int kNodes = 13;

struct EdgeSpec {
  int parent;
  int child;
  double weight;
};

// Fixed sparse truth for the bundled stand-in data; every child's signal is
// strong against the 0.5 noise sd.
constexpr EdgeSpec kEdges[] = {
    {0, 3, 0.9},  {1, 3, -0.7}, {2, 4, 1.1},  {3, 5, 0.8},
    {4, 5, 0.6},  {3, 6, -0.9}, {5, 7, 1.0},  {6, 8, 0.7},
    {2, 8, 0.5},  {7, 9, -0.8}, {8, 10, 0.9}, {1, 10, -0.6},
    {9, 11, 0.7}, {10, 11, 0.6}, {11, 12, 1.0}};

constexpr double kNoiseSd = 0.5;

}  // namespace

Matrix synth_dag_genes(std::uint64_t seed, int n) {
  if (n < kNodes + 2) throw DimensionError("synth_dag_genes: sample too small");
  RngStream rng(seed);
  Matrix g(n, kNodes);
  for (int node = 0; node < kNodes; ++node) {
    for (int i = 0; i < n; ++i) {
      if (node < 3) {
        g(i, node) = rng.normal();  // roots are unit-variance sources
        continue;
      }
      double v = kNoiseSd * rng.normal();
      for (const auto& e : kEdges)
        if (e.child == node) v += e.weight * g(i, e.parent);
      g(i, node) = v;
    }
  }
  return g;
}

std::vector<std::pair<int, int>> synth_dag_truth() {
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : kEdges) edges.emplace_back(e.parent, e.child);
  return edges;
}

std::vector<std::string> synth_gene_names() {
  std::vector<std::string> names;
  for (int i = 1; i <= kNodes; ++i) {
    names.push_back(i < 10 ? "G0" + std::to_string(i) : "G" + std::to_string(i));
  }
  return names;
}

}  // namespace bayesel
