#ifndef BAYESEL_MODELS_SYNTH_HPP
#define BAYESEL_MODELS_SYNTH_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bayesel/linear_model.hpp"

namespace bayesel {

// Gaussian design, y = x beta_true + noise; deterministic per seed.
RegressionData synth_regression(std::uint64_t seed, int n, int s,
                                const Vector& beta_true, double sigma_true);

// Recursive system over 13 nodes with a fixed sparse edge set, used as the
// bundled stand-in expression matrix. Column order equals node order.
Matrix synth_dag_genes(std::uint64_t seed, int n);

std::vector<std::pair<int, int>> synth_dag_truth();

std::vector<std::string> synth_gene_names();

}  // namespace bayesel

#endif
