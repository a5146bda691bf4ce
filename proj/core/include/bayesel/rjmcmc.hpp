#ifndef BAYESEL_RJMCMC_HPP
#define BAYESEL_RJMCMC_HPP

#include <map>
#include <string>

#include "bayesel/diagnostics.hpp"
#include "bayesel/linear_model.hpp"

namespace bayesel {

struct ModelPrior {
  enum class Kind { BetaBinomial, Uniform };
  Kind kind = Kind::BetaBinomial;
  double a = 2.0;
  double b = 7.0;

  double log_prior(int k, int s) const;
};

struct RjmcmcConfig {
  ModelPrior model_prior;
  double sigma2_prior_shape = 0.1;
  double sigma2_prior_scale = 0.1;
  double lambda_a0 = 5.0;  // double-exponential scale hyperprior, Gibbs-updated
  double lambda_b0 = 5.0;
  double beta_walk_scale = 0.03;
  double sigma2_walk_scale = 1.0;
  double u_scale = 0.05;  // sd of the birth innovation
  int length = 150000;
  int burn_in = 50000;
  std::uint64_t seed = 1;
  std::uint64_t stream_id = 0;
  enum class Init { NullModel, FullOls } init = Init::FullOls;
};

enum class ModelMove { Within, Birth, Death };

struct ModelRecord {
  int iter = 0;
  ModelMove move = ModelMove::Within;
  bool accepted = false;
  int k = 0;
  std::string gamma;
  double sigma2 = 0.0;
  double log_post = 0.0;
  std::vector<double> beta;
};

struct ModelTrace {
  int s = 0;
  int length = 0;
  int burn_in = 0;
  std::uint64_t seed = 0;
  std::vector<ModelRecord> rows;  // within + cross record per iteration
  std::vector<MoveCount> move_counts;
};

// Alternates a within-model two-step update with a birth/death jump through
// the anchored map, plus a conjugate refresh of the coefficient-prior scale.
ModelTrace rjmcmc(const RegressionData& data, const RjmcmcConfig& config);

// Share of post-burn-in iterations spent in each model, keyed by gamma bits;
// counted on end-of-iteration states.
std::map<std::string, double> model_visit_frequencies(const ModelTrace& trace);

std::string modal_model(const ModelTrace& trace);

std::vector<AcceptanceEntry> acceptance_report(const std::vector<MoveCount>& counts);

// CSV layout: iter,move,accepted,k,gamma_bits,sigma2,log_post,beta_json with
// the coefficient list quoted as a JSON array.
void write_model_trace_csv(const std::string& path, const ModelTrace& trace);

std::string model_frequencies_json(const ModelTrace& trace);

}  // namespace bayesel

#endif
