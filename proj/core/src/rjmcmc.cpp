#include "bayesel/rjmcmc.hpp"

#include <cmath>
#include <fstream>

#include "bayesel/csv.hpp"
#include "bayesel/diagnostics.hpp"
#include "bayesel/distributions.hpp"
#include "bayesel/errors.hpp"

namespace bayesel {

double ModelPrior::log_prior(int k, int s) const {
  if (kind == Kind::Uniform) {
    if (k < 0 || k > s) throw DimensionError("model prior: k out of range");
    return -static_cast<double>(s) * std::log(2.0);
  }
  return log_model_prior_beta_binomial(k, s, a, b);
}

namespace {

struct ChainState {
  GammaMask gamma;
  Vector beta;
  double sigma2 = 0.0;
  double lambda = 1.25;
  Vector beta_hat;            // least-squares anchor for the current model
  double sigma2_mcele = 0.0;  // trial maximizer at the current beta
  double log_el = 0.0;
};

double full_log_el(const RegressionData& data, const GammaMask& gamma,
                   const Vector& beta, double sigma2) {
  if (!(sigma2 > 0.0)) return neg_inf;
  const ELSolution sol = solve_el(build_ms_constraints(data, gamma, beta, sigma2));
  return sol.feasible ? sol.log_el : neg_inf;
}

double log_param_prior(const ChainState& st, const RjmcmcConfig& cfg, int s) {
  double lp = cfg.model_prior.log_prior(model_size(st.gamma), s);
  lp += log_inv_gamma_pdf(st.sigma2, cfg.sigma2_prior_shape, cfg.sigma2_prior_scale);
  for (Eigen::Index a = 0; a < st.beta.size(); ++a)
    lp += log_double_exp_pdf(st.beta[a], 0.0, st.lambda);
  return lp;
}

void push_record(ModelTrace& trace, int iter, ModelMove move, bool accepted,
                 const ChainState& st, double log_post) {
  ModelRecord rec;
  rec.iter = iter;
  rec.move = move;
  rec.accepted = accepted;
  rec.k = model_size(st.gamma);
  rec.gamma = gamma_bits(st.gamma);
  rec.sigma2 = st.sigma2;
  rec.log_post = log_post;
  if (st.beta.size() > 0)
    rec.beta.assign(st.beta.data(), st.beta.data() + st.beta.size());
  trace.rows.push_back(std::move(rec));
}

}  // namespace

ModelTrace rjmcmc(const RegressionData& data, const RjmcmcConfig& cfg) {
  const int s = data.s();
  if (s < 1) throw DimensionError("rjmcmc: no candidate covariates");
  if (data.n() <= s + 2)
    throw DimensionError("rjmcmc: need more observations than constraints");

  RngStream rng(cfg.seed, cfg.stream_id);

  ChainState st;
  const auto set_full_ols = [&] {
    st.gamma.assign(static_cast<std::size_t>(s), 1);
    st.beta = ols(data, st.gamma);
    Vector r = data.y;
    for (int j = 0; j < s; ++j) r -= st.beta[j] * data.x.col(j);
    st.sigma2 = r.squaredNorm() / static_cast<double>(data.n());
  };
  if (cfg.init == RjmcmcConfig::Init::FullOls) {
    set_full_ols();
  } else {
    st.gamma.assign(static_cast<std::size_t>(s), 0);
    st.beta = Vector(0);
    const double mean = data.y.mean();
    st.sigma2 =
        (data.y.array() - mean).square().sum() / static_cast<double>(data.n() - 1);
  }
  st.lambda = cfg.lambda_b0 / (cfg.lambda_a0 - 1.0);
  st.beta_hat = ols(data, st.gamma);
  MceleSigma2Result m0 = mcele_sigma2(data, st.gamma, st.beta);
  if (!m0.feasible && cfg.init == RjmcmcConfig::Init::NullModel) {
    // Under the null state the residual is y itself, so one one-signed score
    // column empties the trial hull. The saturated OLS state satisfies every
    // constraint at uniform weights; start there instead.
    set_full_ols();
    st.beta_hat = st.beta;
    m0 = mcele_sigma2(data, st.gamma, st.beta);
  }
  if (!m0.feasible)
    throw InitInfeasibleError("rjmcmc: initial trial problem infeasible");
  st.sigma2_mcele = m0.sigma2;
  st.log_el = full_log_el(data, st.gamma, st.beta, st.sigma2);
  if (cfg.init == RjmcmcConfig::Init::NullModel && !(st.log_el > neg_inf)) {
    // The score columns of excluded covariates stay in the constraint set, so
    // when they explain most of the response the marginal variance of y falls
    // outside the joint hull. Fall back to the trial maximizer, which is
    // feasible by construction.
    st.sigma2 = m0.sigma2;
    st.log_el = full_log_el(data, st.gamma, st.beta, st.sigma2);
  }
  if (!(st.log_el > neg_inf))
    throw InitInfeasibleError("rjmcmc: initial state infeasible");

  ModelTrace trace;
  trace.s = s;
  trace.length = cfg.length;
  trace.burn_in = cfg.burn_in;
  trace.seed = cfg.seed;
  trace.rows.reserve(2 * static_cast<std::size_t>(cfg.length));
  MoveCount cnt_within{"within", 0, 0}, cnt_birth{"birth", 0, 0},
      cnt_death{"death", 0, 0};

  const double log_qgamma = -std::log(static_cast<double>(s));

  for (int t = 1; t <= cfg.length; ++t) {
    st.lambda = gibbs_lambda(rng, st.beta, cfg.lambda_a0, cfg.lambda_b0);

    // Within-model two-step move: walk beta, recenter sigma2 at its trial
    // maximizer under the proposed beta.
    {
      ++cnt_within.proposed;
      bool accepted = false;
      Vector beta_prop = st.beta;
      for (Eigen::Index a = 0; a < beta_prop.size(); ++a)
        beta_prop[a] += cfg.beta_walk_scale * rng.normal();
      const MceleSigma2Result mp = mcele_sigma2(data, st.gamma, beta_prop);
      if (mp.feasible) {
        const double sigma2_prop =
            rng.trunc_normal_lower(mp.sigma2, cfg.sigma2_walk_scale, 0.0);
        const double log_el_prop =
            full_log_el(data, st.gamma, beta_prop, sigma2_prop);
        if (log_el_prop > neg_inf) {
          ChainState prop = st;
          prop.beta = beta_prop;
          prop.sigma2 = sigma2_prop;
          double num = log_el_prop + log_param_prior(prop, cfg, s) +
                       log_trunc_normal_lower_pdf(st.sigma2, st.sigma2_mcele,
                                                  cfg.sigma2_walk_scale, 0.0);
          double den = st.log_el + log_param_prior(st, cfg, s) +
                       log_trunc_normal_lower_pdf(sigma2_prop, mp.sigma2,
                                                  cfg.sigma2_walk_scale, 0.0);
          if (std::log(rng.uniform()) < num - den) {
            st.beta = std::move(prop.beta);
            st.sigma2 = sigma2_prop;
            st.sigma2_mcele = mp.sigma2;
            st.log_el = log_el_prop;
            accepted = true;
          }
        }
      }
      if (accepted) ++cnt_within.accepted;
      push_record(trace, t, ModelMove::Within, accepted, st,
                  st.log_el + log_param_prior(st, cfg, s));
    }

    // Cross-model move through the anchored map.
    {
      std::uniform_int_distribution<int> pick(0, s - 1);
      const int j = pick(rng.engine());
      const bool birth = st.gamma[static_cast<std::size_t>(j)] == 0;
      auto& cnt = birth ? cnt_birth : cnt_death;
      ++cnt.proposed;
      bool accepted = false;

      GammaMask gamma_prop = st.gamma;
      gamma_prop[static_cast<std::size_t>(j)] = birth ? 1 : 0;
      const Vector beta_hat_prop = ols(data, gamma_prop);

      double log_u_density = 0.0;
      MapResult map;
      if (birth) {
        const double u = cfg.u_scale * rng.normal();
        log_u_density = log_normal_pdf(u, 0.0, cfg.u_scale * cfg.u_scale);
        map = map_up(data, st.gamma, j, st.beta, st.sigma2, st.sigma2_mcele, u,
                     st.beta_hat, beta_hat_prop);
      } else {
        map = map_down(data, st.gamma, j, st.beta, st.sigma2, st.sigma2_mcele,
                       st.beta_hat, beta_hat_prop);
        log_u_density = log_normal_pdf(map.u, 0.0, cfg.u_scale * cfg.u_scale);
      }

      if (map.trial_feasible && map.sigma2 > 0.0) {
        const double log_el_prop =
            full_log_el(data, gamma_prop, map.beta, map.sigma2);
        if (log_el_prop > neg_inf) {
          ChainState prop = st;
          prop.gamma = gamma_prop;
          prop.beta = map.beta;
          prop.sigma2 = map.sigma2;
          const double num = log_el_prop + log_param_prior(prop, cfg, s) +
                             log_qgamma + (birth ? 0.0 : log_u_density);
          const double den = st.log_el + log_param_prior(st, cfg, s) +
                             log_qgamma + (birth ? log_u_density : 0.0);
          if (std::log(rng.uniform()) < num - den) {
            st.gamma = std::move(prop.gamma);
            st.beta = std::move(prop.beta);
            st.sigma2 = map.sigma2;
            st.sigma2_mcele = map.sigma2_mcele;
            st.beta_hat = beta_hat_prop;
            st.log_el = log_el_prop;
            accepted = true;
          }
        }
      }
      if (accepted) ++cnt.accepted;
      push_record(trace, t, birth ? ModelMove::Birth : ModelMove::Death, accepted,
                  st, st.log_el + log_param_prior(st, cfg, s));
    }
  }

  trace.move_counts = {cnt_within, cnt_birth, cnt_death};
  return trace;
}

std::map<std::string, double> model_visit_frequencies(const ModelTrace& trace) {
  std::map<std::string, long> counts;
  long total = 0;
  for (const auto& rec : trace.rows) {
    if (rec.move == ModelMove::Within || rec.iter <= trace.burn_in) continue;
    ++counts[rec.gamma];
    ++total;
  }
  if (total == 0) throw EmptyTraceError("model_visit_frequencies: nothing after burn-in");
  std::map<std::string, double> freq;
  for (const auto& [bits, c] : counts)
    freq[bits] = static_cast<double>(c) / static_cast<double>(total);
  return freq;
}

std::string modal_model(const ModelTrace& trace) {
  const auto freq = model_visit_frequencies(trace);
  std::string best;
  double best_f = -1.0;
  for (const auto& [bits, f] : freq) {
    if (f > best_f) {
      best = bits;
      best_f = f;
    }
  }
  return best;
}

std::vector<AcceptanceEntry> acceptance_report(const std::vector<MoveCount>& counts) {
  std::vector<AcceptanceEntry> out;
  for (const auto& mc : counts) {
    AcceptanceEntry e{mc.label, mc.accepted, mc.proposed, 0.0};
    e.rate = mc.proposed > 0
                 ? static_cast<double>(mc.accepted) / static_cast<double>(mc.proposed)
                 : 0.0;
    out.push_back(e);
  }
  return out;
}

void write_model_trace_csv(const std::string& path, const ModelTrace& trace) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write model trace: " + path);
  out << "iter,move,accepted,k,gamma_bits,sigma2,log_post,beta_json\n";
  for (const auto& rec : trace.rows) {
    const char* move = rec.move == ModelMove::Within
                           ? "within"
                           : rec.move == ModelMove::Birth ? "birth" : "death";
    out << rec.iter << ',' << move << ',' << (rec.accepted ? 1 : 0) << ','
        << rec.k << ',' << rec.gamma << ',' << format_double(rec.sigma2) << ','
        << format_double(rec.log_post) << ",\"[";
    for (std::size_t a = 0; a < rec.beta.size(); ++a) {
      if (a) out << ',';
      out << format_double(rec.beta[a]);
    }
    out << "]\"\n";
  }
}

std::string model_frequencies_json(const ModelTrace& trace) {
  const auto freq = model_visit_frequencies(trace);
  std::string out = "{\n";
  bool first = true;
  for (const auto& [bits, f] : freq) {
    if (!first) out += ",\n";
    first = false;
    out += "  \"" + bits + "\": " + format_double(f);
  }
  out += "\n}\n";
  return out;
}

}  // namespace bayesel
