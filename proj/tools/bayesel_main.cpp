#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bayesel/csv.hpp"
#include "bayesel/diagnostics.hpp"
#include "bayesel/distributions.hpp"
#include "bayesel/errors.hpp"
#include "bayesel/models/dag.hpp"
#include "bayesel/models/normal_toy.hpp"
#include "bayesel/models/rat.hpp"
#include "bayesel/rjmcmc.hpp"
#include "bayesel/svg.hpp"
#include "bayesel/trace_io.hpp"
#include "bayesel/two_step_mh.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using namespace bayesel;

namespace {

struct Global {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int chains = 0;  // 0: take the config's value
  bool no_plot = false;
};

Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  Json cfg;
  try {
    in >> cfg;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config parse: ") + e.what());
  }
  if (!cfg.is_object()) throw ConfigError("config root must be an object");
  return cfg;
}

// Schema guard: every required key present, nothing outside required+optional.
void check_keys(const Json& obj, const std::string& where,
                const std::vector<std::string>& required,
                const std::vector<std::string>& optional) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& k : required)
    if (!obj.contains(k)) throw ConfigError(where + ": missing key '" + k + "'");
  for (const auto& item : obj.items()) {
    const std::string& k = item.key();
    if (std::find(required.begin(), required.end(), k) == required.end() &&
        std::find(optional.begin(), optional.end(), k) == optional.end())
      throw ConfigError(where + ": unknown key '" + k + "'");
  }
}

double as_number(const Json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + " must be a number");
  return v.get<double>();
}

int as_int(const Json& v, const std::string& where, int lo) {
  if (!v.is_number_integer()) throw ConfigError(where + " must be an integer");
  const long long x = v.get<long long>();
  if (x < lo) throw ConfigError(where + " must be >= " + std::to_string(lo));
  if (x > std::numeric_limits<int>::max()) throw ConfigError(where + " too large");
  return static_cast<int>(x);
}

std::uint64_t as_u64(const Json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw ConfigError(where + " must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::string as_string(const Json& v, const std::string& where) {
  if (!v.is_string()) throw ConfigError(where + " must be a string");
  return v.get<std::string>();
}

Vector as_vector(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + " must be an array of numbers");
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    out[static_cast<Eigen::Index>(i)] =
        as_number(v[i], where + "[" + std::to_string(i) + "]");
  return out;
}

std::uint64_t pick_seed(const Global& g, const Json& cfg) {
  if (g.seed_given) return g.seed;
  return as_u64(cfg.at("seed"), "seed");
}

int pick_chains(const Global& g, const Json& cfg) {
  if (g.chains > 0) return g.chains;
  if (cfg.contains("chains")) return as_int(cfg.at("chains"), "chains", 1);
  return 1;
}

std::string chain_suffix(int chain, int chains) {
  return chains > 1 ? "_" + std::to_string(chain + 1) : "";
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
}

Vector load_series_csv(const std::string& path) {
  const CsvTable tab = read_csv(path);
  if (tab.values.cols() != 1)
    throw ConfigError("expected a single-column CSV: " + path);
  return tab.values.col(0);
}

struct ToyRun {
  Vector x;
  ElModel model;
};

ToyRun load_toy(const Json& m) {
  check_keys(m, "model", {"name", "data"}, {});
  ToyRun toy;
  toy.x = load_series_csv(as_string(m.at("data"), "model.data"));
  toy.model = make_normal_toy(toy.x);
  return toy;
}

Proposal1 parse_q1(const Json& j, Eigen::Index p) {
  check_keys(j, "q1", {"scales"}, {});
  Proposal1 q;
  q.scales = as_vector(j.at("scales"), "q1.scales");
  if (q.scales.size() != p)
    throw ConfigError("q1.scales must have " + std::to_string(p) + " entries");
  if (q.scales.minCoeff() <= 0.0) throw ConfigError("q1.scales must be positive");
  return q;
}

Proposal2 parse_q2(const Json& j, Eigen::Index q_dim) {
  check_keys(j, "q2", {"kind", "scales"}, {"bounds"});
  Proposal2 q;
  const std::string kind = as_string(j.at("kind"), "q2.kind");
  if (kind == "gaussian") {
    q.kind = Proposal2Kind::GaussianAtMcele;
    if (j.contains("bounds"))
      throw ConfigError("q2.bounds only applies to kind truncated_normal");
  } else if (kind == "truncated_normal") {
    q.kind = Proposal2Kind::TruncatedNormalAtMcele;
    if (!j.contains("bounds"))
      throw ConfigError("q2.kind truncated_normal requires q2.bounds");
    q.lower_bounds = as_vector(j.at("bounds"), "q2.bounds");
    if (q.lower_bounds.size() != q_dim)
      throw ConfigError("q2.bounds must have " + std::to_string(q_dim) + " entries");
  } else {
    throw ConfigError("q2.kind must be gaussian or truncated_normal");
  }
  q.scales = as_vector(j.at("scales"), "q2.scales");
  if (q.scales.size() != q_dim)
    throw ConfigError("q2.scales must have " + std::to_string(q_dim) + " entries");
  if (q.scales.minCoeff() <= 0.0) throw ConfigError("q2.scales must be positive");
  return q;
}

// Emits the per-chain artifact set and reports whether the run aborted.
bool emit_trace_outputs(const Global& g, const Trace& trace,
                        const std::string& suffix,
                        const std::vector<DerivedColumn>& derived) {
  const fs::path out(g.out_dir);
  write_trace_csv((out / ("trace" + suffix + ".csv")).string(), trace);
  const auto sums = summarize(trace, derived);
  const auto cols = diagnose_trace(trace, derived);
  const auto acc = acceptance_report(trace);
  write_text(out / ("summary" + suffix + ".txt"), summary_text(sums));
  write_text(out / ("summary" + suffix + ".json"), summary_json(sums));
  write_text(out / ("diagnostics" + suffix + ".json"),
             diagnostics_json(sums, cols, acc));
  if (!g.no_plot) {
    std::vector<double> lp(trace.log_posts.data(),
                           trace.log_posts.data() + trace.log_posts.size());
    write_trace_svg((out / ("trace" + suffix + ".svg")).string(), lp,
                    "log posterior" + suffix);
  }
  if (!trace.abort_reason.empty()) {
    std::cerr << "chain aborted: " << trace.abort_reason << "\n";
    return false;
  }
  return true;
}

int cmd_solve_el(const Global& g) {
  const Json cfg = load_config(g.config_path);
  check_keys(cfg, "config", {}, {"constraints", "n", "model", "theta1", "theta2"});
  const int sources = int(cfg.contains("constraints")) + int(cfg.contains("n")) +
                      int(cfg.contains("model"));
  if (sources != 1)
    throw ConfigError("config needs exactly one of: constraints, n, model");

  ELSolution sol;
  if (cfg.contains("constraints")) {
    const CsvTable tab = read_csv(as_string(cfg.at("constraints"), "constraints"));
    sol = solve_el(tab.values);
  } else if (cfg.contains("n")) {
    sol = solve_el(Matrix(as_int(cfg.at("n"), "n", 1), 0));
  } else {
    check_keys(cfg, "config", {"model", "theta1", "theta2"}, {});
    const ToyRun toy = load_toy(cfg.at("model"));
    ThetaSplit theta{as_vector(cfg.at("theta1"), "theta1"),
                     as_vector(cfg.at("theta2"), "theta2")};
    if (theta.theta1.size() != 1 || theta.theta2.size() != 1)
      throw ConfigError("normal_toy has one structural and one nuisance parameter");
    sol = solve_el(build_constraints(toy.model, theta));
  }

  Json out;
  out["feasible"] = sol.feasible;
  if (sol.feasible)
    out["log_el"] = sol.log_el;
  else
    out["log_el"] = "-inf";
  out["iterations"] = sol.iterations;
  out["grad_norm"] = sol.grad_norm;
  out["multipliers"] = Json::array();
  for (Eigen::Index i = 0; i < sol.multipliers.size(); ++i)
    out["multipliers"].push_back(sol.multipliers[i]);
  if (sol.feasible) {
    out["weights"] = Json::array();
    for (Eigen::Index i = 0; i < sol.weights.size(); ++i)
      out["weights"].push_back(sol.weights[i]);
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_grid(const Global& g) {
  const Json cfg = load_config(g.config_path);
  check_keys(cfg, "config", {"model"}, {"t1", "t2", "cells"});
  const Json& m = cfg.at("model");
  check_keys(m, "model", {"name", "data"}, {});
  if (as_string(m.at("name"), "model.name") != "normal_toy")
    throw ConfigError("grid requires a model with one structural and one "
                      "nuisance parameter (normal_toy)");
  const ToyRun toy = load_toy(m);

  const int cells = cfg.contains("cells") ? as_int(cfg.at("cells"), "cells", 2) : 200;
  GridSpec spec = toy_grid_box(toy.x, cells, cells);
  const auto axis = [&](const char* key, double& lo, double& hi) {
    if (!cfg.contains(key)) return;
    const Json& a = cfg.at(key);
    check_keys(a, key, {"lo", "hi"}, {});
    lo = as_number(a.at("lo"), std::string(key) + ".lo");
    hi = as_number(a.at("hi"), std::string(key) + ".hi");
    if (!(hi > lo)) throw ConfigError(std::string(key) + ": hi must exceed lo");
  };
  axis("t1", spec.t1_lo, spec.t1_hi);
  axis("t2", spec.t2_lo, spec.t2_hi);

  const Matrix lp = toy_grid_log_post(toy.model, spec);

  fs::create_directories(g.out_dir);
  const fs::path out(g.out_dir);
  {
    std::ofstream csv(out / "grid.csv");
    if (!csv) throw ConfigError("cannot write grid.csv");
    csv << "theta1,theta2,log_post\n";
    const double h1 = (spec.t1_hi - spec.t1_lo) / spec.n1;
    const double h2 = (spec.t2_hi - spec.t2_lo) / spec.n2;
    for (int i = 0; i < spec.n1; ++i)
      for (int j = 0; j < spec.n2; ++j) {
        csv << format_double(spec.t1_lo + (i + 0.5) * h1) << ','
            << format_double(spec.t2_lo + (j + 0.5) * h2) << ',';
        if (lp(i, j) > neg_inf)
          csv << format_double(lp(i, j));
        else
          csv << "NA";
        csv << '\n';
      }
  }
  if (!g.no_plot) {
    // Clamp the floor a fixed depth below the peak so infeasible cells read
    // as background rather than stretching the ramp.
    double mx = neg_inf;
    for (int i = 0; i < spec.n1; ++i)
      for (int j = 0; j < spec.n2; ++j) mx = std::max(mx, lp(i, j));
    if (!(mx > neg_inf)) mx = 0.0;
    Matrix shown = lp;
    for (int i = 0; i < spec.n1; ++i)
      for (int j = 0; j < spec.n2; ++j)
        shown(i, j) = std::max(lp(i, j), mx - 30.0);
    write_heatmap_svg((out / "grid.svg").string(), shown, spec.t1_lo, spec.t1_hi,
                      spec.t2_lo, spec.t2_hi, "log posterior", "theta1", "theta2");
  }
  std::cout << "grid: " << spec.n1 << "x" << spec.n2 << " cells -> "
            << (out / "grid.csv").string() << "\n";
  return 0;
}

int cmd_sample(const Global& g) {
  const Json cfg = load_config(g.config_path);
  if (!cfg.contains("model")) throw ConfigError("config: missing key 'model'");
  const Json& m = cfg.at("model");
  if (!m.is_object() || !m.contains("name"))
    throw ConfigError("model.name required");
  const std::string name = as_string(m.at("name"), "model.name");

  fs::create_directories(g.out_dir);
  bool clean = true;

  if (name == "normal_toy") {
    check_keys(cfg, "config", {"model", "q1", "q2", "length", "seed"},
               {"init", "burn_in", "chains"});
    const ToyRun toy = load_toy(m);
    const Proposal1 q1 = parse_q1(cfg.at("q1"), 1);
    const Proposal2 q2 = parse_q2(cfg.at("q2"), 1);
    const int length = as_int(cfg.at("length"), "length", 1);
    const int burn_in =
        cfg.contains("burn_in") ? as_int(cfg.at("burn_in"), "burn_in", 0) : 0;
    const std::uint64_t seed = pick_seed(g, cfg);
    const int chains = pick_chains(g, cfg);

    ThetaSplit init;
    if (cfg.contains("init")) {
      const Json& ji = cfg.at("init");
      check_keys(ji, "init", {"theta1", "theta2"}, {});
      init.theta1 = as_vector(ji.at("theta1"), "init.theta1");
      init.theta2 = as_vector(ji.at("theta2"), "init.theta2");
    } else {
      // Sample moments make the uniform weights feasible, so the chain starts
      // at the EL maximum.
      init.theta1 = Vector::Constant(1, toy.x.mean());
      init.theta2 = Vector::Constant(
          1, (toy.x.array() - toy.x.mean()).square().sum() / toy.x.size());
    }

    for (int c = 0; c < chains; ++c) {
      const Trace tr = two_step_mh(toy.model, init, q1, q2, length,
                                   seed + static_cast<std::uint64_t>(c), burn_in);
      clean = emit_trace_outputs(g, tr, chain_suffix(c, chains), {}) && clean;
    }
  } else if (name == "rat") {
    check_keys(cfg, "config", {"model", "length", "seed"},
               {"burn_in", "chains", "proposals"});
    check_keys(m, "model", {"name"}, {"data"});
    const RatData data = m.contains("data")
                             ? load_rat_data(as_string(m.at("data"), "model.data"))
                             : default_rat_data();
    RatConfig rc;
    rc.length = as_int(cfg.at("length"), "length", 1);
    rc.burn_in =
        cfg.contains("burn_in") ? as_int(cfg.at("burn_in"), "burn_in", 0) : 0;
    rc.seed = pick_seed(g, cfg);
    if (cfg.contains("proposals")) {
      const Json& jp = cfg.at("proposals");
      check_keys(jp, "proposals", {},
                 {"theta1_sd", "theta2_sd", "sigma2_eps_sd"});
      if (jp.contains("theta1_sd"))
        rc.theta1_walk_sd = as_number(jp.at("theta1_sd"), "proposals.theta1_sd");
      if (jp.contains("theta2_sd"))
        rc.theta2_walk_sd = as_number(jp.at("theta2_sd"), "proposals.theta2_sd");
      if (jp.contains("sigma2_eps_sd"))
        rc.sigma2_eps_walk_sd =
            as_number(jp.at("sigma2_eps_sd"), "proposals.sigma2_eps_sd");
    }
    const int chains = pick_chains(g, cfg);
    const double t_bar = data.t_bar;
    const std::vector<DerivedColumn> derived = {
        {"theta0",
         [t_bar](const Eigen::Ref<const Eigen::RowVectorXd>& row) {
           return row[60] - t_bar * row[61];
         }},
        {"sigma_eps", [](const Eigen::Ref<const Eigen::RowVectorXd>& row) {
           return std::sqrt(row[64]);
         }}};

    for (int c = 0; c < chains; ++c) {
      rc.stream_id = static_cast<std::uint64_t>(c);
      const Trace tr = run_rat_chain(data, rc);
      clean = emit_trace_outputs(g, tr, chain_suffix(c, chains), derived) && clean;
      // Table-shaped excerpt on stdout: the reported hyperparameters only.
      const auto sums = summarize(tr, derived);
      std::vector<ParamSummary> head;
      for (const auto& s : sums)
        if (s.name == "theta0" || s.name == "theta2c" || s.name == "sigma_eps")
          head.push_back(s);
      std::cout << summary_text(head);
    }
  } else {
    throw ConfigError("unknown model: " + name);
  }
  return clean ? 0 : 4;
}

int cmd_select(const Global& g) {
  const Json cfg = load_config(g.config_path);
  if (!cfg.contains("mode")) throw ConfigError("config: missing key 'mode'");
  const std::string mode = as_string(cfg.at("mode"), "mode");

  RjmcmcConfig rj;
  const auto parse_common = [&](const Json& c) {
    rj.length = as_int(c.at("length"), "length", 1);
    rj.burn_in = c.contains("burn_in") ? as_int(c.at("burn_in"), "burn_in", 0) : 0;
    rj.seed = pick_seed(g, c);
    if (c.contains("prior")) {
      const Json& jp = c.at("prior");
      check_keys(jp, "prior", {"model"}, {"a", "b"});
      const std::string kind = as_string(jp.at("model"), "prior.model");
      if (kind == "beta_binomial")
        rj.model_prior.kind = ModelPrior::Kind::BetaBinomial;
      else if (kind == "uniform")
        rj.model_prior.kind = ModelPrior::Kind::Uniform;
      else
        throw ConfigError("prior.model must be beta_binomial or uniform");
      if (jp.contains("a")) rj.model_prior.a = as_number(jp.at("a"), "prior.a");
      if (jp.contains("b")) rj.model_prior.b = as_number(jp.at("b"), "prior.b");
    }
    if (c.contains("proposals")) {
      const Json& jp = c.at("proposals");
      check_keys(jp, "proposals", {}, {"beta_sd", "sigma2_sd", "u_sd"});
      if (jp.contains("beta_sd"))
        rj.beta_walk_scale = as_number(jp.at("beta_sd"), "proposals.beta_sd");
      if (jp.contains("sigma2_sd"))
        rj.sigma2_walk_scale = as_number(jp.at("sigma2_sd"), "proposals.sigma2_sd");
      if (jp.contains("u_sd"))
        rj.u_scale = as_number(jp.at("u_sd"), "proposals.u_sd");
    }
    if (c.contains("init")) {
      const std::string init = as_string(c.at("init"), "init");
      if (init == "null")
        rj.init = RjmcmcConfig::Init::NullModel;
      else if (init == "full_ols")
        rj.init = RjmcmcConfig::Init::FullOls;
      else
        throw ConfigError("init must be null or full_ols");
    }
  };

  fs::create_directories(g.out_dir);
  const fs::path out(g.out_dir);

  if (mode == "regression") {
    check_keys(cfg, "config", {"data", "mode", "length", "seed"},
               {"burn_in", "prior", "proposals", "init", "standardize", "chains"});
    parse_common(cfg);
    const CsvTable tab = read_csv(as_string(cfg.at("data"), "data"));
    if (tab.values.cols() < 2)
      throw ConfigError("regression data: need a response and covariates");
    RegressionData data;
    data.y = tab.values.col(0);
    data.x = tab.values.rightCols(tab.values.cols() - 1);
    if (cfg.contains("standardize") && cfg.at("standardize").is_boolean() &&
        cfg.at("standardize").get<bool>())
      data = standardize(data);

    const int chains = pick_chains(g, cfg);
    for (int c = 0; c < chains; ++c) {
      rj.stream_id = static_cast<std::uint64_t>(c);
      const ModelTrace mt = rjmcmc(data, rj);
      const std::string sfx = chain_suffix(c, chains);
      write_model_trace_csv((out / ("model_trace" + sfx + ".csv")).string(), mt);
      write_text(out / ("model_freq" + sfx + ".json"), model_frequencies_json(mt));
      std::cout << "chain" << sfx << " modal model: " << modal_model(mt) << "\n";
      for (const auto& a : acceptance_report(mt.move_counts))
        std::cout << "  " << a.label << " acceptance: " << a.rate << " ("
                  << a.accepted << "/" << a.proposed << ")\n";
    }
    return 0;
  }

  if (mode == "dag") {
    check_keys(cfg, "config", {"data", "mode", "length", "seed"},
               {"burn_in", "prior", "proposals", "roots", "threads"});
    parse_common(cfg);
    DagProblem problem = load_dag_problem(as_string(cfg.at("data"), "data"));
    if (cfg.contains("roots")) problem.roots = as_int(cfg.at("roots"), "roots", 1);
    DagConfig dc;
    dc.node = rj;
    if (cfg.contains("threads")) dc.threads = as_int(cfg.at("threads"), "threads", 0);

    const DagNodeSink sink = [&](const DagNodeResult& res) {
      const std::string& nm = problem.names.at(static_cast<std::size_t>(res.node));
      write_model_trace_csv((out / ("node_" + nm + "_trace.csv")).string(),
                            res.trace);
      Json freq;
      for (const auto& [bits, f] : res.frequencies) freq[bits] = f;
      write_text(out / ("node_" + nm + "_freq.json"), freq.dump(2) + "\n");
      std::cout << "node " << nm << " modal parenthood: " << res.modal << "\n";
      for (const auto& a : res.acceptance)
        std::cout << "  " << a.label << " acceptance: " << a.rate << "\n";
    };
    const DagResult result = run_dag_pipeline(problem, dc, sink);
    write_text(out / "edges.csv", dag_edges_csv(result, problem.names));
    write_text(out / "graph.dot", dag_dot(result, problem.names));
    std::cout << "selected " << result.edges.size() << " edges -> "
              << (out / "edges.csv").string() << "\n";
    return 0;
  }

  throw ConfigError("mode must be regression or dag");
}

int cmd_diagnose(const Global& g) {
  const Json cfg = load_config(g.config_path);
  check_keys(cfg, "config", {"trace"}, {"burn_in"});
  Trace tr = read_trace_csv(as_string(cfg.at("trace"), "trace"));
  if (cfg.contains("burn_in")) {
    const int b = as_int(cfg.at("burn_in"), "burn_in", 0);
    if (b >= static_cast<int>(tr.states.rows()))
      throw ConfigError("burn_in exceeds trace length");
    tr.burn_in = b;
  }
  const auto sums = summarize(tr);
  const auto cols = diagnose_trace(tr);
  const auto acc = acceptance_report(tr);
  std::cout << summary_text(sums) << "\n" << diagnostics_text(cols, acc);
  fs::create_directories(g.out_dir);
  write_text(fs::path(g.out_dir) / "diagnostics.json",
             diagnostics_json(sums, cols, acc));
  return 0;
}

void add_common(CLI::App* sub, Global& g) {
  sub->add_option("--config", g.config_path, "JSON run configuration")
      ->required();
  sub->add_option("--seed", g.seed, "Override the config seed")
      ->each([&g](const std::string&) { g.seed_given = true; });
  sub->add_option("--out", g.out_dir, "Output directory (default: out)");
  sub->add_option("--chains", g.chains, "Override the chain count");
  sub->add_flag("--no-plot", g.no_plot, "Skip SVG emission");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Empirical likelihood Bayes: solver, samplers, model selection"};
  app.require_subcommand(1);
  Global g;

  int rc = 0;
  add_common(app.add_subcommand("solve-el", "Solve one EL inner problem"), g);
  add_common(app.add_subcommand("grid", "Log posterior on a 2-D grid"), g);
  add_common(app.add_subcommand("sample", "Run a posterior sampler"), g);
  add_common(app.add_subcommand("select", "Run RJMCMC model selection"), g);
  add_common(
      app.add_subcommand("diagnose", "Re-run diagnostics on a trace CSV"), g);

  app.get_subcommand("solve-el")->callback([&] { rc = cmd_solve_el(g); });
  app.get_subcommand("grid")->callback([&] { rc = cmd_grid(g); });
  app.get_subcommand("sample")->callback([&] { rc = cmd_sample(g); });
  app.get_subcommand("select")->callback([&] { rc = cmd_select(g); });
  app.get_subcommand("diagnose")->callback([&] { rc = cmd_diagnose(g); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InitInfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return rc;
}
