#include "bayesel/models/dag.hpp"

#include <future>
#include <thread>

#include "bayesel/csv.hpp"
#include "bayesel/errors.hpp"

namespace bayesel {

DagProblem load_dag_problem(const std::string& path) {
  const CsvTable tab = read_csv(path);
  if (!tab.had_header)
    throw ConfigError("dag data: node names must come from a header row");
  if (tab.values.cols() < 4)
    throw ConfigError("dag data: need at least 4 nodes");
  DagProblem p;
  p.genes = tab.values;
  p.names = tab.column_names;
  return p;
}

namespace {

DagNodeResult run_node(const DagProblem& problem, const DagConfig& config,
                       int node) {
  RegressionData raw;
  raw.y = problem.genes.col(node);
  raw.x = problem.genes.leftCols(node);
  const RegressionData data = standardize(raw);

  RjmcmcConfig cfg = config.node;
  cfg.stream_id = static_cast<std::uint64_t>(node);
  cfg.init = RjmcmcConfig::Init::NullModel;

  DagNodeResult res;
  res.node = node;
  res.trace = rjmcmc(data, cfg);
  res.frequencies = model_visit_frequencies(res.trace);
  res.modal = modal_model(res.trace);
  res.acceptance = acceptance_report(res.trace.move_counts);
  return res;
}

}  // namespace

DagResult run_dag_pipeline(const DagProblem& problem, const DagConfig& config,
                           const DagNodeSink& sink) {
  const int n_nodes = static_cast<int>(problem.genes.cols());
  if (problem.roots < 1 || problem.roots >= n_nodes)
    throw ConfigError("dag: root count must leave at least one selectable node");
  if (static_cast<int>(problem.names.size()) != n_nodes)
    throw DimensionError("dag: one name per node required");

  int workers = config.threads > 0
                    ? config.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;

  // Node chains are independent; launch in bounded batches and harvest in
  // node order so sinks observe a deterministic sequence.
  DagResult out;
  std::vector<std::future<DagNodeResult>> pending;
  std::vector<int> pending_nodes;
  auto harvest = [&]() {
    for (std::size_t i = 0; i < pending.size(); ++i) {
      DagNodeResult res = pending[i].get();
      if (sink) sink(res);
      if (!config.keep_traces) res.trace = ModelTrace{};
      out.nodes.push_back(std::move(res));
    }
    pending.clear();
    pending_nodes.clear();
  };

  for (int node = problem.roots; node < n_nodes; ++node) {
    pending.push_back(std::async(std::launch::async, run_node,
                                 std::cref(problem), std::cref(config), node));
    pending_nodes.push_back(node);
    if (static_cast<int>(pending.size()) >= workers) harvest();
  }
  harvest();

  for (const auto& nr : out.nodes)
    for (std::size_t j = 0; j < nr.modal.size(); ++j)
      if (nr.modal[j] == '1')
        out.edges.emplace_back(static_cast<int>(j), nr.node);
  return out;
}

std::string dag_edges_csv(const DagResult& result,
                          const std::vector<std::string>& names) {
  std::string out = "parent,child\n";
  for (const auto& [p, c] : result.edges)
    out += names.at(static_cast<std::size_t>(p)) + "," +
           names.at(static_cast<std::size_t>(c)) + "\n";
  return out;
}

std::string dag_dot(const DagResult& result, const std::vector<std::string>& names) {
  std::string out = "digraph parenthood {\n";
  for (const auto& name : names) out += "  \"" + name + "\";\n";
  for (const auto& [p, c] : result.edges)
    out += "  \"" + names.at(static_cast<std::size_t>(p)) + "\" -> \"" +
           names.at(static_cast<std::size_t>(c)) + "\";\n";
  out += "}\n";
  return out;
}

}  // namespace bayesel
