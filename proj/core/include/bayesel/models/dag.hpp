#ifndef BAYESEL_MODELS_DAG_HPP
#define BAYESEL_MODELS_DAG_HPP

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bayesel/rjmcmc.hpp"

namespace bayesel {

// Parenthood selection along a fixed node order: candidates for node k are
// the nodes before it, the first `roots` nodes keep no parents, and each
// selection runs independently, so the assembled edge list is acyclic by
// construction.
struct DagProblem {
  Matrix genes;                     // observations x nodes
  std::vector<std::string> names;   // one per node, in order
  int roots = 3;
};

// Header row gives the node names and the column order fixes the node order.
DagProblem load_dag_problem(const std::string& path);

struct DagConfig {
  RjmcmcConfig node;    // per-node sampler settings; stream id is overwritten
  int threads = 0;      // concurrent node chains; 0 picks the hardware count
  bool keep_traces = false;  // retain full per-node traces in the result
};

struct DagNodeResult {
  int node = 0;                     // index into the node order
  std::string modal;                // gamma bits over the node's candidates
  std::map<std::string, double> frequencies;
  std::vector<AcceptanceEntry> acceptance;
  ModelTrace trace;                 // empty unless keep_traces or a sink ran
};

struct DagResult {
  std::vector<DagNodeResult> nodes;              // non-root nodes in order
  std::vector<std::pair<int, int>> edges;        // (parent, child)
};

// Called once per node in node order with the trace still attached, before it
// is dropped; lets callers stream large traces to disk.
using DagNodeSink = std::function<void(const DagNodeResult&)>;

// Runs one RJMCMC chain per non-root node (standardized response and
// candidates, null-model start, stream id = node index) and assembles the
// modal parenthoods into an edge list.
DagResult run_dag_pipeline(const DagProblem& problem, const DagConfig& config,
                           const DagNodeSink& sink = nullptr);

std::string dag_edges_csv(const DagResult& result,
                          const std::vector<std::string>& names);
std::string dag_dot(const DagResult& result, const std::vector<std::string>& names);

}  // namespace bayesel

#endif
