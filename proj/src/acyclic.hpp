#pragma once

#include <optional>
#include <string>
#include <vector>

#include "model.hpp"

namespace acqlin {

enum class QueryClassTag { ACQ, ACQ_NEQ, ACQ_CMP, NOT_ACYCLIC, CMP_VIOLATION };

std::string_view query_class_text(QueryClassTag tag);

struct GyoStep {
  enum Kind { RemoveEdgeContained, RemoveEmptyEdge, RemoveVertex } kind;
  int edge = -1;       // removed hyperedge (atom index)
  int container = -1;  // witness hyperedge for a containment removal
  int vertex = -1;     // removed vertex index
};

struct GyoTrace {
  bool acyclic = false;
  std::vector<GyoStep> steps;
  std::vector<std::string> vertices;              // vertex names of the input
  std::vector<std::vector<int>> residual_edges;   // leftover hyperedges by atom index
  std::vector<int> residual_atoms;                // original indexes of leftovers

  std::string render() const;
};

Hypergraph build_hypergraph(const RelQuery& q);

GyoTrace gyo_reduce(const Hypergraph& h);

/// Replays trace steps from h and checks the recorded residual is reached.
bool replay_gyo(const Hypergraph& h, const GyoTrace& t);

/// Join forest derived from the GYO trace: one edge per containment step.
/// Precondition: the query is acyclic.
JoinForest build_join_forest(const RelQuery& q);

/// Where each comparison atom was placed to witness the restricted-comparison
/// conditions: inside one atom, or across one forest edge.
struct ComparisonPlacement {
  struct Entry {
    bool within_atom = false;
    int atom = -1;       // within-atom: the atom holding both variables
    int edge = -1;       // otherwise: index into JoinForest::edges
    bool lhs_first = true;  // lhs variable sits in edge.first's atom
  };
  std::vector<Entry> entries;  // one per comparison atom
};

struct QueryClass {
  QueryClassTag tag = QueryClassTag::NOT_ACYCLIC;
  bool strict = false;
  int strict_atom = -1;  // witness atom containing all free variables
  std::optional<JoinForest> forest;
  GyoTrace trace;
  std::optional<ComparisonPlacement> placement;  // for ACQ_CMP
  std::string detail;
};

QueryClass classify(const RelQuery& q);

// ---------------------------------------------------------------------------
// Functional query graphs

struct VarGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // deduplicated, a < b

  bool acyclic() const;
};

/// Graph over the variables of a conjunctive functional query; edges come
/// from equality atoms between distinct variables.
VarGraph functional_graph(const FuncQuery& q);

/// Graph of one clause of a universal clause-set query; edges come from the
/// negated equality literals of the clause.
VarGraph clause_graph(const ClauseQuery& q, int clause);

bool clause_query_acyclic(const ClauseQuery& q);

/// Strictness for functional queries: at most one free variable.
inline bool strict_functional(const FuncQuery& q) { return q.free_count <= 1; }

}  // namespace acqlin
