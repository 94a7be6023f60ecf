#include "acyclic.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace acqlin {

std::string_view query_class_text(QueryClassTag tag) {
  switch (tag) {
    case QueryClassTag::ACQ: return "ACQ";
    case QueryClassTag::ACQ_NEQ: return "ACQ_NEQ";
    case QueryClassTag::ACQ_CMP: return "ACQ_CMP";
    case QueryClassTag::NOT_ACYCLIC: return "NOT_ACYCLIC";
    case QueryClassTag::CMP_VIOLATION: return "CMP_VIOLATION";
  }
  return "?";
}

Hypergraph build_hypergraph(const RelQuery& q) {
  Hypergraph h;
  auto index_of = [&h](const std::string& v) {
    for (size_t i = 0; i < h.vertices.size(); ++i)
      if (h.vertices[i] == v) return static_cast<int>(i);
    h.vertices.push_back(v);
    return static_cast<int>(h.vertices.size()) - 1;
  };
  for (const auto& a : q.atoms) {
    std::vector<int> edge;
    for (const auto& v : a.vars) {
      int idx = index_of(v);
      if (std::find(edge.begin(), edge.end(), idx) == edge.end()) edge.push_back(idx);
    }
    std::sort(edge.begin(), edge.end());
    h.edges.push_back(std::move(edge));
  }
  return h;
}

namespace {

struct GyoState {
  std::vector<std::vector<int>> edges;  // current vertex sets (sorted)
  std::vector<uint8_t> alive;

  bool contained(int u, int v) const {
    return std::includes(edges[v].begin(), edges[v].end(), edges[u].begin(), edges[u].end());
  }
};

}  // namespace

GyoTrace gyo_reduce(const Hypergraph& h) {
  GyoTrace t;
  t.vertices = h.vertices;
  GyoState st;
  st.edges = h.edges;
  st.alive.assign(h.edges.size(), 1);
  const int m = static_cast<int>(h.edges.size());
  const int nv = static_cast<int>(h.vertices.size());
  bool changed = true;
  while (changed) {
    changed = false;
    // Rule 1: remove hyperedges contained in another (or empty), lowest index
    // first.
    for (int u = 0; u < m; ++u) {
      if (!st.alive[u]) continue;
      if (st.edges[u].empty()) {
        st.alive[u] = 0;
        t.steps.push_back(GyoStep{GyoStep::RemoveEmptyEdge, u, -1, -1});
        changed = true;
        continue;
      }
      for (int v = 0; v < m; ++v) {
        if (v == u || !st.alive[v]) continue;
        if (st.contained(u, v)) {
          st.alive[u] = 0;
          t.steps.push_back(GyoStep{GyoStep::RemoveEdgeContained, u, v, -1});
          changed = true;
          break;
        }
      }
    }
    // Rule 2: remove vertices that appear in at most one hyperedge.
    std::vector<int> count(nv, 0);
    for (int u = 0; u < m; ++u)
      if (st.alive[u])
        for (int x : st.edges[u]) ++count[x];
    for (int x = 0; x < nv; ++x) {
      if (count[x] == 0 || count[x] > 1) continue;
      for (int u = 0; u < m; ++u) {
        if (!st.alive[u]) continue;
        auto it = std::find(st.edges[u].begin(), st.edges[u].end(), x);
        if (it != st.edges[u].end()) {
          st.edges[u].erase(it);
          t.steps.push_back(GyoStep{GyoStep::RemoveVertex, u, -1, x});
          changed = true;
          break;
        }
      }
    }
  }
  for (int u = 0; u < m; ++u)
    if (st.alive[u]) {
      t.residual_edges.push_back(st.edges[u]);
      t.residual_atoms.push_back(u);
    }
  t.acyclic = t.residual_edges.empty();
  return t;
}

bool replay_gyo(const Hypergraph& h, const GyoTrace& t) {
  GyoState st;
  st.edges = h.edges;
  st.alive.assign(h.edges.size(), 1);
  for (const auto& s : t.steps) {
    switch (s.kind) {
      case GyoStep::RemoveEmptyEdge:
        if (!st.alive[s.edge] || !st.edges[s.edge].empty()) return false;
        st.alive[s.edge] = 0;
        break;
      case GyoStep::RemoveEdgeContained:
        if (!st.alive[s.edge] || !st.alive[s.container]) return false;
        if (!st.contained(s.edge, s.container)) return false;
        st.alive[s.edge] = 0;
        break;
      case GyoStep::RemoveVertex: {
        if (!st.alive[s.edge]) return false;
        int occurrences = 0;
        for (size_t u = 0; u < st.edges.size(); ++u)
          if (st.alive[u] &&
              std::find(st.edges[u].begin(), st.edges[u].end(), s.vertex) != st.edges[u].end())
            ++occurrences;
        if (occurrences > 1) return false;
        auto it = std::find(st.edges[s.edge].begin(), st.edges[s.edge].end(), s.vertex);
        if (it == st.edges[s.edge].end()) return false;
        st.edges[s.edge].erase(it);
        break;
      }
    }
  }
  std::vector<std::vector<int>> residual;
  for (size_t u = 0; u < st.edges.size(); ++u)
    if (st.alive[u]) residual.push_back(st.edges[u]);
  return residual == t.residual_edges;
}

std::string GyoTrace::render() const {
  std::ostringstream os;
  for (const auto& s : steps) {
    switch (s.kind) {
      case GyoStep::RemoveEdgeContained:
        os << "remove atom " << s.edge + 1 << " (contained in atom " << s.container + 1 << ")\n";
        break;
      case GyoStep::RemoveEmptyEdge:
        os << "remove atom " << s.edge + 1 << " (empty)\n";
        break;
      case GyoStep::RemoveVertex:
        os << "remove variable " << vertices[s.vertex] << " from atom " << s.edge + 1 << "\n";
        break;
    }
  }
  os << (acyclic ? "residual: empty\n" : "residual: nonempty\n");
  for (size_t i = 0; i < residual_edges.size(); ++i) {
    os << "  atom " << residual_atoms[i] + 1 << ": {";
    for (size_t j = 0; j < residual_edges[i].size(); ++j)
      os << (j ? "," : "") << vertices[residual_edges[i][j]];
    os << "}\n";
  }
  return os.str();
}

namespace {

std::vector<std::string> shared_original_vars(const RelAtom& a, const RelAtom& b) {
  std::vector<std::string> out;
  for (const auto& v : a.vars) {
    if (std::find(out.begin(), out.end(), v) != out.end()) continue;
    if (std::find(b.vars.begin(), b.vars.end(), v) != b.vars.end()) out.push_back(v);
  }
  return out;
}

}  // namespace

JoinForest build_join_forest(const RelQuery& q) {
  Hypergraph h = build_hypergraph(q);
  GyoTrace t = gyo_reduce(h);
  if (!t.acyclic)
    throw Error(ErrorCode::Classification, "build_join_forest called on a cyclic query");
  JoinForest f;
  f.atom_count = static_cast<int>(q.atoms.size());
  for (const auto& s : t.steps) {
    if (s.kind != GyoStep::RemoveEdgeContained) continue;
    auto shared = shared_original_vars(q.atoms[s.edge], q.atoms[s.container]);
    if (shared.empty()) continue;  // attach nothing; forest may be disconnected
    f.edges.emplace_back(s.edge, s.container);
    f.shared.push_back(std::move(shared));
  }
  return f;
}

namespace {

// Kuhn's augmenting-path matching: comparisons to forest edges, capacity 1.
bool try_match(int c, const std::vector<std::vector<int>>& cand, std::vector<int>& edge_owner,
               std::vector<uint8_t>& visited) {
  for (int e : cand[c]) {
    if (visited[e]) continue;
    visited[e] = 1;
    if (edge_owner[e] < 0 || try_match(edge_owner[e], cand, edge_owner, visited)) {
      edge_owner[e] = c;
      return true;
    }
  }
  return false;
}

bool atom_has(const RelAtom& a, const std::string& v) {
  return std::find(a.vars.begin(), a.vars.end(), v) != a.vars.end();
}

}  // namespace

QueryClass classify(const RelQuery& q) {
  QueryClass out;
  Hypergraph h = build_hypergraph(q);
  out.trace = gyo_reduce(h);
  // Strictness: some relational atom contains all free variables.
  for (size_t i = 0; i < q.atoms.size(); ++i) {
    bool all = true;
    for (const auto& y : q.free_vars)
      if (!atom_has(q.atoms[i], y)) {
        all = false;
        break;
      }
    if (all) {
      out.strict = true;
      out.strict_atom = static_cast<int>(i);
      break;
    }
  }
  if (!out.trace.acyclic) {
    out.tag = QueryClassTag::NOT_ACYCLIC;
    out.detail = "hypergraph does not reduce to empty under the GYO rules";
    return out;
  }
  out.forest = build_join_forest(q);
  if (q.comps.empty()) {
    out.tag = QueryClassTag::ACQ;
    return out;
  }
  bool only_neq = true;
  for (const auto& c : q.comps)
    if (c.op != CompOp::Neq) only_neq = false;
  if (only_neq) {
    out.tag = QueryClassTag::ACQ_NEQ;
    return out;
  }
  // Restricted-comparison conditions: each comparison sits inside one atom or
  // across a forest edge, with at most one comparison per edge.
  const JoinForest& f = *out.forest;
  ComparisonPlacement placement;
  placement.entries.resize(q.comps.size());
  std::vector<int> needing;                    // comparisons that need an edge
  std::vector<std::vector<int>> cand;          // candidate edges per such comparison
  std::vector<std::vector<uint8_t>> lhs_first;  // orientation per candidate
  for (size_t ci = 0; ci < q.comps.size(); ++ci) {
    const auto& c = q.comps[ci];
    int within = -1;
    for (size_t i = 0; i < q.atoms.size(); ++i)
      if (atom_has(q.atoms[i], c.lhs) && atom_has(q.atoms[i], c.rhs)) {
        within = static_cast<int>(i);
        break;
      }
    if (within >= 0) {
      placement.entries[ci] = {true, within, -1, true};
      continue;
    }
    std::vector<int> edges;
    std::vector<uint8_t> orient;
    for (size_t e = 0; e < f.edges.size(); ++e) {
      const auto& [a, b] = f.edges[e];
      if (atom_has(q.atoms[a], c.lhs) && atom_has(q.atoms[b], c.rhs)) {
        edges.push_back(static_cast<int>(e));
        orient.push_back(1);
      } else if (atom_has(q.atoms[a], c.rhs) && atom_has(q.atoms[b], c.lhs)) {
        edges.push_back(static_cast<int>(e));
        orient.push_back(0);
      }
    }
    if (edges.empty()) {
      out.tag = QueryClassTag::CMP_VIOLATION;
      out.detail = "comparison " + c.lhs + std::string(comp_op_text(c.op)) + c.rhs +
                   " relates variables not inside one atom nor along a forest edge";
      return out;
    }
    cand.push_back(std::move(edges));
    lhs_first.push_back(std::move(orient));
    needing.push_back(static_cast<int>(ci));
  }
  std::vector<int> edge_owner(f.edges.size(), -1);
  for (size_t c = 0; c < needing.size(); ++c) {
    std::vector<uint8_t> visited(f.edges.size(), 0);
    if (!try_match(static_cast<int>(c), cand, edge_owner, visited)) {
      out.tag = QueryClassTag::CMP_VIOLATION;
      out.detail = "more than one comparison would share a forest edge";
      return out;
    }
  }
  for (size_t e = 0; e < edge_owner.size(); ++e) {
    if (edge_owner[e] < 0) continue;
    int local = edge_owner[e];
    int ci = needing[local];
    bool lf = false;
    for (size_t pos = 0; pos < cand[local].size(); ++pos)
      if (cand[local][pos] == static_cast<int>(e)) {
        lf = lhs_first[local][pos];
        break;
      }
    placement.entries[ci] = {false, -1, static_cast<int>(e), lf};
  }
  out.placement = std::move(placement);
  out.tag = QueryClassTag::ACQ_CMP;
  return out;
}

// ---------------------------------------------------------------------------
// Functional query graphs

bool VarGraph::acyclic() const {
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto root = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : edges) {
    int ra = root(a), rb = root(b);
    if (ra == rb) return false;
    parent[ra] = rb;
  }
  return true;
}

namespace {

VarGraph graph_from_pairs(int n, std::vector<std::pair<int, int>> pairs) {
  for (auto& [a, b] : pairs)
    if (a > b) std::swap(a, b);
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return VarGraph{n, std::move(pairs)};
}

}  // namespace

VarGraph functional_graph(const FuncQuery& q) {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& l : q.lits)
    if (l.op == LitOp::Eq && l.lhs.var != l.rhs.var) pairs.emplace_back(l.lhs.var, l.rhs.var);
  return graph_from_pairs(static_cast<int>(q.vars.size()), std::move(pairs));
}

VarGraph clause_graph(const ClauseQuery& q, int clause) {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& e : q.clauses[clause].eqs)
    if (e.neg && e.lhs.var != e.rhs.var) pairs.emplace_back(e.lhs.var, e.rhs.var);
  return graph_from_pairs(static_cast<int>(q.vars.size()), std::move(pairs));
}

bool clause_query_acyclic(const ClauseQuery& q) {
  for (size_t i = 0; i < q.clauses.size(); ++i)
    if (!clause_graph(q, static_cast<int>(i)).acyclic()) return false;
  return true;
}

}  // namespace acqlin
