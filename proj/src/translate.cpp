#include "translate.hpp"

#include <algorithm>
#include <sstream>

namespace acqlin {

FunctionalStructure translate_structure(const Database& db) {
  FunctionalStructure f;
  f.add_sort("D", db.domain_size);
  int max_arity = 0;
  for (const auto& r : db.relations) max_arity = std::max(max_arity, r.arity);
  std::vector<int> rel_sort(db.relations.size());
  for (size_t i = 0; i < db.relations.size(); ++i)
    rel_sort[i] = f.add_sort("T_" + db.relations[i].name,
                             static_cast<int32_t>(db.relations[i].card()));
  for (int j = 1; j <= max_arity; ++j) f.add_fn("f" + std::to_string(j));
  f.finalize();
  for (size_t i = 0; i < db.relations.size(); ++i) {
    const auto& r = db.relations[i];
    for (int j = 1; j <= r.arity; ++j) {
      std::vector<NodeId> col(r.card());
      for (int64_t row = 0; row < r.card(); ++row)
        col[row] = static_cast<NodeId>(r.at(row, j - 1));  // field ids are D node ids
      f.set_fn_column(j, rel_sort[i], std::move(col));
    }
  }
  return f;
}

namespace {

int lowest_position(const RelAtom& a, const std::string& v) {
  for (size_t i = 0; i < a.vars.size(); ++i)
    if (a.vars[i] == v) return static_cast<int>(i) + 1;  // 1-based field
  return -1;
}

std::string fn_name(int field) { return "f" + std::to_string(field); }

}  // namespace

TranslateResult translate_query(const RelQuery& q, const QueryClass& cls) {
  if (cls.tag != QueryClassTag::ACQ && cls.tag != QueryClassTag::ACQ_NEQ &&
      cls.tag != QueryClassTag::ACQ_CMP)
    throw Error(ErrorCode::Classification,
                std::string("cannot translate a query classified ") +
                    std::string(query_class_text(cls.tag)));
  if (!cls.forest) throw Error(ErrorCode::Internal, "classification lacks a join forest");
  const int k = static_cast<int>(q.atoms.size());

  // Atom order: for strict queries the witness atom moves to the front so the
  // projection reads entirely off tuple variable 1.
  std::vector<int> order(k);
  for (int i = 0; i < k; ++i) order[i] = i;
  if (cls.strict && cls.strict_atom > 0) {
    order.erase(order.begin() + cls.strict_atom);
    order.insert(order.begin(), cls.strict_atom);
  }
  std::vector<int> var_of_atom(k);  // atom index -> formula variable
  for (int u = 0; u < k; ++u) var_of_atom[order[u]] = u;

  TranslateResult out;
  out.atom_order = order;
  FuncQuery& phi = out.formula;
  phi.free_count = k;
  for (int u = 0; u < k; ++u) {
    FVar v;
    v.name = "t" + std::to_string(u + 1);
    v.memberships.push_back("T_" + q.atoms[order[u]].rel);
    phi.vars.push_back(std::move(v));
  }

  // Repeated variables within one atom: chain successive occurrences.
  for (int u = 0; u < k; ++u) {
    const auto& atom = q.atoms[order[u]];
    std::vector<std::string> seen;
    for (const auto& v : atom.vars) {
      if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
      seen.push_back(v);
      std::vector<int> occ;
      for (size_t i = 0; i < atom.vars.size(); ++i)
        if (atom.vars[i] == v) occ.push_back(static_cast<int>(i) + 1);
      for (size_t i = 0; i + 1 < occ.size(); ++i)
        phi.lits.push_back(FLit{{fn_name(occ[i]), u}, LitOp::Eq, {fn_name(occ[i + 1]), u}});
    }
  }

  // One equality per shared variable per forest edge.
  const JoinForest& forest = *cls.forest;
  for (size_t e = 0; e < forest.edges.size(); ++e) {
    auto [a, b] = forest.edges[e];
    int u = var_of_atom[a], v = var_of_atom[b];
    for (const auto& w : forest.shared[e]) {
      int i = lowest_position(q.atoms[a], w);
      int j = lowest_position(q.atoms[b], w);
      phi.lits.push_back(FLit{{fn_name(i), u}, LitOp::Eq, {fn_name(j), v}});
    }
  }

  // Comparison atoms. Placement for ACQ_CMP comes from the classifier
  // witness; otherwise each side picks its root-closest atom.
  std::vector<int> depth(k, 0);
  {
    std::vector<std::vector<int>> adj(k);
    for (auto [a, b] : forest.edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::vector<int> seen(k, 0);
    for (int root = 0; root < k; ++root) {
      int r = order[root];  // component roots in formula-variable order
      if (seen[r]) continue;
      std::vector<int> stack{r};
      seen[r] = 1;
      depth[r] = 0;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : adj[x])
          if (!seen[y]) {
            seen[y] = 1;
            depth[y] = depth[x] + 1;
            stack.push_back(y);
          }
      }
    }
  }
  auto closest_atom = [&](const std::string& v) {
    int best = -1;
    for (int a = 0; a < k; ++a) {
      if (lowest_position(q.atoms[a], v) < 0) continue;
      if (best < 0 || depth[a] < depth[best] ||
          (depth[a] == depth[best] && var_of_atom[a] < var_of_atom[best]))
        best = a;
    }
    if (best < 0)
      throw Error(ErrorCode::Input, "comparison variable " + v + " occurs in no atom");
    return best;
  };
  for (size_t ci = 0; ci < q.comps.size(); ++ci) {
    const auto& comp = q.comps[ci];
    int atom_l, atom_r;
    if (cls.placement) {
      const auto& pl = cls.placement->entries[ci];
      if (pl.within_atom) {
        atom_l = atom_r = pl.atom;
      } else {
        auto [a, b] = forest.edges[pl.edge];
        atom_l = pl.lhs_first ? a : b;
        atom_r = pl.lhs_first ? b : a;
      }
    } else {
      atom_l = closest_atom(comp.lhs);
      atom_r = closest_atom(comp.rhs);
    }
    int i = lowest_position(q.atoms[atom_l], comp.lhs);
    int j = lowest_position(q.atoms[atom_r], comp.rhs);
    phi.lits.push_back(FLit{{fn_name(i), var_of_atom[atom_l]},
                            comp_to_lit(comp.op),
                            {fn_name(j), var_of_atom[atom_r]}});
  }

  // Projection: strict queries read every free variable off atom 1.
  for (const auto& y : q.free_vars) {
    ProjectionSpec::Entry e;
    e.var = y;
    if (cls.strict) {
      e.atom_var = 0;
      e.field = lowest_position(q.atoms[order[0]], y);
    } else {
      for (int u = 0; u < k; ++u) {
        int pos = lowest_position(q.atoms[order[u]], y);
        if (pos > 0) {
          e.atom_var = u;
          e.field = pos;
          break;
        }
      }
    }
    if (e.field < 0) throw Error(ErrorCode::Internal, "projection lost variable " + y);
    out.proj.entries.push_back(std::move(e));
  }
  return out;
}

FuncQuery build_eval_query(const TranslateResult& tr, int free_var_count) {
  const int b = free_var_count;
  FuncQuery q;
  q.free_count = b;
  for (int h = 0; h < b; ++h) {
    FVar v;
    v.name = "z" + std::to_string(h + 1);
    v.memberships.push_back("D");
    q.vars.push_back(std::move(v));
  }
  for (const auto& v : tr.formula.vars) q.vars.push_back(v);
  for (int h = 0; h < b; ++h) {
    const auto& e = tr.proj.entries[h];
    q.lits.push_back(FLit{{"", h}, LitOp::Eq, {fn_name(e.field), b + e.atom_var}});
  }
  for (const auto& l : tr.formula.lits) {
    FLit shifted = l;
    shifted.lhs.var += b;
    shifted.rhs.var += b;
    q.lits.push_back(shifted);
  }
  return q;
}

std::set<std::vector<ElemId>> project_results(const std::set<std::vector<NodeId>>& rel,
                                              const ProjectionSpec& proj,
                                              const FunctionalStructure& f) {
  std::set<std::vector<ElemId>> out;
  for (const auto& t : rel) {
    std::vector<ElemId> row;
    row.reserve(proj.entries.size());
    for (const auto& e : proj.entries) {
      NodeId v = f.apply(f.find_fn(fn_name(e.field)), t[e.atom_var]);
      if (v == kUndef)
        throw Error(ErrorCode::Internal, "projection applied outside the formula's result");
      row.push_back(static_cast<ElemId>(v));
    }
    out.insert(std::move(row));
  }
  return out;
}

namespace {

std::string render_term(const FuncQuery& q, const Term& t) {
  if (t.fn.empty()) return q.vars[t.var].name;
  return t.fn + "(" + q.vars[t.var].name + ")";
}

}  // namespace

std::string render_formula(const FuncQuery& q) {
  std::ostringstream os;
  os << "phi(";
  for (int i = 0; i < q.free_count; ++i) os << (i ? "," : "") << q.vars[i].name;
  os << ") := ";
  bool quantified = false;
  for (size_t i = q.free_count; i < q.vars.size(); ++i) {
    os << (quantified ? ", " : "exists ") << q.vars[i].name;
    quantified = true;
  }
  if (quantified) os << " : ";
  bool first = true;
  for (const auto& v : q.vars)
    for (const auto& m : v.memberships) {
      os << (first ? "" : " & ") << m << "(" << v.name << ")";
      first = false;
    }
  for (const auto& l : q.lits) {
    os << (first ? "" : " & ") << render_term(q, l.lhs) << " " << lit_op_text(l.op) << " "
       << render_term(q, l.rhs);
    first = false;
  }
  return os.str();
}

std::string render_projection(const ProjectionSpec& proj) {
  std::ostringstream os;
  os << "project:";
  if (proj.entries.empty()) os << " (boolean)";
  for (size_t i = 0; i < proj.entries.size(); ++i) {
    const auto& e = proj.entries[i];
    os << (i ? ", " : " ") << e.var << " = f" << e.field << "(t" << e.atom_var + 1 << ")";
  }
  return os.str();
}

}  // namespace acqlin
