#include "oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

namespace acqlin {

OracleBudget oracle_budget_from_env() {
  OracleBudget b;
  if (const char* env = std::getenv("ACQLIN_ORACLE_BUDGET")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) b.max_assignments = v;
  }
  return b;
}

namespace {

void check_budget(int64_t domain, int64_t vars, const OracleBudget& b) {
  if (domain > b.max_domain)
    throw Error(ErrorCode::Budget, "oracle: domain exceeds budget");
  double cost = 1;
  for (int64_t i = 0; i < vars; ++i) {
    cost *= std::max<int64_t>(domain, 1);
    if (cost > static_cast<double>(b.max_assignments))
      throw Error(ErrorCode::Budget, "oracle: assignment space exceeds budget");
  }
}

struct RelBound {
  std::vector<std::string> vars;
  std::vector<std::set<std::vector<ElemId>>> tuple_sets;  // aligned with q.atoms
  std::vector<std::pair<int, std::vector<int>>> atom_vars;  // (atom, var indexes)
  std::vector<std::tuple<int, CompOp, int>> comps;
  int free_count = 0;
};

RelBound bind_rel(const Database& db, const RelQuery& q) {
  RelBound b;
  b.vars = q.all_vars();
  // all_vars lists free variables first
  b.free_count = static_cast<int>(q.free_vars.size());
  auto var_index = [&b](const std::string& v) {
    for (size_t i = 0; i < b.vars.size(); ++i)
      if (b.vars[i] == v) return static_cast<int>(i);
    throw Error(ErrorCode::Internal, "unbound variable " + v);
  };
  for (const auto& a : q.atoms) {
    const Relation* r = db.find(a.rel);
    if (!r) throw Error(ErrorCode::Input, "unknown relation " + a.rel);
    if (r->arity != static_cast<int>(a.vars.size()))
      throw Error(ErrorCode::Input, "arity mismatch for " + a.rel);
    std::set<std::vector<ElemId>> tuples;
    for (int64_t row = 0; row < r->card(); ++row) {
      std::vector<ElemId> t(r->arity);
      for (int c = 0; c < r->arity; ++c) t[c] = r->at(row, c);
      tuples.insert(std::move(t));
    }
    std::vector<int> idx;
    for (const auto& v : a.vars) idx.push_back(var_index(v));
    b.atom_vars.emplace_back(static_cast<int>(b.tuple_sets.size()), std::move(idx));
    b.tuple_sets.push_back(std::move(tuples));
  }
  for (const auto& c : q.comps) b.comps.emplace_back(var_index(c.lhs), c.op, var_index(c.rhs));
  return b;
}

bool rel_matrix_true(const RelBound& b, const std::vector<ElemId>& asg) {
  for (const auto& [atom, idx] : b.atom_vars) {
    std::vector<ElemId> t;
    t.reserve(idx.size());
    for (int i : idx) t.push_back(asg[i]);
    if (!b.tuple_sets[atom].count(t)) return false;
  }
  for (const auto& [l, op, r] : b.comps)
    if (!atom_true(comp_to_lit(op), asg[l], asg[r])) return false;
  return true;
}

}  // namespace

std::set<std::vector<ElemId>> oracle_eval_rel(const Database& db, const RelQuery& q,
                                              const OracleBudget& budget) {
  RelBound b = bind_rel(db, q);
  check_budget(db.domain_size, static_cast<int64_t>(b.vars.size()), budget);
  std::set<std::vector<ElemId>> out;
  std::vector<ElemId> asg(b.vars.size(), 0);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == b.vars.size()) {
      if (rel_matrix_true(b, asg))
        out.insert(std::vector<ElemId>(asg.begin(), asg.begin() + b.free_count));
      return;
    }
    for (ElemId v = 0; v < db.domain_size; ++v) {
      asg[i] = v;
      rec(i + 1);
    }
  };
  if (b.vars.empty()) {
    if (rel_matrix_true(b, asg)) out.insert({});
    return out;
  }
  if (db.domain_size == 0) return out;
  rec(0);
  return out;
}

std::set<std::vector<ElemId>> oracle_eval_rel_iterative(const Database& db, const RelQuery& q,
                                                        const OracleBudget& budget) {
  RelBound b = bind_rel(db, q);
  check_budget(db.domain_size, static_cast<int64_t>(b.vars.size()), budget);
  std::set<std::vector<ElemId>> out;
  const size_t n = b.vars.size();
  if (n == 0) {
    if (rel_matrix_true(b, {})) out.insert({});
    return out;
  }
  if (db.domain_size == 0) return out;
  std::vector<ElemId> asg(n, 0);
  while (true) {
    if (rel_matrix_true(b, asg))
      out.insert(std::vector<ElemId>(asg.begin(), asg.begin() + b.free_count));
    size_t i = n;
    while (i > 0) {
      --i;
      if (++asg[i] < db.domain_size) break;
      asg[i] = 0;
      if (i == 0) return out;
    }
  }
}

// ---------------------------------------------------------------------------
// Functional formulas

namespace {

struct FuncBound {
  // per literal: fn ids resolved; per var: membership test memberships
  struct Lit {
    int lf, lx, rf, rx;
    LitOp op;
  };
  std::vector<Lit> lits;
  std::vector<std::vector<int>> var_sorts;  // resolved sort index (or ~pred index)
};

int resolve_unary(const FunctionalStructure& f, const std::string& name) {
  int s = f.find_sort(name);
  if (s >= 0) return s;
  int p = f.find_pred(name);
  if (p >= 0) return ~p;
  throw Error(ErrorCode::Input, "unknown unary relation " + name);
}

bool in_unary(const FunctionalStructure& f, int code, NodeId x) {
  if (code >= 0) return f.sort_of(x) == code;
  return f.preds[~code].bits[x] != 0;
}

FuncBound bind_func(const FunctionalStructure& f, const FuncQuery& q) {
  FuncBound b;
  for (const auto& l : q.lits) {
    int lf = f.find_fn(l.lhs.fn);
    int rf = f.find_fn(l.rhs.fn);
    if (lf < 0) throw Error(ErrorCode::Input, "unknown function " + l.lhs.fn);
    if (rf < 0) throw Error(ErrorCode::Input, "unknown function " + l.rhs.fn);
    b.lits.push_back({lf, l.lhs.var, rf, l.rhs.var, l.op});
  }
  for (const auto& v : q.vars) {
    std::vector<int> codes;
    for (const auto& m : v.memberships) codes.push_back(resolve_unary(f, m));
    b.var_sorts.push_back(std::move(codes));
  }
  return b;
}

bool func_matrix_true(const FunctionalStructure& f, const FuncBound& b,
                      const std::vector<NodeId>& asg) {
  for (size_t v = 0; v < b.var_sorts.size(); ++v)
    for (int code : b.var_sorts[v])
      if (!in_unary(f, code, asg[v])) return false;
  for (const auto& l : b.lits)
    if (!atom_true(l.op, f.apply(l.lf, asg[l.lx]), f.apply(l.rf, asg[l.rx]))) return false;
  return true;
}

}  // namespace

std::set<std::vector<NodeId>> oracle_eval_func(const FunctionalStructure& f, const FuncQuery& q,
                                               const OracleBudget& budget) {
  FuncBound b = bind_func(f, q);
  check_budget(f.total, static_cast<int64_t>(q.vars.size()), budget);
  std::set<std::vector<NodeId>> out;
  if (q.vars.empty()) {
    if (func_matrix_true(f, b, {})) out.insert({});
    return out;
  }
  if (f.total == 0) return out;
  std::vector<NodeId> asg(q.vars.size(), 0);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == q.vars.size()) {
      if (func_matrix_true(f, b, asg))
        out.insert(std::vector<NodeId>(asg.begin(), asg.begin() + q.free_count));
      return;
    }
    for (NodeId v = 0; v < f.total; ++v) {
      asg[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::set<std::vector<NodeId>> oracle_eval_func_iterative(const FunctionalStructure& f,
                                                         const FuncQuery& q,
                                                         const OracleBudget& budget) {
  FuncBound b = bind_func(f, q);
  check_budget(f.total, static_cast<int64_t>(q.vars.size()), budget);
  std::set<std::vector<NodeId>> out;
  const size_t n = q.vars.size();
  if (n == 0) {
    if (func_matrix_true(f, b, {})) out.insert({});
    return out;
  }
  if (f.total == 0) return out;
  std::vector<NodeId> asg(n, 0);
  while (true) {
    if (func_matrix_true(f, b, asg))
      out.insert(std::vector<NodeId>(asg.begin(), asg.begin() + q.free_count));
    size_t i = n;
    while (i > 0) {
      --i;
      if (++asg[i] < f.total) break;
      asg[i] = 0;
      if (i == 0) return out;
    }
  }
}

// ---------------------------------------------------------------------------
// Clause-set formulas

namespace {

struct ClauseBound {
  struct EqL {
    int lf, lx, rf, rx;
    bool neg;
  };
  struct MemL {
    int code, x;
    bool neg;
  };
  std::vector<std::vector<EqL>> eqs;    // per clause
  std::vector<std::vector<MemL>> mems;  // per clause
  std::vector<std::vector<int>> var_sorts;
};

ClauseBound bind_clauses(const FunctionalStructure& f, const ClauseQuery& q) {
  ClauseBound b;
  for (const auto& c : q.clauses) {
    std::vector<ClauseBound::EqL> eqs;
    std::vector<ClauseBound::MemL> mems;
    for (const auto& e : c.eqs) {
      int lf = f.find_fn(e.lhs.fn);
      int rf = f.find_fn(e.rhs.fn);
      if (lf < 0 || rf < 0) throw Error(ErrorCode::Input, "unknown function in clause");
      eqs.push_back({lf, e.lhs.var, rf, e.rhs.var, e.neg});
    }
    for (const auto& m : c.mems) mems.push_back({resolve_unary(f, m.pred), m.var, m.neg});
    b.eqs.push_back(std::move(eqs));
    b.mems.push_back(std::move(mems));
  }
  for (const auto& v : q.vars) {
    std::vector<int> codes;
    for (const auto& m : v.memberships) codes.push_back(resolve_unary(f, m));
    b.var_sorts.push_back(std::move(codes));
  }
  return b;
}

bool clause_true(const FunctionalStructure& f, const ClauseBound& b, size_t ci,
                 const std::vector<NodeId>& asg) {
  for (const auto& e : b.eqs[ci])
    if (atom_true(e.neg ? LitOp::Neq : LitOp::Eq, f.apply(e.lf, asg[e.lx]),
                  f.apply(e.rf, asg[e.rx])))
      return true;
  for (const auto& m : b.mems[ci])
    if (in_unary(f, m.code, asg[m.x]) != m.neg) return true;
  return false;
}

}  // namespace

std::set<std::vector<NodeId>> oracle_eval_clauses(const FunctionalStructure& f,
                                                  const ClauseQuery& q,
                                                  const OracleBudget& budget) {
  ClauseBound b = bind_clauses(f, q);
  check_budget(f.total, static_cast<int64_t>(q.vars.size()), budget);
  std::set<std::vector<NodeId>> out;
  const size_t n = q.vars.size();
  const size_t free_n = static_cast<size_t>(q.free_count);
  if (f.total == 0) {
    if (free_n == 0) out.insert({});  // universals hold vacuously
    return out;
  }
  std::vector<NodeId> asg(n, 0);
  // Bound variables are relativized: assignments leaving a bound variable's
  // membership sets satisfy the quantifier vacuously.
  std::function<bool(size_t)> all_good = [&](size_t i) -> bool {
    if (i == n) {
      for (size_t ci = 0; ci < b.eqs.size(); ++ci)
        if (!clause_true(f, b, ci, asg)) return false;
      return true;
    }
    for (NodeId v = 0; v < f.total; ++v) {
      asg[i] = v;
      bool in = true;
      for (int code : b.var_sorts[i])
        if (!in_unary(f, code, v)) in = false;
      if (!in) continue;
      if (!all_good(i + 1)) return false;
    }
    return true;
  };
  std::function<void(size_t)> rec_free = [&](size_t i) {
    if (i == free_n) {
      bool in = true;
      for (size_t v = 0; v < free_n && in; ++v)
        for (int code : b.var_sorts[v])
          if (!in_unary(f, code, asg[v])) in = false;
      if (in && all_good(free_n))
        out.insert(std::vector<NodeId>(asg.begin(), asg.begin() + free_n));
      return;
    }
    for (NodeId v = 0; v < f.total; ++v) {
      asg[i] = v;
      rec_free(i + 1);
    }
  };
  rec_free(0);
  return out;
}

// ---------------------------------------------------------------------------
// Samples

std::vector<Sample> oracle_min_samples(const SampleProblem& p, const OracleBudget& budget) {
  std::vector<int32_t> universe;
  for (const auto& row : p.g)
    for (int32_t v : row)
      if (v < p.defined_bound) universe.push_back(v);
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  double cost = 1;
  for (int j = 0; j < p.k; ++j) {
    cost *= static_cast<double>(universe.size()) + 1;
    if (cost > static_cast<double>(budget.max_assignments))
      throw Error(ErrorCode::Budget, "oracle: candidate space exceeds budget");
  }
  std::vector<Sample> out;
  std::vector<int> idx(p.k, -1);  // -1 encodes blank
  auto value = [&](int j) { return idx[j] < 0 ? kBlank : universe[idx[j]]; };
  while (true) {
    Sample s;
    s.entries.resize(p.k);
    for (int j = 0; j < p.k; ++j) s.entries[j] = value(j);
    if (is_sample(s, p)) {
      bool minimal = true;
      for (int j = 0; j < p.k && minimal; ++j) {
        if (s.entries[j] == kBlank) continue;
        Sample t = s;
        t.entries[j] = kBlank;
        if (is_sample(t, p)) minimal = false;
      }
      if (minimal) out.push_back(std::move(s));
    }
    int j = p.k;
    bool done = false;
    while (j > 0) {
      --j;
      if (++idx[j] < static_cast<int>(universe.size())) break;
      idx[j] = -1;
      if (j == 0) done = true;
    }
    if (done) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace acqlin
