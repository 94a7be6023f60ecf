#include "model.hpp"

#include <algorithm>
#include <set>

namespace acqlin {

// ---------------------------------------------------------------------------
// InternTable

int64_t parse_numeric_cell(const std::string& cell) {
  if (cell.empty()) throw Error(ErrorCode::Input, "empty cell in numeric column");
  size_t pos = 0;
  int64_t v = 0;
  try {
    v = std::stoll(cell, &pos);
  } catch (const std::exception&) {
    throw Error(ErrorCode::Input, "not a numeral: '" + cell + "'");
  }
  if (pos != cell.size())
    throw Error(ErrorCode::Input, "not a numeral: '" + cell + "'");
  return v;
}

InternTable InternTable::build(const std::vector<Column>& cols,
                               std::vector<std::vector<ElemId>>* out_ids) {
  std::set<int64_t> nums;
  std::set<std::string> texts;
  for (const auto& col : cols) {
    for (const auto& cell : col.cells) {
      if (col.type == ColumnType::Numeric)
        nums.insert(parse_numeric_cell(cell));
      else
        texts.insert(cell);
    }
  }
  InternTable t;
  t.numerics_.assign(nums.begin(), nums.end());
  t.texts_.assign(texts.begin(), texts.end());
  for (size_t i = 0; i < t.numerics_.size(); ++i)
    t.num_index_[t.numerics_[i]] = static_cast<ElemId>(i);
  for (size_t i = 0; i < t.texts_.size(); ++i)
    t.text_index_[t.texts_[i]] = static_cast<ElemId>(i + t.numerics_.size());
  if (out_ids) {
    out_ids->clear();
    for (const auto& col : cols) {
      std::vector<ElemId> ids;
      ids.reserve(col.cells.size());
      for (const auto& cell : col.cells) {
        if (col.type == ColumnType::Numeric)
          ids.push_back(t.num_index_.at(parse_numeric_cell(cell)));
        else
          ids.push_back(t.text_index_.at(cell));
      }
      out_ids->push_back(std::move(ids));
    }
  }
  return t;
}

ElemId InternTable::id_of_numeric(int64_t v) const {
  auto it = num_index_.find(v);
  return it == num_index_.end() ? kUndef : it->second;
}

ElemId InternTable::id_of_text(const std::string& v) const {
  auto it = text_index_.find(v);
  return it == text_index_.end() ? kUndef : it->second;
}

std::string InternTable::render(ElemId id) const {
  if (id < 0 || id >= size()) return "?";
  if (is_numeric(id)) return std::to_string(numerics_[id]);
  return texts_[id - numerics_.size()];
}

// ---------------------------------------------------------------------------
// Database

const Relation* Database::find(std::string_view name) const {
  for (const auto& r : relations)
    if (r.name == name) return &r;
  return nullptr;
}

int64_t Database::size_measure() const {
  int64_t s = domain_size;
  for (const auto& r : relations) s += static_cast<int64_t>(r.arity) * r.card();
  return s;
}

// ---------------------------------------------------------------------------
// FunctionalStructure

int64_t UnaryPred::card() const {
  int64_t c = 0;
  for (uint8_t b : bits) c += b ? 1 : 0;
  return c;
}

int FunctionalStructure::add_sort(const std::string& name, int32_t size) {
  sorts.push_back(SortInfo{name, total, size});
  total += size;
  return static_cast<int>(sorts.size()) - 1;
}

int FunctionalStructure::add_fn(const std::string& name) {
  fns.push_back(Fn{name, std::vector<std::vector<NodeId>>(sorts.size())});
  return static_cast<int>(fns.size()) - 1;
}

int FunctionalStructure::add_pred(const std::string& name) {
  preds.push_back(UnaryPred{name, std::vector<uint8_t>(total, 0), });
  return static_cast<int>(preds.size()) - 1;
}

void FunctionalStructure::set_fn_column(int fn, int sort, std::vector<NodeId> col) {
  auto& f = fns[fn];
  if (f.cols.size() < sorts.size()) f.cols.resize(sorts.size());
  f.cols[sort] = std::move(col);
}

int FunctionalStructure::sort_of(NodeId x) const { return sort_index_[x]; }

int FunctionalStructure::find_sort(std::string_view name) const {
  for (size_t i = 0; i < sorts.size(); ++i)
    if (sorts[i].name == name) return static_cast<int>(i);
  return -1;
}

int FunctionalStructure::find_fn(std::string_view name) const {
  if (name.empty() || name == "id") return kIdFn;
  for (size_t i = 1; i < fns.size(); ++i)
    if (fns[i].name == name) return static_cast<int>(i);
  return -1;
}

int FunctionalStructure::find_pred(std::string_view name) const {
  for (size_t i = 0; i < preds.size(); ++i)
    if (preds[i].name == name) return static_cast<int>(i);
  return -1;
}

void FunctionalStructure::finalize() {
  sort_index_.assign(total, 0);
  for (size_t s = 0; s < sorts.size(); ++s)
    for (NodeId x = sorts[s].offset; x < sorts[s].offset + sorts[s].size; ++x)
      sort_index_[x] = static_cast<int32_t>(s);
  for (auto& f : fns)
    if (&f != &fns[kIdFn] && f.cols.size() < sorts.size()) f.cols.resize(sorts.size());
}

int64_t FunctionalStructure::size_measure() const {
  int64_t s = total;
  for (const auto& so : sorts) s += so.size;
  for (const auto& p : preds) s += p.card();
  for (const auto& f : fns)
    for (const auto& col : f.cols) s += static_cast<int64_t>(col.size());
  return s;
}

// ---------------------------------------------------------------------------
// Queries

std::string_view comp_op_text(CompOp op) {
  switch (op) {
    case CompOp::Neq: return "!=";
    case CompOp::Lt: return "<";
    case CompOp::Le: return "<=";
    case CompOp::Gt: return ">";
    case CompOp::Ge: return ">=";
  }
  return "?";
}

std::string_view lit_op_text(LitOp op) {
  switch (op) {
    case LitOp::Eq: return "=";
    case LitOp::Neq: return "!=";
    case LitOp::Lt: return "<";
    case LitOp::Le: return "<=";
    case LitOp::Gt: return ">";
    case LitOp::Ge: return ">=";
  }
  return "?";
}

LitOp comp_to_lit(CompOp op) {
  switch (op) {
    case CompOp::Neq: return LitOp::Neq;
    case CompOp::Lt: return LitOp::Lt;
    case CompOp::Le: return LitOp::Le;
    case CompOp::Gt: return LitOp::Gt;
    case CompOp::Ge: return LitOp::Ge;
  }
  return LitOp::Neq;
}

std::vector<std::string> RelQuery::all_vars() const {
  std::vector<std::string> out;
  auto add = [&out](const std::string& v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  for (const auto& v : free_vars) add(v);
  for (const auto& a : atoms)
    for (const auto& v : a.vars) add(v);
  for (const auto& c : comps) {
    add(c.lhs);
    add(c.rhs);
  }
  return out;
}

std::vector<std::string> RelQuery::bound_vars() const {
  std::vector<std::string> out;
  for (const auto& v : all_vars())
    if (std::find(free_vars.begin(), free_vars.end(), v) == free_vars.end()) out.push_back(v);
  return out;
}

bool RelQuery::safe() const {
  for (const auto& v : all_vars()) {
    bool found = false;
    for (const auto& a : atoms)
      if (std::find(a.vars.begin(), a.vars.end(), v) != a.vars.end()) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

// Token accounting: a quantifier is 2 tokens, an atom R(v1,..,vm) is 2m+2,
// an order comparison v op w is 3, and an inequality counts as the negated
// equality not(v=w), 6 tokens. Conjuncts are joined by single tokens.
int64_t RelQuery::size_measure() const {
  int64_t s = 0;
  s += 2 * static_cast<int64_t>(bound_vars().size());
  int64_t conjuncts = 0;
  for (const auto& a : atoms) {
    s += 2 * static_cast<int64_t>(a.vars.size()) + 2;
    ++conjuncts;
  }
  for (const auto& c : comps) {
    s += c.op == CompOp::Neq ? 6 : 3;
    ++conjuncts;
  }
  if (conjuncts > 1) s += conjuncts - 1;
  return s;
}

namespace {
int64_t term_tokens(const Term& t) { return t.fn.empty() ? 1 : 4; }
}  // namespace

bool FuncQuery::has_order_comparison() const {
  for (const auto& l : lits)
    if (l.op != LitOp::Eq && l.op != LitOp::Neq) return true;
  return false;
}

bool FuncQuery::has_inequality() const {
  for (const auto& l : lits)
    if (l.op == LitOp::Neq) return true;
  return false;
}

int64_t FuncQuery::size_measure() const {
  int64_t s = 0;
  int64_t conjuncts = 0;
  for (size_t i = free_count; i < vars.size(); ++i) s += 2;
  for (const auto& v : vars) {
    for (size_t m = 0; m < v.memberships.size(); ++m) {
      s += 4;
      ++conjuncts;
    }
  }
  for (const auto& l : lits) {
    s += term_tokens(l.lhs) + 1 + term_tokens(l.rhs);
    if (l.op == LitOp::Neq) s += 3;
    ++conjuncts;
  }
  if (conjuncts > 1) s += conjuncts - 1;
  return s;
}

int64_t ClauseQuery::size_measure() const {
  int64_t s = 0;
  for (size_t i = free_count; i < vars.size(); ++i) s += 2;
  for (const auto& c : clauses) {
    int64_t lits = 0;
    for (const auto& e : c.eqs) {
      s += term_tokens(e.lhs) + 1 + term_tokens(e.rhs);
      if (e.neg) s += 3;
      ++lits;
    }
    for (const auto& m : c.mems) {
      (void)m;
      s += m.neg ? 5 : 4;
      ++lits;
    }
    if (lits > 1) s += lits - 1;
    s += 2;  // clause parentheses
  }
  if (clauses.size() > 1) s += static_cast<int64_t>(clauses.size()) - 1;
  return s;
}

// ---------------------------------------------------------------------------
// JoinForest

bool JoinForest::valid_for(const RelQuery& q) const {
  if (atom_count != static_cast<int>(q.atoms.size())) return false;
  // Acyclicity: union-find over atoms.
  std::vector<int> parent(atom_count);
  for (int i = 0; i < atom_count; ++i) parent[i] = i;
  auto root = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : edges) {
    int ra = root(a), rb = root(b);
    if (ra == rb) return false;
    parent[ra] = rb;
  }
  // Connectedness of each variable's atom set.
  std::vector<std::vector<int>> adj(atom_count);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (const auto& v : q.all_vars()) {
    std::vector<int> holders;
    for (int i = 0; i < atom_count; ++i) {
      const auto& vars = q.atoms[i].vars;
      if (std::find(vars.begin(), vars.end(), v) != vars.end()) holders.push_back(i);
    }
    if (holders.size() <= 1) continue;
    std::vector<uint8_t> in_set(atom_count, 0), seen(atom_count, 0);
    for (int h : holders) in_set[h] = 1;
    std::vector<int> stack{holders[0]};
    seen[holders[0]] = 1;
    int reached = 0;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      ++reached;
      for (int y : adj[x])
        if (in_set[y] && !seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
    if (reached != static_cast<int>(holders.size())) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Sample

bool Sample::all_blank() const {
  for (int32_t e : entries)
    if (e != kBlank) return false;
  return true;
}

std::string Sample::render() const {
  std::string out = "(";
  for (size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ",";
    out += entries[i] == kBlank ? std::string("-") : std::to_string(entries[i]);
  }
  out += ")";
  return out;
}

}  // namespace acqlin
