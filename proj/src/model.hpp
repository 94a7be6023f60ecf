#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace acqlin {

/// Dense id of a domain element (index into a database intern table).
using ElemId = int32_t;
/// Dense id of a node in a functional structure (base element or tuple).
using NodeId = int32_t;

constexpr NodeId kUndef = -1;
/// Blank entry of a sample ('-'); never a valid id.
constexpr int32_t kBlank = -1;

enum class ErrorCode {
  Usage = 2,
  Input = 3,
  Classification = 4,
  Budget = 5,
  Internal = 6,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

// ---------------------------------------------------------------------------
// Interned domains

enum class ColumnType { Numeric, Text };

/// A raw input column before interning.
struct Column {
  ColumnType type = ColumnType::Text;
  std::vector<std::string> cells;
};

/// Intern table over one database domain. Numeric values occupy the low id
/// range in numeric order, text values follow in lexicographic order, so
/// comparing ids of same-typed values agrees with comparing the values.
class InternTable {
public:
  ElemId id_of_numeric(int64_t v) const;
  ElemId id_of_text(const std::string& v) const;
  bool is_numeric(ElemId id) const { return id < static_cast<ElemId>(numerics_.size()); }
  std::string render(ElemId id) const;
  int32_t size() const { return static_cast<int32_t>(numerics_.size() + texts_.size()); }

  /// Builds the table from the distinct values of `cols` and rewrites each
  /// cell to its id. Throws on cells that fail numeric parsing.
  static InternTable build(const std::vector<Column>& cols,
                           std::vector<std::vector<ElemId>>* out_ids);

private:
  std::vector<int64_t> numerics_;   // sorted
  std::vector<std::string> texts_;  // sorted
  std::unordered_map<int64_t, ElemId> num_index_;
  std::unordered_map<std::string, ElemId> text_index_;
};

int64_t parse_numeric_cell(const std::string& cell);  // throws Error(Input)

// ---------------------------------------------------------------------------
// Relational databases

struct Relation {
  std::string name;
  int arity = 0;
  std::vector<ElemId> tuples;  // flattened, arity * card entries
  std::vector<ColumnType> col_types;

  int64_t card() const { return arity == 0 ? 0 : static_cast<int64_t>(tuples.size()) / arity; }
  ElemId at(int64_t row, int col) const { return tuples[row * arity + col]; }
};

struct Database {
  InternTable table;
  int32_t domain_size = 0;
  std::vector<Relation> relations;
  int32_t pruned_isolated = 0;  // elements dropped at ingestion

  const Relation* find(std::string_view name) const;
  /// |db| = |D| + sum of arity*card over relations.
  int64_t size_measure() const;
};

// ---------------------------------------------------------------------------
// Functional structures (multisorted unary algebras)

constexpr int kIdFn = 0;  // reserved function index: identity, valid everywhere

struct SortInfo {
  std::string name;
  NodeId offset = 0;
  int32_t size = 0;
};

/// A unary predicate over the node space (used for extra unary relations
/// beyond the sort partition, e.g. problem-specific sets).
struct UnaryPred {
  std::string name;
  std::vector<uint8_t> bits;
  int64_t card() const;
};

class FunctionalStructure {
public:
  std::vector<SortInfo> sorts;   // partition of [0, total)
  std::vector<UnaryPred> preds;  // extra unary relations
  NodeId total = 0;

  struct Fn {
    std::string name;
    // One column per sort; empty column = undefined on that sort.
    std::vector<std::vector<NodeId>> cols;
  };
  // fns[0] is the identity placeholder (name "id", no columns).
  std::vector<Fn> fns;

  FunctionalStructure() { fns.push_back(Fn{"id", {}}); }

  int add_sort(const std::string& name, int32_t size);
  int add_fn(const std::string& name);
  int add_pred(const std::string& name);
  void set_fn_column(int fn, int sort, std::vector<NodeId> col);

  int sort_of(NodeId x) const;
  int find_sort(std::string_view name) const;   // -1 if absent
  int find_fn(std::string_view name) const;     // -1 if absent ("" and "id" -> kIdFn)
  int find_pred(std::string_view name) const;   // -1 if absent

  NodeId apply(int fn, NodeId x) const {
    if (fn == kIdFn) return x;
    const auto& col = fns[fn].cols[sort_index_[x]];
    if (col.empty()) return kUndef;
    return col[x - sorts[sort_index_[x]].offset];
  }

  /// |F| = |D'| + sum of sort sizes + sum of pred cards + stored fn values.
  int64_t size_measure() const;

  /// Rebuilds the node->sort index; call after the last add_sort.
  void finalize();

private:
  std::vector<int32_t> sort_index_;
};

// ---------------------------------------------------------------------------
// Relational queries

enum class CompOp { Neq, Lt, Le, Gt, Ge };

std::string_view comp_op_text(CompOp op);

struct RelAtom {
  std::string rel;
  std::vector<std::string> vars;
};

struct CompAtom {
  std::string lhs;
  CompOp op = CompOp::Neq;
  std::string rhs;
};

struct RelQuery {
  std::string head;
  std::vector<std::string> free_vars;
  std::vector<RelAtom> atoms;
  std::vector<CompAtom> comps;

  std::vector<std::string> all_vars() const;    // first occurrence order
  std::vector<std::string> bound_vars() const;  // all_vars minus free
  bool is_boolean() const { return free_vars.empty(); }
  /// Safety: every variable occurs in at least one relational atom.
  bool safe() const;
  int64_t size_measure() const;
};

// ---------------------------------------------------------------------------
// Functional queries

enum class LitOp { Eq, Neq, Lt, Le, Gt, Ge };

std::string_view lit_op_text(LitOp op);
LitOp comp_to_lit(CompOp op);

/// One side of a literal: fn applied to a variable; fn "" means identity.
struct Term {
  std::string fn;
  int var = 0;
};

struct FLit {
  Term lhs;
  LitOp op = LitOp::Eq;
  Term rhs;
};

struct FVar {
  std::string name;
  std::vector<std::string> memberships;  // relativization atoms T(x), U(x)
};

/// Conjunctive functional query: free vars are vars[0..free_count).
struct FuncQuery {
  std::vector<FVar> vars;
  int free_count = 0;
  std::vector<FLit> lits;

  int64_t size_measure() const;
  bool has_order_comparison() const;
  bool has_inequality() const;
};

/// Clause-form literal over functions: (neg) lhs = rhs.
struct ClauseEqLit {
  Term lhs;
  Term rhs;
  bool neg = false;
};

/// Clause-form membership literal: (neg) pred(var).
struct ClauseMemLit {
  std::string pred;
  int var = 0;
  bool neg = false;
};

struct Clause {
  std::vector<ClauseEqLit> eqs;
  std::vector<ClauseMemLit> mems;
};

/// Universal clause-set query: forall bound vars, conjunction of clauses.
/// Free vars are vars[0..free_count).
struct ClauseQuery {
  std::vector<FVar> vars;
  int free_count = 0;
  std::vector<Clause> clauses;

  int64_t size_measure() const;
};

// ---------------------------------------------------------------------------
// Acyclicity witnesses

struct Hypergraph {
  std::vector<std::string> vertices;
  std::vector<std::vector<int>> edges;  // vertex index sets, one per atom
};

struct JoinForest {
  int atom_count = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<std::string>> shared;  // per edge, shared variables

  /// Checks that the graph is acyclic and every variable's atom set is
  /// connected.
  bool valid_for(const RelQuery& q) const;
};

// ---------------------------------------------------------------------------
// Evaluation bookkeeping

/// Step and allocation counters threaded through evaluation. Steps count
/// elementary loop iterations so linearity can be asserted without timing.
struct EvalStats {
  int64_t steps = 0;
  int64_t cur_words = 0;
  int64_t peak_words = 0;
  int64_t eliminations = 0;
  int64_t clauses_produced = 0;

  void step(int64_t n = 1) { steps += n; }
  void alloc(int64_t words) {
    cur_words += words;
    if (cur_words > peak_words) peak_words = cur_words;
  }
  void release(int64_t words) { cur_words -= words; }
};

// ---------------------------------------------------------------------------
// Samples

struct Sample {
  std::vector<int32_t> entries;  // kBlank for '-'

  bool operator==(const Sample& o) const { return entries == o.entries; }
  bool operator<(const Sample& o) const { return entries < o.entries; }
  bool all_blank() const;
  std::string render() const;  // e.g. "(1,2,-)" with raw entry ids
};

}  // namespace acqlin
