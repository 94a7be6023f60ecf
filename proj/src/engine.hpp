#pragma once

#include <iosfwd>
#include <memory>
#include <set>
#include <vector>

#include "acyclic.hpp"
#include "model.hpp"
#include "translate.hpp"

namespace acqlin {

struct EvalOptions {
  /// Brute-force check that every elimination step preserves the result set.
  bool validate_steps = false;
  int64_t validate_budget = int64_t(1) << 20;  // max assignments per check
  /// Debug fallback: std::stable_sort instead of bucket sorts.
  bool comparison_sort = false;
  std::ostream* trace = nullptr;
};

/// Negation of a strict conjunctive query (no order comparisons) into a
/// single universal clause: equalities become inequality literals, inequality
/// atoms become positive equalities, free-variable memberships become negated
/// membership literals. Bound-variable memberships stay as relativization.
ClauseQuery negate_to_fafo(const FuncQuery& q);

/// Strict evaluation (at most one free variable). Returns sorted node ids.
/// Dispatch: no comparisons / only inequalities go through negation plus
/// quantifier elimination; order comparisons take the direct existential
/// elimination path.
std::vector<NodeId> eval_strict(const FunctionalStructure& f, const FuncQuery& q,
                                EvalStats* stats = nullptr, const EvalOptions& opts = {});

/// Boolean query (no free variables).
bool eval_boolean(const FunctionalStructure& f, const FuncQuery& q, EvalStats* stats = nullptr,
                  const EvalOptions& opts = {});

/// Inner step of the general algorithm: the set of values for variable
/// `free_index` given fixed values for the variables listed in `fixed`
/// (realized as singleton restrictions); all other variables existential.
std::vector<NodeId> eval_strict_at(const FunctionalStructure& f, const FuncQuery& q,
                                   int free_index,
                                   const std::vector<std::pair<int, NodeId>>& fixed,
                                   EvalStats* stats = nullptr, const EvalOptions& opts = {});

/// Full result set of a query with any number of free variables, computed by
/// the inductive frontier over strict sub-evaluations.
std::set<std::vector<NodeId>> eval_general(const FunctionalStructure& f, const FuncQuery& q,
                                           EvalStats* stats = nullptr,
                                           const EvalOptions& opts = {});

/// Depth-first streaming of the result set; no duplicates, no dead ends.
class Enumerator {
public:
  Enumerator(const FunctionalStructure& f, const FuncQuery& q, EvalStats* stats = nullptr,
             EvalOptions opts = {});
  ~Enumerator();
  Enumerator(const Enumerator&) = delete;
  Enumerator& operator=(const Enumerator&) = delete;

  /// Next solution, or false when exhausted. For boolean yes-instances a
  /// single empty tuple is produced.
  bool next(std::vector<NodeId>& out);

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// ---------------------------------------------------------------------------
// Relational pipeline

struct RelEval {
  bool boolean = false;
  bool yes = false;
  std::set<std::vector<ElemId>> rows;
};

/// classify + translate + evaluate + project. Rejects NOT_ACYCLIC and
/// CMP_VIOLATION inputs with a typed error naming the class.
RelEval eval_relational(const Database& db, const RelQuery& q, EvalStats* stats = nullptr,
                        const EvalOptions& opts = {});

class RelEnumerator {
public:
  RelEnumerator(const Database& db, const RelQuery& q, EvalStats* stats = nullptr,
                EvalOptions opts = {});
  ~RelEnumerator();
  RelEnumerator(const RelEnumerator&) = delete;
  RelEnumerator& operator=(const RelEnumerator&) = delete;

  bool next(std::vector<ElemId>& out);
  bool boolean() const { return boolean_; }
  int width() const { return width_; }
  const FunctionalStructure& structure() const { return f_; }

private:
  FunctionalStructure f_;
  FuncQuery q_;
  bool boolean_ = false;
  int width_ = 0;
  std::unique_ptr<Enumerator> en_;
};

}  // namespace acqlin
