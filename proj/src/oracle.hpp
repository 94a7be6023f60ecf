#pragma once

#include <set>
#include <vector>

#include "model.hpp"
#include "samples.hpp"

namespace acqlin {

struct OracleBudget {
  int64_t max_assignments = int64_t(1) << 26;
  int32_t max_domain = 4096;
};

/// ACQLIN_ORACLE_BUDGET overrides max_assignments when set.
OracleBudget oracle_budget_from_env();

/// Exhaustive relational evaluation: every assignment of all variables to the
/// domain is tested. Boolean yes is the set containing the empty tuple.
std::set<std::vector<ElemId>> oracle_eval_rel(const Database& db, const RelQuery& q,
                                              const OracleBudget& budget = {});
/// Independent second implementation (odometer loop instead of recursion).
std::set<std::vector<ElemId>> oracle_eval_rel_iterative(const Database& db, const RelQuery& q,
                                                        const OracleBudget& budget = {});

std::set<std::vector<NodeId>> oracle_eval_func(const FunctionalStructure& f, const FuncQuery& q,
                                               const OracleBudget& budget = {});
std::set<std::vector<NodeId>> oracle_eval_func_iterative(const FunctionalStructure& f,
                                                         const FuncQuery& q,
                                                         const OracleBudget& budget = {});

/// Universal clause-set queries: a free tuple qualifies when every clause
/// holds under all assignments of the bound variables (relativized to their
/// membership sets).
std::set<std::vector<NodeId>> oracle_eval_clauses(const FunctionalStructure& f,
                                                  const ClauseQuery& q,
                                                  const OracleBudget& budget = {});

std::vector<Sample> oracle_min_samples(const SampleProblem& p, const OracleBudget& budget = {});

/// Literal semantics shared by oracle and engine: an atom with an undefined
/// term is false, and an inequality is the negated equality.
inline bool atom_true(LitOp op, NodeId a, NodeId b) {
  bool defined = a != kUndef && b != kUndef;
  switch (op) {
    case LitOp::Eq: return defined && a == b;
    case LitOp::Neq: return !(defined && a == b);
    case LitOp::Lt: return defined && a < b;
    case LitOp::Le: return defined && a <= b;
    case LitOp::Gt: return defined && a > b;
    case LitOp::Ge: return defined && a >= b;
  }
  return false;
}

}  // namespace acqlin
