#pragma once

#include <set>
#include <string>
#include <vector>

#include "acyclic.hpp"
#include "model.hpp"

namespace acqlin {

/// Recovery of relational results from functional ones: free variable y_h is
/// field `field` of the tuple bound to formula variable `atom_var`.
struct ProjectionSpec {
  struct Entry {
    std::string var;   // the free relational variable
    int field = 1;     // 1-based field index
    int atom_var = 0;  // index into the formula's tuple variables
  };
  std::vector<Entry> entries;
};

struct TranslateResult {
  FuncQuery formula;   // one tuple variable per atom, all free (the lemma form)
  ProjectionSpec proj;
  std::vector<int> atom_order;  // formula var u holds the atom atom_order[u]
};

/// db -> functional structure: sort "D" for the domain plus one tuple sort
/// "T_<rel>" per relation; f_j projects tuples to their j-th field.
FunctionalStructure translate_structure(const Database& db);

/// Query translation. Precondition: cls comes from classify(q) and is one of
/// ACQ / ACQ_NEQ / ACQ_CMP.
TranslateResult translate_query(const RelQuery& q, const QueryClass& cls);

/// Evaluation form: fresh free variables z_1..z_b bound to the projected
/// fields, tuple variables quantified away. Result tuples of this query are
/// exactly the relational result, without duplicates.
FuncQuery build_eval_query(const TranslateResult& tr, int free_var_count);

/// Applies the projection to satisfying tuple-variable assignments (set
/// semantics). For boolean queries a nonempty input yields the empty tuple.
std::set<std::vector<ElemId>> project_results(const std::set<std::vector<NodeId>>& rel,
                                              const ProjectionSpec& proj,
                                              const FunctionalStructure& f);

std::string render_formula(const FuncQuery& q);
std::string render_projection(const ProjectionSpec& proj);

}  // namespace acqlin
