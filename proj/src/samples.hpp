#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "model.hpp"

namespace acqlin {

/// Ground set E with unary function values. Element i of E carries the values
/// g[j][i] for j < k. Values are arbitrary non-negative ints; callers may use
/// out-of-range sentinels for "matches nothing".
struct SampleProblem {
  int k = 1;
  std::vector<std::vector<int32_t>> g;  // k rows over |E| columns
  // Values >= defined_bound mark undefined function applications: they can
  // never serve as target values and never cover an element.
  int32_t defined_bound = INT32_MAX;

  int64_t n() const { return g.empty() ? 0 : static_cast<int64_t>(g[0].size()); }
};

/// Node/leaf counts of the search tree, for the linearity properties.
struct SampleSearchStats {
  int64_t nodes = 0;
  int64_t leaves = 0;
};

/// All minimal samples of g over E, deduplicated. At most k! of them.
std::vector<Sample> min_samples(const SampleProblem& p, SampleSearchStats* search_stats = nullptr,
                                EvalStats* stats = nullptr);

bool is_sample(const Sample& s, const SampleProblem& p);

/// All minimal samples contained in s. Precondition: s is a sample of p.
std::vector<Sample> extract_minimal(const Sample& s, const SampleProblem& p);

/// Min-samples over every class of the partition of E induced by the key
/// tuples v (l rows over |E| columns, components in [0, key_bound)).
/// Classes appear in lexicographic key order.
struct PartitionedSamples {
  int l = 0;
  std::vector<int32_t> class_keys;               // flattened, l entries per class
  std::vector<std::vector<Sample>> class_samples;
  std::vector<int32_t> class_of_element;         // per element of E

  int64_t class_count() const { return static_cast<int64_t>(class_samples.size()); }
  /// Index of the class with the given key tuple, or -1.
  int find_class(const int32_t* key) const;
};

PartitionedSamples min_samples_partition(const SampleProblem& p,
                                         const std::vector<std::vector<int32_t>>& v,
                                         int32_t key_bound, EvalStats* stats = nullptr,
                                         bool comparison_sort = false);

/// Demonstration from the sampling machinery: a vertex set of size <= 2k
/// covering every edge, derived from a minimal sample of the 2k-tuple
/// (f1,..,f1,f2,..,f2) over the edge set; nullopt when no sample exists.
std::optional<std::vector<int32_t>> vertex_cover_via_samples(
    const std::vector<std::pair<int32_t, int32_t>>& edges, int k);

}  // namespace acqlin
