#include "samples.hpp"

#include <algorithm>
#include <set>

#include "sort.hpp"

namespace acqlin {

namespace {

struct Node {
  uint32_t mask = 0;            // the index set P
  std::vector<int32_t> values;  // c_j, kBlank when j not in P
};

bool covered(const Node& nd, const SampleProblem& p, int64_t e) {
  for (int j = 0; j < p.k; ++j)
    if ((nd.mask >> j) & 1u)
      if (p.g[j][e] == nd.values[j]) return true;
  return false;
}

}  // namespace

bool is_sample(const Sample& s, const SampleProblem& p) {
  if (static_cast<int>(s.entries.size()) != p.k) return false;
  for (int64_t e = 0; e < p.n(); ++e) {
    bool cov = false;
    for (int j = 0; j < p.k && !cov; ++j)
      cov = s.entries[j] != kBlank && p.g[j][e] == s.entries[j];
    if (!cov) return false;
  }
  return true;
}

std::vector<Sample> extract_minimal(const Sample& s, const SampleProblem& p) {
  if (static_cast<int>(s.entries.size()) != p.k)
    throw Error(ErrorCode::Usage, "sample width does not match problem width");
  uint32_t pmask = 0;
  for (int j = 0; j < p.k; ++j)
    if (s.entries[j] != kBlank) pmask |= 1u << j;
  // Witness masks: which indices of P cover each element. Only distinct masks
  // matter, so extraction is O_k(1) after this pass.
  std::set<uint32_t> wit;
  for (int64_t e = 0; e < p.n(); ++e) {
    uint32_t m = 0;
    for (int j = 0; j < p.k; ++j)
      if (((pmask >> j) & 1u) && p.g[j][e] == s.entries[j]) m |= 1u << j;
    if (m == 0) throw Error(ErrorCode::Usage, "extract_minimal: input is not a sample");
    wit.insert(m);
  }
  std::vector<uint32_t> masks(wit.begin(), wit.end());
  auto covers = [&masks](uint32_t q) {
    for (uint32_t m : masks)
      if ((m & q) == 0) return false;
    return true;
  };
  // Coverage is monotone in the index set, so a covering set is minimal iff
  // no single index can be dropped.
  std::vector<Sample> out;
  uint32_t sub = pmask;
  while (true) {
    if (covers(sub)) {
      bool minimal = true;
      for (int j = 0; j < p.k && minimal; ++j)
        if (((sub >> j) & 1u) && covers(sub & ~(1u << j))) minimal = false;
      if (minimal) {
        Sample m;
        m.entries.assign(p.k, kBlank);
        for (int j = 0; j < p.k; ++j)
          if ((sub >> j) & 1u) m.entries[j] = s.entries[j];
        out.push_back(std::move(m));
      }
    }
    if (sub == 0) break;
    sub = (sub - 1) & pmask;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Sample> min_samples(const SampleProblem& p, SampleSearchStats* search_stats,
                                EvalStats* stats) {
  if (p.k <= 0 || p.k > 20)
    throw Error(ErrorCode::Usage, "sample width must be in [1,20]");
  const uint32_t full = (1u << p.k) - 1;
  std::vector<Node> level;
  level.push_back(Node{0, std::vector<int32_t>(p.k, kBlank)});
  int64_t nodes = 1;
  for (int64_t e = 0; e < p.n() && !level.empty(); ++e) {
    std::vector<Node> next;
    next.reserve(level.size());
    for (const auto& nd : level) {
      if (stats) stats->step(p.k);
      if (covered(nd, p, e)) {
        next.push_back(nd);
        ++nodes;
        continue;
      }
      if (nd.mask == full) continue;  // element e cannot be covered on this branch
      for (int h = 0; h < p.k; ++h) {
        if ((nd.mask >> h) & 1u) continue;
        if (p.g[h][e] >= p.defined_bound) continue;  // undefined: h cannot cover e
        Node child = nd;
        child.mask |= 1u << h;
        child.values[h] = p.g[h][e];
        next.push_back(std::move(child));
        ++nodes;
      }
    }
    level.swap(next);
  }
  if (search_stats) {
    search_stats->nodes = nodes;
    search_stats->leaves = static_cast<int64_t>(level.size());
  }
  // Leaves are samples but not necessarily minimal, and minimal samples may
  // repeat across leaves.
  std::set<Sample> out;
  for (const auto& nd : level) {
    Sample s;
    s.entries = nd.values;
    for (auto& m : extract_minimal(s, p)) out.insert(std::move(m));
  }
  return {out.begin(), out.end()};
}

int PartitionedSamples::find_class(const int32_t* key) const {
  int lo = 0, hi = static_cast<int>(class_samples.size());
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    int cmp = 0;
    for (int c = 0; c < l; ++c) {
      int32_t k = class_keys[static_cast<int64_t>(mid) * l + c];
      if (k != key[c]) {
        cmp = k < key[c] ? -1 : 1;
        break;
      }
    }
    if (cmp == 0) return mid;
    if (cmp < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return -1;
}

PartitionedSamples min_samples_partition(const SampleProblem& p,
                                         const std::vector<std::vector<int32_t>>& v,
                                         int32_t key_bound, EvalStats* stats,
                                         bool comparison_sort) {
  const int l = static_cast<int>(v.size());
  const int64_t n = p.n();
  PartitionedSamples out;
  out.l = l;
  out.class_of_element.assign(n, -1);
  std::vector<int32_t> order(n);
  for (int64_t i = 0; i < n; ++i) order[i] = static_cast<int32_t>(i);
  radix_sort_rows(
      order, l, key_bound, [&v](int32_t r, int c) { return v[c][r]; }, stats, comparison_sort);
  int64_t i = 0;
  while (i < n) {
    int64_t j = i;
    for (; j < n; ++j) {
      bool same = true;
      for (int c = 0; c < l && same; ++c) same = v[c][order[j]] == v[c][order[i]];
      if (!same) break;
    }
    SampleProblem sub;
    sub.k = p.k;
    sub.g.assign(p.k, {});
    for (int jj = 0; jj < p.k; ++jj) {
      sub.g[jj].reserve(j - i);
      for (int64_t t = i; t < j; ++t) sub.g[jj].push_back(p.g[jj][order[t]]);
    }
    int32_t cls = static_cast<int32_t>(out.class_samples.size());
    for (int64_t t = i; t < j; ++t) out.class_of_element[order[t]] = cls;
    for (int c = 0; c < l; ++c) out.class_keys.push_back(v[c][order[i]]);
    out.class_samples.push_back(min_samples(sub, nullptr, stats));
    if (stats) stats->step(j - i);
    i = j;
  }
  return out;
}

std::optional<std::vector<int32_t>> vertex_cover_via_samples(
    const std::vector<std::pair<int32_t, int32_t>>& edges, int k) {
  if (k <= 0 || k > 10) throw Error(ErrorCode::Usage, "vertex cover parameter must be in [1,10]");
  SampleProblem p;
  p.k = 2 * k;
  p.g.assign(p.k, {});
  for (int j = 0; j < p.k; ++j) {
    p.g[j].reserve(edges.size());
    for (const auto& e : edges) p.g[j].push_back(j < k ? e.first : e.second);
  }
  auto ms = min_samples(p);
  if (ms.empty()) return std::nullopt;
  std::optional<std::vector<int32_t>> best;
  for (const auto& s : ms) {
    std::vector<int32_t> vals;
    for (int32_t v : s.entries)
      if (v != kBlank) vals.push_back(v);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    if (!best || vals.size() < best->size()) best = std::move(vals);
  }
  return best;
}

}  // namespace acqlin
