#include "gtlab/certify.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <unordered_map>
#include <utility>

#include "gtlab/bitvec.hpp"
#include "gtlab/errors.hpp"
#include "gtlab/pooling.hpp"

namespace gtlab {

std::pair<int, std::optional<int>> max_degree(const CandidateHypergraph& h) {
  std::vector<int> degree(static_cast<std::size_t>(h.vertex_count()), 0);
  for (std::size_t i = 0; i < h.edge_count(); ++i)
    for (std::uint32_t v : h.edge(i)) ++degree[v];
  int best = 0;
  std::optional<int> arg;
  for (std::size_t v = 0; v < degree.size(); ++v) {
    if (degree[v] > best) {
      best = degree[v];
      arg = static_cast<int>(v);
    }
  }
  return {best, arg};
}

namespace {

// Take-or-skip branch and bound over edges. The bound at a node is
// min(remaining edge count, floor(free vertices touched by remaining / 2)).
struct MatchingSearch {
  std::vector<std::pair<int, int>> edges;
  std::vector<char> used;
  std::vector<char> seen;
  int best = 0;

  explicit MatchingSearch(const CandidateHypergraph& g)
      : used(static_cast<std::size_t>(g.vertex_count()), 0),
        seen(static_cast<std::size_t>(g.vertex_count()), 0) {
    edges.reserve(g.edge_count());
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      auto e = g.edge(i);
      edges.emplace_back(static_cast<int>(e[0]), static_cast<int>(e[1]));
    }
  }

  int greedy() const {
    std::vector<char> taken(used.size(), 0);
    int size = 0;
    for (auto [a, b] : edges) {
      if (taken[static_cast<std::size_t>(a)] || taken[static_cast<std::size_t>(b)]) continue;
      taken[static_cast<std::size_t>(a)] = taken[static_cast<std::size_t>(b)] = 1;
      ++size;
    }
    return size;
  }

  int bound(std::size_t idx) {
    int remaining = 0, free_vertices = 0;
    std::vector<int> touched;
    for (std::size_t i = idx; i < edges.size(); ++i) {
      auto [a, b] = edges[i];
      if (used[static_cast<std::size_t>(a)] || used[static_cast<std::size_t>(b)]) continue;
      ++remaining;
      for (int v : {a, b}) {
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          touched.push_back(v);
          ++free_vertices;
        }
      }
    }
    for (int v : touched) seen[static_cast<std::size_t>(v)] = 0;
    return std::min(remaining, free_vertices / 2);
  }

  void descend(std::size_t idx, int size) {
    best = std::max(best, size);
    while (idx < edges.size() &&
           (used[static_cast<std::size_t>(edges[idx].first)] ||
            used[static_cast<std::size_t>(edges[idx].second)]))
      ++idx;
    if (idx == edges.size()) return;
    if (size + bound(idx) <= best) return;
    auto [a, b] = edges[idx];
    used[static_cast<std::size_t>(a)] = used[static_cast<std::size_t>(b)] = 1;
    descend(idx + 1, size + 1);
    used[static_cast<std::size_t>(a)] = used[static_cast<std::size_t>(b)] = 0;
    descend(idx + 1, size);
  }

  int run() {
    best = greedy();
    descend(0, 0);
    return best;
  }
};

void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

// Among the edges listed in `ids`, pick L whose petals (edge minus core) are
// pairwise disjoint. Vertices of the core itself never appear in a petal.
struct DisjointPetalSearch {
  const CandidateHypergraph& h;
  const std::vector<std::size_t>& ids;
  const std::vector<char>& in_core;
  int needed;
  std::vector<char> used;
  std::vector<std::size_t> picked;

  bool petal_free(std::size_t id) const {
    for (std::uint32_t v : h.edge(id))
      if (!in_core[v] && used[v]) return false;
    return true;
  }

  void mark(std::size_t id, char value) {
    for (std::uint32_t v : h.edge(id))
      if (!in_core[v]) used[v] = value;
  }

  bool descend(std::size_t start) {
    if (static_cast<int>(picked.size()) == needed) return true;
    const std::size_t missing = static_cast<std::size_t>(needed) - picked.size();
    for (std::size_t i = start; i + missing <= ids.size(); ++i) {
      if (!petal_free(ids[i])) continue;
      mark(ids[i], 1);
      picked.push_back(ids[i]);
      if (descend(i + 1)) return true;
      picked.pop_back();
      mark(ids[i], 0);
    }
    return false;
  }
};

}  // namespace

int max_matching_size(const CandidateHypergraph& g) {
  if (g.uniformity() != 2)
    throw ParameterError("max_matching_size: hypergraph must be 2-uniform");
  if (g.edge_count() == 0) return 0;
  MatchingSearch search(g);
  return search.run();
}

std::optional<BadConfiguration> find_bad_configuration(const CandidateHypergraph& h, int L,
                                                       int k) {
  const int s = h.uniformity();
  if (L < 2) throw ParameterError("find_bad_configuration: L must be >= 2");
  if (k < 0 || k >= s) throw ParameterError("find_bad_configuration: k must be in [0, s-1]");
  if (h.edge_count() < static_cast<std::size_t>(L)) return std::nullopt;

  // Core candidates: k-sets contained in at least L edges, visited in
  // lexicographic order so the first witness is deterministic.
  std::map<std::vector<int>, std::vector<std::size_t>> cores;
  if (k == 0) {
    std::vector<std::size_t> all(h.edge_count());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    cores.emplace(std::vector<int>{}, std::move(all));
  } else {
    std::vector<int> core(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
      auto e = h.edge(i);
      for_each_combination(s, k, [&](const std::vector<int>& pos) {
        for (int j = 0; j < k; ++j)
          core[static_cast<std::size_t>(j)] =
              static_cast<int>(e[static_cast<std::size_t>(pos[static_cast<std::size_t>(j)])]);
        cores[core].push_back(i);
      });
    }
  }

  std::vector<char> in_core(static_cast<std::size_t>(h.vertex_count()), 0);
  for (const auto& [core, ids] : cores) {
    if (ids.size() < static_cast<std::size_t>(L)) continue;
    for (int v : core) in_core[static_cast<std::size_t>(v)] = 1;
    DisjointPetalSearch search{h, ids, in_core, L,
                               std::vector<char>(static_cast<std::size_t>(h.vertex_count()), 0),
                               {}};
    const bool found = search.descend(0);
    for (int v : core) in_core[static_cast<std::size_t>(v)] = 0;
    if (found) {
      BadConfiguration bad;
      bad.k = k;
      bad.core = core;
      for (std::size_t id : search.picked) bad.edges.push_back(h.edge_vector(id));
      return bad;
    }
  }
  return std::nullopt;
}

bool edge_bound_check(const CandidateHypergraph& g, int L) {
  if (g.uniformity() != 2)
    throw ParameterError("edge_bound_check: hypergraph must be 2-uniform");
  if (L < 1) throw ParameterError("edge_bound_check: L must be >= 1");
  if (max_degree(g).first >= L) return true;
  if (max_matching_size(g) >= L) return true;
  return g.edge_count() < 2 * static_cast<std::size_t>(L) * static_cast<std::size_t>(L);
}

namespace {

// C(n, r), or cap + 1 as soon as the partial products pass the cap.
std::uint64_t capped_binomial(int n, int r, std::uint64_t cap) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t c = 1;
  for (int i = 1; i <= r; ++i) {
    if (c > cap) return cap + 1;
    const auto num = static_cast<std::uint64_t>(n - r + i);
    if (c > std::numeric_limits<std::uint64_t>::max() / num) return cap + 1;
    c = c * num / static_cast<std::uint64_t>(i);
  }
  return c > cap ? cap + 1 : c;
}

}  // namespace

GoodCodeReport is_good_code(const TestMatrix& m, int s, int L, const std::vector<int>& k_values,
                            const GoodCodeOptions& options) {
  if (s < 1) throw ParameterError("is_good_code: s must be >= 1");
  if (L < 2) throw ParameterError("is_good_code: L must be >= 2");
  std::vector<int> ks = k_values;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  for (int k : ks)
    if (k < 0 || k >= s) throw ParameterError("is_good_code: k values must lie in [0, s-1]");

  GoodCodeReport report;
  report.L = L;
  report.k_values = ks;

  const int t = m.cols();
  if (capped_binomial(t, s, options.max_subsets) > options.max_subsets)
    throw CapacityError("is_good_code: C(t, s) exceeds the subset cap");

  // Group all s-subsets of columns by their OR; each group is the candidate
  // hypergraph of one attainable outcome.
  std::vector<BitVec> cols = m.columns();
  std::unordered_map<BitVec, std::vector<std::uint32_t>, BitVecHash> groups;
  std::vector<int> chosen(static_cast<std::size_t>(s));
  std::vector<BitVec> acc(static_cast<std::size_t>(s) + 1,
                          BitVec(static_cast<std::size_t>(m.rows())));
  auto enumerate = [&](auto&& self, int start, int depth) -> void {
    if (depth == s) {
      auto& g = groups[acc[static_cast<std::size_t>(s)]];
      for (int v : chosen) g.push_back(static_cast<std::uint32_t>(v));
      return;
    }
    for (int j = start; j + (s - depth) <= t; ++j) {
      acc[static_cast<std::size_t>(depth) + 1].assign_or(acc[static_cast<std::size_t>(depth)],
                                                         cols[static_cast<std::size_t>(j)]);
      chosen[static_cast<std::size_t>(depth)] = j;
      self(self, j + 1, depth + 1);
    }
  };
  enumerate(enumerate, 0, 0);

  std::vector<const BitVec*> outcomes;
  outcomes.reserve(groups.size());
  for (const auto& [y, flat] : groups) outcomes.push_back(&y);
  std::sort(outcomes.begin(), outcomes.end(),
            [](const BitVec* a, const BitVec* b) { return a->to_string() < b->to_string(); });

  for (const BitVec* y : outcomes) {
    ++report.outcomes_checked;
    const auto& flat = groups.at(*y);
    std::vector<std::vector<int>> edges;
    edges.reserve(flat.size() / static_cast<std::size_t>(s));
    for (std::size_t i = 0; i < flat.size(); i += static_cast<std::size_t>(s))
      edges.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(i),
                         flat.begin() + static_cast<std::ptrdiff_t>(i) + s);
    CandidateHypergraph h = CandidateHypergraph::from_edges(t, s, edges, OutcomeVector{*y});
    for (int k : ks) {
      if (auto witness = find_bad_configuration(h, L, k)) {
        report.is_good = false;
        report.witness = std::move(witness);
        report.witness_outcome = y->to_string();
        return report;
      }
    }
  }
  report.is_good = true;
  return report;
}

}  // namespace gtlab
