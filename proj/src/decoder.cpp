#include "gtlab/decoder.hpp"

#include <algorithm>

#include "gtlab/errors.hpp"

namespace gtlab {

std::vector<int> CandidateHypergraph::edge_vector(std::size_t i) const {
  auto e = edge(i);
  return std::vector<int>(e.begin(), e.end());
}

CandidateHypergraph CandidateHypergraph::from_edges(int vertex_count, int uniformity,
                                                    const std::vector<std::vector<int>>& edges,
                                                    OutcomeVector outcome) {
  if (vertex_count < 0) throw ParameterError("hypergraph: negative vertex count");
  if (uniformity < 1) throw ParameterError("hypergraph: uniformity must be >= 1");
  std::vector<std::vector<int>> normalized;
  normalized.reserve(edges.size());
  for (const auto& e : edges) {
    if (static_cast<int>(e.size()) != uniformity)
      throw ParameterError("hypergraph: edge size does not match uniformity");
    std::vector<int> sorted = e;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ParameterError("hypergraph: edge has repeated vertices");
    if (sorted.front() < 0 || sorted.back() >= vertex_count)
      throw ParameterError("hypergraph: vertex out of range");
    normalized.push_back(std::move(sorted));
  }
  std::sort(normalized.begin(), normalized.end());
  normalized.erase(std::unique(normalized.begin(), normalized.end()), normalized.end());

  CandidateHypergraph h;
  h.vertex_count_ = vertex_count;
  h.uniformity_ = uniformity;
  h.outcome_ = std::move(outcome);
  h.edge_data_.reserve(normalized.size() * static_cast<std::size_t>(uniformity));
  for (const auto& e : normalized)
    for (int v : e) h.edge_data_.push_back(static_cast<std::uint32_t>(v));
  return h;
}

std::vector<int> compatible_columns(const TestMatrix& m, const OutcomeVector& y) {
  if (y.length() != m.rows()) throw ParameterError("compatible_columns: outcome length mismatch");
  std::vector<int> out;
  for (int j = 0; j < m.cols(); ++j)
    if (m.column(j).is_subset_of(y.bits)) out.push_back(j);
  return out;
}

namespace {

// Depth-first enumeration over compatible columns. acc[d] is the OR of the
// chosen columns at depth d; suffix[i] is the OR of cols[i..m), used to cut
// branches that can no longer cover the outcome.
struct EdgeSearch {
  const std::vector<int>& compat;
  const std::vector<BitVec>& cols;
  const std::vector<BitVec>& suffix;
  const BitVec& target;
  int s;
  std::size_t max_edges;
  std::vector<BitVec> acc;
  std::vector<int> chosen;
  std::vector<std::uint32_t>& out;

  void run() {
    if (s <= static_cast<int>(compat.size())) descend(0, 0);
  }

  void descend(int start, int depth) {
    if (depth == s) {
      if (target.is_subset_of(acc[static_cast<std::size_t>(depth)])) emit();
      return;
    }
    const int m = static_cast<int>(compat.size());
    const int need = s - depth;
    for (int i = start; i + need <= m; ++i) {
      // all later suffixes are subsets of this one, so a failed cover ends the loop
      if (!acc[static_cast<std::size_t>(depth)].covers_with(suffix[static_cast<std::size_t>(i)], target))
        break;
      acc[static_cast<std::size_t>(depth + 1)].assign_or(acc[static_cast<std::size_t>(depth)],
                                                         cols[static_cast<std::size_t>(i)]);
      chosen[static_cast<std::size_t>(depth)] = i;
      descend(i + 1, depth + 1);
    }
  }

  void emit() {
    if (out.size() / static_cast<std::size_t>(s) >= max_edges)
      throw CapacityError("candidate_edges: edge cap exceeded");
    for (int d = 0; d < s; ++d)
      out.push_back(static_cast<std::uint32_t>(compat[static_cast<std::size_t>(chosen[static_cast<std::size_t>(d)])]));
  }
};

}  // namespace

CandidateHypergraph candidate_edges(const TestMatrix& m, int s, const OutcomeVector& y,
                                    const DecodeOptions& options) {
  if (s < 1) throw ParameterError("candidate_edges: uniformity must be >= 1");
  if (y.length() != m.rows()) throw ParameterError("candidate_edges: outcome length mismatch");

  std::vector<int> compat = compatible_columns(m, y);
  std::vector<BitVec> cols;
  cols.reserve(compat.size());
  for (int j : compat) cols.push_back(m.column(j));

  std::vector<BitVec> suffix(compat.size() + 1, BitVec(static_cast<std::size_t>(m.rows())));
  for (std::size_t i = compat.size(); i-- > 0;) suffix[i] = suffix[i + 1] | cols[i];

  CandidateHypergraph h;
  h.vertex_count_ = m.cols();
  h.uniformity_ = s;
  h.outcome_ = y;

  EdgeSearch search{compat,
                    cols,
                    suffix,
                    y.bits,
                    s,
                    options.max_edges,
                    std::vector<BitVec>(static_cast<std::size_t>(s) + 1,
                                        BitVec(static_cast<std::size_t>(m.rows()))),
                    std::vector<int>(static_cast<std::size_t>(s)),
                    h.edge_data_};
  search.run();
  return h;
}

std::vector<int> non_isolated_vertices(const CandidateHypergraph& h) {
  std::vector<int> out;
  for (std::size_t i = 0; i < h.edge_count(); ++i)
    for (std::uint32_t v : h.edge(i)) out.push_back(static_cast<int>(v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace gtlab
