#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gtlab/matrix.hpp"
#include "gtlab/pooling.hpp"

namespace gtlab {

struct DecodeOptions {
  /// Abort enumeration once this many candidate edges exist. Degenerate
  /// matrices can make the candidate set explode; a distinct error keeps
  /// that failure mode visible.
  std::size_t max_edges = 1'000'000;
};

/// s-uniform hypergraph on the item set: each edge is a candidate defective
/// set consistent with one outcome vector. Edges are sorted ascending inside
/// and lexicographically across, stored flat with stride s.
class CandidateHypergraph {
 public:
  /// Build from explicit edges (test fixtures, file input). Edges are
  /// normalized: sorted inside, deduplicated, ordered lexicographically.
  static CandidateHypergraph from_edges(int vertex_count, int uniformity,
                                        const std::vector<std::vector<int>>& edges,
                                        OutcomeVector outcome = {});

  int vertex_count() const { return vertex_count_; }
  int uniformity() const { return uniformity_; }
  const OutcomeVector& outcome() const { return outcome_; }

  std::size_t edge_count() const {
    return uniformity_ ? edge_data_.size() / uniformity_ : 0;
  }
  std::span<const std::uint32_t> edge(std::size_t i) const {
    return {edge_data_.data() + i * uniformity_, static_cast<std::size_t>(uniformity_)};
  }
  std::vector<int> edge_vector(std::size_t i) const;

 private:
  friend CandidateHypergraph candidate_edges(const TestMatrix&, int, const OutcomeVector&,
                                             const DecodeOptions&);
  CandidateHypergraph() = default;

  int vertex_count_ = 0;
  int uniformity_ = 0;
  OutcomeVector outcome_;
  std::vector<std::uint32_t> edge_data_;
};

/// Columns whose support is covered by the outcome: the only items that can
/// belong to a consistent defective set.
std::vector<int> compatible_columns(const TestMatrix& m, const OutcomeVector& y);

/// All s-subsets of items whose column OR equals y exactly. Enumeration is
/// depth-first over compatible columns with a running OR and a suffix
/// coverage bound; output is exact and deterministic.
CandidateHypergraph candidate_edges(const TestMatrix& m, int s, const OutcomeVector& y,
                                    const DecodeOptions& options = {});

/// Union of all edges, sorted ascending.
std::vector<int> non_isolated_vertices(const CandidateHypergraph& h);

}  // namespace gtlab
