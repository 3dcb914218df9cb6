#pragma once

#include <vector>

#include "gtlab/decoder.hpp"
#include "gtlab/matrix.hpp"
#include "gtlab/pooling.hpp"

namespace gtlab {

struct TwoStageResult {
  RecoveryMode mode = RecoveryMode::kFull;
  std::vector<int> found;  // sorted identified defectives
  int stage1_tests = 0;    // rows of the matrix
  int stage2_tests = 0;    // individually retested vertices
  std::size_t candidate_edge_count = 0;
};

/// Full two-stage search: pool every row, build the candidate hypergraph for
/// the observed outcome, then retest each non-isolated vertex individually.
/// Recovers the hidden set exactly for every matrix: the true set is always
/// an edge, and isolated vertices are provably non-defective.
TwoStageResult run_two_stage(const TestMatrix& m, int s, DefectiveOracle& oracle,
                             const DecodeOptions& options = {});

/// Maximal subfamily of edges with pairwise intersections of at most
/// floor(s/2) vertices, built greedily in lexicographic edge order. Every
/// excluded edge meets some kept edge in at least floor(s/2)+1 vertices.
std::vector<std::vector<int>> greedy_low_overlap_edges(const CandidateHypergraph& h);

/// Partial-recovery variant: retest only the vertices of the greedy
/// low-overlap subfamily. Finds at least floor(s/2)+1 true defectives and
/// never reports a false positive.
TwoStageResult run_partial(const TestMatrix& m, int s, DefectiveOracle& oracle,
                           const DecodeOptions& options = {});

}  // namespace gtlab
