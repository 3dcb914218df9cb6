#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gtlab/decoder.hpp"
#include "gtlab/matrix.hpp"

namespace gtlab {

/// Sunflower witness: L edges whose pairwise intersections all equal the
/// same size-k core.
struct BadConfiguration {
  int k = 0;
  std::vector<int> core;                 // sorted, |core| == k
  std::vector<std::vector<int>> edges;   // the L witness edges, lex order
};

/// Maximum vertex degree and one vertex attaining it (nullopt if no edges).
std::pair<int, std::optional<int>> max_degree(const CandidateHypergraph& h);

/// Exact maximum matching cardinality of a 2-uniform hypergraph, by
/// branch and bound over edges. Candidate graphs stay small, so exact
/// search is affordable.
int max_matching_size(const CandidateHypergraph& g);

/// Search for L edges pairwise intersecting in one fixed k-set. k = 0 asks
/// for L pairwise-disjoint edges; s = 2, k = 1 for a star of L edges.
/// Returns the lexicographically first witness, or nullopt.
std::optional<BadConfiguration> find_bad_configuration(const CandidateHypergraph& h,
                                                       int L, int k);

/// Instance-level check of the degree/matching edge bound: true iff
/// (max degree < L and max matching < L) implies |E| < 2L^2 on this graph.
bool edge_bound_check(const CandidateHypergraph& g, int L);

struct GoodCodeOptions {
  /// Upper limit on C(t, s), the number of subsets the checker enumerates.
  std::size_t max_subsets = 2'000'000;
};

struct GoodCodeReport {
  bool is_good = true;
  int L = 0;
  std::vector<int> k_values;
  std::optional<BadConfiguration> witness;
  std::string witness_outcome;   // outcome exhibiting the witness, "" if good
  std::size_t outcomes_checked = 0;
};

/// Check every attainable outcome vector: group all s-subsets of columns by
/// their OR and search each group for a bad configuration with k in
/// k_values. Unattainable outcomes yield empty hypergraphs and cannot
/// contain a configuration, so they need no explicit scan.
GoodCodeReport is_good_code(const TestMatrix& m, int s, int L,
                            const std::vector<int>& k_values,
                            const GoodCodeOptions& options = {});

}  // namespace gtlab
