#include "gtlab/planner.hpp"

#include <algorithm>

#include "gtlab/errors.hpp"

namespace gtlab {

namespace {

std::vector<int> tested_positives(DefectiveOracle& oracle, const std::vector<int>& vertices) {
  std::vector<int> found;
  for (int v : vertices)
    if (oracle.individual_test(v)) found.push_back(v);
  return found;
}

}  // namespace

TwoStageResult run_two_stage(const TestMatrix& m, int s, DefectiveOracle& oracle,
                             const DecodeOptions& options) {
  OutcomeVector y = oracle.stage1(m);
  CandidateHypergraph h = candidate_edges(m, s, y, options);
  std::vector<int> vertices = non_isolated_vertices(h);

  TwoStageResult r;
  r.mode = RecoveryMode::kFull;
  r.found = tested_positives(oracle, vertices);
  r.stage1_tests = m.rows();
  r.stage2_tests = static_cast<int>(vertices.size());
  r.candidate_edge_count = h.edge_count();
  return r;
}

std::vector<std::vector<int>> greedy_low_overlap_edges(const CandidateHypergraph& h) {
  const int limit = h.uniformity() / 2;  // keep pairs meeting in at most floor(s/2) vertices
  std::vector<std::vector<int>> kept;
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    auto e = h.edge(i);
    bool ok = true;
    for (const auto& f : kept) {
      int common = 0;
      std::size_t a = 0, b = 0;
      while (a < e.size() && b < f.size()) {
        if (e[a] == static_cast<std::uint32_t>(f[b])) {
          ++common;
          ++a;
          ++b;
        } else if (e[a] < static_cast<std::uint32_t>(f[b])) {
          ++a;
        } else {
          ++b;
        }
      }
      if (common > limit) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(h.edge_vector(i));
  }
  return kept;
}

TwoStageResult run_partial(const TestMatrix& m, int s, DefectiveOracle& oracle,
                           const DecodeOptions& options) {
  OutcomeVector y = oracle.stage1(m);
  CandidateHypergraph h = candidate_edges(m, s, y, options);
  std::vector<std::vector<int>> subfamily = greedy_low_overlap_edges(h);

  std::vector<int> vertices;
  for (const auto& e : subfamily) vertices.insert(vertices.end(), e.begin(), e.end());
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());

  TwoStageResult r;
  r.mode = RecoveryMode::kPartial;
  r.found = tested_positives(oracle, vertices);
  r.stage1_tests = m.rows();
  r.stage2_tests = static_cast<int>(vertices.size());
  r.candidate_edge_count = h.edge_count();
  return r;
}

}  // namespace gtlab
