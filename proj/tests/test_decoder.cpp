#include <vector>

#include "doctest.h"
#include "gtlab/decoder.hpp"
#include "gtlab/errors.hpp"
#include "gtlab/matrix.hpp"
#include "gtlab/pooling.hpp"
#include "test_util.hpp"

using namespace gtlab;

namespace {

TestMatrix identity3() {
  return TestMatrix::from_bits(3, 3, 0.3, 0, {1, 0, 0, 0, 1, 0, 0, 0, 1});
}

// N=4 columns that are all the same weight-1 vector: worst case for edge
// explosion, every s-subset is a candidate.
TestMatrix duplicate_columns(int t) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(4) * t, 0);
  for (int j = 0; j < t; ++j) bits[static_cast<std::size_t>(j)] = 1;  // row 0
  return TestMatrix::from_bits(4, t, 0.25, 0, std::move(bits));
}

}  // namespace

TEST_SUITE("decoder") {

TEST_CASE("identity matrix decodes exactly") {
  TestMatrix m = identity3();
  CandidateHypergraph h = candidate_edges(m, 2, OutcomeVector::parse("110"));
  REQUIRE(h.edge_count() == 1);
  CHECK(h.edge_vector(0) == std::vector<int>{0, 1});
  CHECK(h.vertex_count() == 3);
  CHECK(h.uniformity() == 2);
  CHECK(h.outcome().to_string() == "110");
  CHECK(non_isolated_vertices(h) == std::vector<int>{0, 1});
}

TEST_CASE("all-zero outcome has no candidates") {
  TestMatrix m = gen_matrix(8, 12, 0.3, 42);
  OutcomeVector zero{BitVec(8)};
  CHECK(compatible_columns(m, zero).empty());
  CandidateHypergraph h = candidate_edges(m, 2, zero);
  CHECK(h.edge_count() == 0);
  CHECK(non_isolated_vertices(h).empty());
}

TEST_CASE("compatible_columns matches a direct subset scan") {
  TestMatrix m = gen_matrix(8, 12, 0.3, 42);
  SUBCASE("all-ones outcome admits every column") {
    OutcomeVector ones = OutcomeVector::parse("11111111");
    std::vector<int> all(12);
    for (int j = 0; j < 12; ++j) all[static_cast<std::size_t>(j)] = j;
    CHECK(compatible_columns(m, ones) == all);
  }
  SUBCASE("attainable outcome") {
    OutcomeVector y = outcome_vector(m, {3, 7});
    std::vector<int> got = compatible_columns(m, y);
    std::vector<int> want;
    for (int j = 0; j < 12; ++j)
      if (m.column(j).is_subset_of(y.bits)) want.push_back(j);
    CHECK(got == want);
    // the defining columns are always compatible with their own OR
    CHECK(std::binary_search(got.begin(), got.end(), 3));
    CHECK(std::binary_search(got.begin(), got.end(), 7));
  }
  SUBCASE("length mismatch") {
    CHECK_THROWS_AS(compatible_columns(m, OutcomeVector::parse("1111")), ParameterError);
  }
}

TEST_CASE("enumeration equals the brute-force subset scan") {
  TestMatrix m = gen_matrix(10, 14, 0.3, 5);
  std::mt19937_64 eng(404);
  for (int it = 0; it < 20; ++it) {
    std::vector<int> hidden = testutil::random_subset(14, 3, eng);
    OutcomeVector y = outcome_vector(m, hidden);
    CandidateHypergraph h = candidate_edges(m, 3, y);
    std::vector<std::vector<int>> brute = testutil::brute_force_edges(m, 3, y);
    REQUIRE(h.edge_count() == brute.size());
    bool hidden_found = false;
    for (std::size_t i = 0; i < brute.size(); ++i) {
      CHECK(h.edge_vector(i) == brute[i]);  // same lexicographic order
      hidden_found = hidden_found || brute[i] == hidden;
    }
    CHECK(hidden_found);
  }
}

TEST_CASE("enumeration equals brute force on random shapes and outcomes") {
  std::mt19937_64 eng(777);
  for (int it = 0; it < 50; ++it) {
    const int t = 6 + static_cast<int>(uniform_below(eng, 11));   // 6..16
    const int rows = 4 + static_cast<int>(uniform_below(eng, 7));  // 4..10
    const int s = 2 + static_cast<int>(uniform_below(eng, 2));     // 2..3
    const double w = 0.15 + 0.3 * (static_cast<double>(eng()) / 1.8446744073709552e19);
    TestMatrix m = gen_matrix(rows, t, w, eng());

    OutcomeVector y;
    if (it % 2 == 0) {
      y = outcome_vector(m, testutil::random_subset(t, s, eng));
    } else {
      BitVec bits(static_cast<std::size_t>(rows));  // arbitrary, often unattainable
      for (int r = 0; r < rows; ++r)
        if (uniform_below(eng, 2)) bits.set(static_cast<std::size_t>(r));
      y = OutcomeVector{bits};
    }

    CandidateHypergraph h = candidate_edges(m, s, y);
    std::vector<std::vector<int>> brute = testutil::brute_force_edges(m, s, y);
    REQUIRE(h.edge_count() == brute.size());
    for (std::size_t i = 0; i < brute.size(); ++i) CHECK(h.edge_vector(i) == brute[i]);
  }
}

TEST_CASE("edges come out sorted inside and lexicographic across") {
  TestMatrix m = gen_matrix(9, 16, 0.33, 2024);
  OutcomeVector y = outcome_vector(m, {1, 6, 12});
  CandidateHypergraph h = candidate_edges(m, 3, y);
  REQUIRE(h.edge_count() >= 1);
  std::vector<int> prev;
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    std::vector<int> e = h.edge_vector(i);
    CHECK(std::is_sorted(e.begin(), e.end()));
    CHECK(std::adjacent_find(e.begin(), e.end()) == e.end());
    if (i > 0) CHECK(prev < e);
    prev = e;
  }
}

TEST_CASE("edge cap raises CapacityError") {
  TestMatrix m = duplicate_columns(6);
  OutcomeVector y = outcome_vector(m, {0});  // all 15 pairs OR to this
  DecodeOptions opts;
  opts.max_edges = 2;
  CHECK_THROWS_AS(candidate_edges(m, 2, y, opts), CapacityError);
  CandidateHypergraph h = candidate_edges(m, 2, y);
  CHECK(h.edge_count() == 15);
}

TEST_CASE("candidate_edges rejects bad arguments") {
  TestMatrix m = identity3();
  CHECK_THROWS_AS(candidate_edges(m, 0, OutcomeVector::parse("110")), ParameterError);
  CHECK_THROWS_AS(candidate_edges(m, 2, OutcomeVector::parse("11")), ParameterError);
}

TEST_CASE("from_edges normalizes fixture input") {
  CandidateHypergraph h =
      CandidateHypergraph::from_edges(6, 2, {{4, 2}, {0, 1}, {2, 4}, {1, 0}});
  REQUIRE(h.edge_count() == 2);
  CHECK(h.edge_vector(0) == std::vector<int>{0, 1});
  CHECK(h.edge_vector(1) == std::vector<int>{2, 4});

  CHECK_THROWS_AS(CandidateHypergraph::from_edges(6, 2, {{0, 1, 2}}), ParameterError);
  CHECK_THROWS_AS(CandidateHypergraph::from_edges(6, 2, {{3, 3}}), ParameterError);
  CHECK_THROWS_AS(CandidateHypergraph::from_edges(6, 2, {{5, 6}}), ParameterError);
  CHECK_THROWS_AS(CandidateHypergraph::from_edges(6, 0, {}), ParameterError);
  CHECK_THROWS_AS(CandidateHypergraph::from_edges(-1, 2, {}), ParameterError);
}

TEST_CASE("non_isolated_vertices is the sorted union of edges") {
  CandidateHypergraph h = CandidateHypergraph::from_edges(10, 3, {{7, 1, 4}, {1, 2, 9}});
  CHECK(non_isolated_vertices(h) == std::vector<int>{1, 2, 4, 7, 9});
}

}  // TEST_SUITE
