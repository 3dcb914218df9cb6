#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "gtlab/errors.hpp"
#include "gtlab/matrix.hpp"
#include "gtlab/rates.hpp"
#include "test_util.hpp"

using namespace gtlab;

TEST_SUITE("matrix") {

TEST_CASE("resolve_weight rounds to nearest and clamps to [1, N-1]") {
  CHECK(TestMatrix::resolve_weight(20, 0.29289) == 6);
  CHECK(TestMatrix::resolve_weight(4, 0.25) == 1);
  CHECK(TestMatrix::resolve_weight(10, 0.999) == 9);
  CHECK(TestMatrix::resolve_weight(10, 0.001) == 1);
  CHECK(TestMatrix::resolve_weight(2, 0.9) == 1);
}

TEST_CASE("gen_matrix produces constant-weight columns") {
  SUBCASE("single column, forced weight 1") {
    TestMatrix m = gen_matrix(4, 1, 0.25, 99);
    CHECK(m.column_weight() == 1);
    CHECK(m.column(0).count() == 1);
  }
  SUBCASE("clamped to N-1") {
    TestMatrix m = gen_matrix(10, 5, 0.999, 1);
    for (int j = 0; j < 5; ++j) CHECK(m.column(j).count() == 9);
  }
  SUBCASE("every column weight 6 at N=20, w=0.29289") {
    TestMatrix m = gen_matrix(20, 50, 0.29289, 7);
    CHECK(m.column_weight() == 6);
    for (int j = 0; j < 50; ++j) CHECK(m.column(j).count() == 6);
  }
  SUBCASE("random shapes keep the invariant") {
    std::mt19937_64 eng(5);
    for (int it = 0; it < 50; ++it) {
      const int rows = 2 + static_cast<int>(uniform_below(eng, 40));
      const int cols = 1 + static_cast<int>(uniform_below(eng, 30));
      const double w = 0.01 + 0.98 * (static_cast<double>(eng()) / 1.8446744073709552e19);
      TestMatrix m = gen_matrix(rows, cols, w, eng());
      const int want = TestMatrix::resolve_weight(rows, w);
      CHECK(want >= 1);
      CHECK(want <= rows - 1);
      for (int j = 0; j < cols; ++j) CHECK(m.column(j).count() == static_cast<std::size_t>(want));
    }
  }
}

TEST_CASE("generation is deterministic and per-column independent") {
  TestMatrix a = gen_matrix(20, 50, 0.29289, 7);
  TestMatrix b = gen_matrix(20, 50, 0.29289, 7);
  for (int j = 0; j < 50; ++j) CHECK(a.column(j) == b.column(j));

  // column j depends only on (seed, j), not on t
  TestMatrix narrow = gen_matrix(20, 30, 0.29289, 7);
  for (int j = 0; j < 30; ++j) CHECK(a.column(j) == narrow.column(j));

  for (int j : {0, 3, 49}) CHECK(a.column(j) == sample_column(20, 6, 7, static_cast<std::uint64_t>(j)));

  TestMatrix other = gen_matrix(20, 50, 0.29289, 8);
  bool any_diff = false;
  for (int j = 0; j < 50; ++j) any_diff = any_diff || !(a.column(j) == other.column(j));
  CHECK(any_diff);
}

TEST_CASE("gen_matrix rejects bad dimensions and weights") {
  CHECK_THROWS_AS(gen_matrix(1, 5, 0.3, 0), ParameterError);
  CHECK_THROWS_AS(gen_matrix(10, 0, 0.3, 0), ParameterError);
  CHECK_THROWS_AS(gen_matrix(10, 5, 0.0, 0), ParameterError);
  CHECK_THROWS_AS(gen_matrix(10, 5, 1.0, 0), ParameterError);
  CHECK_THROWS_AS(gen_matrix(10, 5, -0.2, 0), ParameterError);
}

TEST_CASE("column sampling is uniform over weight-2 supports of length 6") {
  // 15 possible supports; chi^2 against uniform at the 0.999 quantile.
  const int samples = 100000;
  std::array<int, 15> counts{};
  for (int i = 0; i < samples; ++i) {
    BitVec c = sample_column(6, 2, 123, static_cast<std::uint64_t>(i));
    int a = -1, b = -1;
    for (int r = 0; r < 6; ++r)
      if (c.test(static_cast<std::size_t>(r))) (a < 0 ? a : b) = r;
    REQUIRE(b > a);
    ++counts[static_cast<std::size_t>(a * (11 - a) / 2 + (b - a - 1))];
  }
  const double expected = samples / 15.0;
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < 36.123);  // chi^2, 14 degrees of freedom, p = 0.001
}

TEST_CASE("row occupancy is balanced over many seeds") {
  std::array<long long, 20> ones{};
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    TestMatrix m = gen_matrix(20, 50, 0.29289, seed);
    for (int r = 0; r < 20; ++r)
      for (int c = 0; c < 50; ++c) ones[static_cast<std::size_t>(r)] += m.bit(r, c) ? 1 : 0;
  }
  const double expected = 10000.0 * 50.0 * 6.0 / 20.0;
  double chi2 = 0.0;
  for (long long c : ones) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < 43.82);  // chi^2, 19 degrees of freedom, p = 0.001
}

TEST_CASE("text format v1 writes the exact header and reloads") {
  TestMatrix m = gen_matrix(20, 50, 0.29289, 7);
  std::ostringstream out;
  m.save(out);
  const std::string text = out.str();
  CHECK(text.rfind("gtlab-matrix v1\nN=20 t=50 w=0.29289 W=6 seed=7\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 22);

  std::istringstream in(text);
  TestMatrix back = TestMatrix::load(in);
  CHECK(back.rows() == 20);
  CHECK(back.cols() == 50);
  CHECK(back.column_weight() == 6);
  CHECK(back.seed() == 7);
  for (int j = 0; j < 50; ++j) CHECK(back.column(j) == m.column(j));
}

TEST_CASE("load rejects malformed input") {
  auto load_from = [](const std::string& text) {
    std::istringstream in(text);
    return TestMatrix::load(in);
  };
  CHECK_THROWS_AS(load_from("wrong-magic\nN=2 t=1 w=0.5 W=1 seed=0\n10\n01\n"), ParameterError);
  CHECK_THROWS_AS(load_from("gtlab-matrix v1\nN=2 t=1 w=0.5 seed=0\n1\n0\n"), ParameterError);
  CHECK_THROWS_AS(load_from("gtlab-matrix v1\nN=2 t=1 w=0.5 W=2 seed=0\n1\n1\n"),
                  ParameterError);  // W inconsistent with clamp rule
  CHECK_THROWS_AS(load_from("gtlab-matrix v1\nN=2 t=1 w=0.5 W=1 seed=0\nx\n0\n"), ParameterError);
  CHECK_THROWS_AS(load_from("gtlab-matrix v1\nN=2 t=1 w=0.5 W=1 seed=0\n1\n"), ParameterError);
  CHECK_THROWS_AS(load_from("gtlab-matrix v1\nN=2 t=2 w=0.5 W=1 seed=0\n1\n00\n"),
                  ParameterError);  // short row
  CHECK_THROWS_AS(load_from("gtlab-matrix v1\nN=2 t=1 w=0.5 W=1 seed=0\n1\n1\n"),
                  ParameterError);  // column weight 2 != W
}

TEST_CASE("from_bits validates the column weight") {
  // 3x3 identity: resolve_weight(3, 0.3) = 1
  std::vector<std::uint8_t> id9{1, 0, 0, 0, 1, 0, 0, 0, 1};
  TestMatrix m = TestMatrix::from_bits(3, 3, 0.3, 0, id9);
  CHECK(m.column(1).to_string() == "010");
  std::vector<std::uint8_t> bad{1, 0, 0, 1, 1, 0, 0, 0, 1};
  CHECK_THROWS_AS(TestMatrix::from_bits(3, 3, 0.3, 0, bad), ParameterError);
  CHECK_THROWS_AS(TestMatrix::from_bits(3, 3, 0.3, 0, {1, 0, 0}), ParameterError);
}

TEST_CASE("recommended_weight per mode") {
  CHECK(recommended_weight(2, RecoveryMode::kFull) ==
        doctest::Approx(0.29289321881345248).epsilon(1e-12));
  // 2^{-1/2} = sqrt(2)/2 makes the two modes agree at s = 2
  CHECK(recommended_weight(2, RecoveryMode::kPartial) ==
        doctest::Approx(recommended_weight(2, RecoveryMode::kFull)).epsilon(1e-12));
  CHECK(recommended_weight(5, RecoveryMode::kPartial) ==
        doctest::Approx(1.0 - std::exp2(-0.2)).epsilon(1e-12));
  CHECK_THROWS_AS(recommended_weight(1, RecoveryMode::kFull), ParameterError);

  const RateResult full3 = full_recovery_bound(3);
  CHECK(recommended_weight(3, RecoveryMode::kFull) == doctest::Approx(full3.w_star).epsilon(1e-9));
  CHECK(full3.value == doctest::Approx(0.3219).epsilon(2e-3));
}

}  // TEST_SUITE
