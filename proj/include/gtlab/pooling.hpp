#pragma once

#include <atomic>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "gtlab/bitvec.hpp"
#include "gtlab/matrix.hpp"

namespace gtlab {

/// Result of running all pools of a matrix against one item set: bit i is 1
/// iff pool i contains a member of the set.
struct OutcomeVector {
  BitVec bits;

  int length() const { return static_cast<int>(bits.size()); }
  int weight() const { return static_cast<int>(bits.count()); }
  std::string to_string() const { return bits.to_string(); }
  static OutcomeVector parse(const std::string& s) { return OutcomeVector{BitVec::parse(s)}; }

  bool operator==(const OutcomeVector&) const = default;
};

/// Componentwise OR of the matrix columns indexed by items. Empty set gives
/// the all-zero vector.
OutcomeVector outcome_vector(const TestMatrix& m, std::span<const int> items);
OutcomeVector outcome_vector(const TestMatrix& m, std::initializer_list<int> items);

/// A hidden defective set behind a query-only interface. Answers are exact.
/// Pool tests and individual retests are counted separately; counters are
/// atomic so concurrent queries stay consistent.
class DefectiveOracle {
 public:
  DefectiveOracle(int universe, std::vector<int> defectives);

  int universe() const { return universe_; }
  int defective_count() const { return static_cast<int>(members_.size()); }

  /// 1 iff the pool contains at least one defective. Counts one pool test.
  bool pool_test(std::span<const int> pool);
  bool pool_test(std::initializer_list<int> pool);

  /// Retest of a single item; counted in individual_tests.
  bool individual_test(int item);

  /// Run every row of the matrix as a pool in parallel; counts rows() pool
  /// tests and returns the outcome for the hidden set.
  OutcomeVector stage1(const TestMatrix& m);

  std::uint64_t pool_tests() const { return pool_tests_.load(); }
  std::uint64_t individual_tests() const { return individual_tests_.load(); }

 private:
  bool contains(int item) const;

  int universe_;
  std::vector<int> members_;  // sorted; exposed only through test answers
  std::atomic<std::uint64_t> pool_tests_{0};
  std::atomic<std::uint64_t> individual_tests_{0};
};

}  // namespace gtlab
