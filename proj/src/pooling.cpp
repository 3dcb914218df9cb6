#include "gtlab/pooling.hpp"

#include <algorithm>

#include "gtlab/errors.hpp"

namespace gtlab {

namespace {

void check_items(const TestMatrix& m, std::span<const int> items) {
  for (int j : items)
    if (j < 0 || j >= m.cols()) throw ParameterError("item index out of range");
}

}  // namespace

OutcomeVector outcome_vector(const TestMatrix& m, std::span<const int> items) {
  check_items(m, items);
  BitVec bits(static_cast<std::size_t>(m.rows()));
  for (int j : items) bits |= m.column(j);
  return OutcomeVector{std::move(bits)};
}

OutcomeVector outcome_vector(const TestMatrix& m, std::initializer_list<int> items) {
  return outcome_vector(m, std::span<const int>(items.begin(), items.size()));
}

DefectiveOracle::DefectiveOracle(int universe, std::vector<int> defectives)
    : universe_(universe), members_(std::move(defectives)) {
  if (universe_ < 1) throw ParameterError("oracle: universe must be positive");
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw ParameterError("oracle: defective set has duplicates");
  for (int v : members_)
    if (v < 0 || v >= universe_) throw ParameterError("oracle: defective index out of range");
}

bool DefectiveOracle::contains(int item) const {
  return std::binary_search(members_.begin(), members_.end(), item);
}

bool DefectiveOracle::pool_test(std::span<const int> pool) {
  for (int v : pool)
    if (v < 0 || v >= universe_) throw ParameterError("oracle: pool index out of range");
  pool_tests_.fetch_add(1, std::memory_order_relaxed);
  for (int v : pool)
    if (contains(v)) return true;
  return false;
}

bool DefectiveOracle::pool_test(std::initializer_list<int> pool) {
  return pool_test(std::span<const int>(pool.begin(), pool.size()));
}

bool DefectiveOracle::individual_test(int item) {
  if (item < 0 || item >= universe_) throw ParameterError("oracle: item index out of range");
  individual_tests_.fetch_add(1, std::memory_order_relaxed);
  return contains(item);
}

OutcomeVector DefectiveOracle::stage1(const TestMatrix& m) {
  if (m.cols() != universe_) throw ParameterError("oracle: matrix width does not match universe");
  pool_tests_.fetch_add(static_cast<std::uint64_t>(m.rows()), std::memory_order_relaxed);
  return outcome_vector(m, members_);
}

}  // namespace gtlab
