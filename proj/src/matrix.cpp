#include "gtlab/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "gtlab/errors.hpp"
#include "gtlab/rates.hpp"
#include "gtlab/rng.hpp"

namespace gtlab {

namespace {

void check_dimensions(int rows, int cols, double relative_weight) {
  if (rows < 2) throw ParameterError("matrix: need at least 2 rows");
  if (cols < 1) throw ParameterError("matrix: need at least 1 column");
  if (!(relative_weight > 0.0 && relative_weight < 1.0))
    throw ParameterError("matrix: relative weight must lie in (0, 1)");
}

// shortest round-trip decimal representation
std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

int TestMatrix::resolve_weight(int rows, double relative_weight) {
  int w = static_cast<int>(std::lround(relative_weight * rows));
  return std::clamp(w, 1, rows - 1);
}

BitVec TestMatrix::column(int col) const {
  if (col < 0 || col >= cols_) throw ParameterError("matrix: column index out of range");
  BitVec v(static_cast<std::size_t>(rows_));
  for (int i = 0; i < rows_; ++i)
    if (bit(i, col)) v.set(static_cast<std::size_t>(i));
  return v;
}

std::vector<BitVec> TestMatrix::columns() const {
  std::vector<BitVec> out;
  out.reserve(static_cast<std::size_t>(cols_));
  for (int j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

TestMatrix TestMatrix::from_bits(int rows, int cols, double relative_weight,
                                 std::uint64_t seed, std::vector<std::uint8_t> bits) {
  check_dimensions(rows, cols, relative_weight);
  if (bits.size() != static_cast<std::size_t>(rows) * cols)
    throw ParameterError("matrix: bit array size does not match dimensions");
  TestMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.weight_ = resolve_weight(rows, relative_weight);
  m.rel_weight_ = relative_weight;
  m.seed_ = seed;
  m.bits_ = std::move(bits);
  for (int j = 0; j < cols; ++j) {
    int w = 0;
    for (int i = 0; i < rows; ++i) w += m.bit(i, j);
    if (w != m.weight_)
      throw ParameterError("matrix: column weight does not match the declared weight");
  }
  return m;
}

BitVec sample_column(int rows, int weight, std::uint64_t seed, std::uint64_t column_index) {
  if (weight < 1 || weight >= rows) throw ParameterError("sample_column: weight out of range");
  std::mt19937_64 eng(derive_seed(seed, column_index));
  // partial Fisher-Yates: the first `weight` slots become the support
  std::vector<int> idx(static_cast<std::size_t>(rows));
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < weight; ++i) {
    std::uint64_t r = i + uniform_below(eng, static_cast<std::uint64_t>(rows - i));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(r)]);
  }
  BitVec col(static_cast<std::size_t>(rows));
  for (int i = 0; i < weight; ++i) col.set(static_cast<std::size_t>(idx[static_cast<std::size_t>(i)]));
  return col;
}

TestMatrix gen_matrix(int rows, int cols, double relative_weight, std::uint64_t seed) {
  check_dimensions(rows, cols, relative_weight);
  TestMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.weight_ = TestMatrix::resolve_weight(rows, relative_weight);
  m.rel_weight_ = relative_weight;
  m.seed_ = seed;
  m.bits_.assign(static_cast<std::size_t>(rows) * cols, 0);
  for (int j = 0; j < cols; ++j) {
    BitVec col = sample_column(rows, m.weight_, seed, static_cast<std::uint64_t>(j));
    for (int i = 0; i < rows; ++i)
      if (col.test(static_cast<std::size_t>(i)))
        m.bits_[static_cast<std::size_t>(i) * cols + j] = 1;
  }
  return m;
}

void TestMatrix::save(std::ostream& out) const {
  out << "gtlab-matrix v1\n";
  out << "N=" << rows_ << " t=" << cols_ << " w=" << format_double(rel_weight_)
      << " W=" << weight_ << " seed=" << seed_ << "\n";
  std::string line(static_cast<std::size_t>(cols_), '0');
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) line[static_cast<std::size_t>(j)] = bit(i, j) ? '1' : '0';
    out << line << "\n";
  }
}

TestMatrix TestMatrix::load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "gtlab-matrix v1")
    throw ParameterError("matrix file: bad magic line");
  if (!std::getline(in, line)) throw ParameterError("matrix file: missing parameter line");

  int rows = 0, cols = 0, weight = 0;
  double w = 0.0;
  std::uint64_t seed = 0;
  {
    std::istringstream ps(line);
    std::string tok;
    bool have[5] = {};
    while (ps >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos) throw ParameterError("matrix file: malformed parameter");
      std::string key = tok.substr(0, eq);
      std::string val = tok.substr(eq + 1);
      try {
        if (key == "N") rows = std::stoi(val), have[0] = true;
        else if (key == "t") cols = std::stoi(val), have[1] = true;
        else if (key == "w") w = std::stod(val), have[2] = true;
        else if (key == "W") weight = std::stoi(val), have[3] = true;
        else if (key == "seed") seed = std::stoull(val), have[4] = true;
        else throw ParameterError("matrix file: unknown parameter " + key);
      } catch (const std::logic_error&) {
        throw ParameterError("matrix file: unparsable value for " + key);
      }
    }
    if (!(have[0] && have[1] && have[2] && have[3] && have[4]))
      throw ParameterError("matrix file: incomplete parameter line");
  }
  check_dimensions(rows, cols, w);
  if (weight != resolve_weight(rows, w))
    throw ParameterError("matrix file: declared W inconsistent with w and N");

  std::vector<std::uint8_t> bits(static_cast<std::size_t>(rows) * cols, 0);
  for (int i = 0; i < rows; ++i) {
    if (!std::getline(in, line) || static_cast<int>(line.size()) != cols)
      throw ParameterError("matrix file: bad row line");
    for (int j = 0; j < cols; ++j) {
      char c = line[static_cast<std::size_t>(j)];
      if (c == '1')
        bits[static_cast<std::size_t>(i) * cols + j] = 1;
      else if (c != '0')
        throw ParameterError("matrix file: row characters must be 0 or 1");
    }
  }
  return from_bits(rows, cols, w, seed, std::move(bits));
}

double recommended_weight(int defectives, RecoveryMode mode) {
  if (defectives < 2) throw ParameterError("recommended_weight: need at least 2 defectives");
  if (mode == RecoveryMode::kPartial) return partial_recovery_weight(defectives);
  if (defectives == 2) return 1.0 - std::sqrt(2.0) / 2.0;
  return full_recovery_bound(defectives).w_star;
}

}  // namespace gtlab
