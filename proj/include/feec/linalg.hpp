#pragma once

#include "feec/rational.hpp"

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace feec
{

/// Dense row-major matrix of exact rationals.
class RationalMatrix
{
public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols)
  {
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j)
  {
    return data_[i * cols_ + j];
  }
  const Rational& operator()(std::size_t i, std::size_t j) const
  {
    return data_[i * cols_ + j];
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&)
      = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Rational determinant(RationalMatrix m);
std::size_t rank(RationalMatrix m);

/// Solves m x = b for square nonsingular m; std::nullopt if singular.
std::optional<std::vector<Rational>> solve(RationalMatrix m,
                                           std::vector<Rational> b);

/// Throws std::domain_error if m is singular.
RationalMatrix inverse(const RationalMatrix& m);

/// Sparse vector with strictly increasing column keys.
using SparseVector = std::vector<std::pair<std::uint64_t, Rational>>;

/// Row echelon structure over Q built incrementally. Rows are stored as
/// primitive integer vectors and reduced fraction-free, so the pivot order is
/// determined solely by insertion order and column keys.
class Echelon
{
public:
  /// Adds v if it is independent of the stored rows. Returns true if the rank
  /// increased.
  bool insert(const SparseVector& v);

  bool in_span(const SparseVector& v) const;

  std::size_t rank() const { return pivots_.size(); }

private:
  using IntRow = std::vector<std::pair<std::uint64_t, mpz_class>>;
  IntRow reduce(IntRow v) const;
  static IntRow to_primitive(const SparseVector& v);

  std::unordered_map<std::uint64_t, IntRow> pivots_;
};

/// Rank of a family of sparse vectors.
std::size_t rank(const std::vector<SparseVector>& rows);

} // namespace feec
