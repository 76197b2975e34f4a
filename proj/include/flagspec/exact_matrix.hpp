#pragma once

#include "flagspec/exact.hpp"

#include <cstddef>
#include <vector>

namespace flagspec {

/// Dense row-major matrix of exact rationals.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);
  static ExactMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ExactMatrix transpose() const;
  ExactMatrix column(std::size_t c) const;

  /// Rank via fraction-free (Bareiss) elimination after clearing row denominators.
  std::size_t rank() const;

  /// Columns form the echelon basis of {x : A x = 0}, one per free column,
  /// with that free coordinate equal to 1.
  ExactMatrix null_space() const;

  /// Throws IntegrityError if singular.
  ExactMatrix inverse() const;

  /// X with A X = rhs for square invertible A. Throws IntegrityError if singular.
  ExactMatrix solve(const ExactMatrix& rhs) const;

  Rational trace() const;

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator*(const Rational& s, const ExactMatrix& a);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Concatenates column blocks of equal height.
  static ExactMatrix hconcat(const std::vector<ExactMatrix>& blocks);
  static ExactMatrix block_diagonal(const std::vector<ExactMatrix>& blocks);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace flagspec
