#pragma once

#include "flagspec/errors.hpp"
#include "flagspec/exact.hpp"
#include "flagspec/exact_matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

namespace flagspec {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw IntegrityError("int64 overflow in sparse arithmetic");
  return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw IntegrityError("int64 overflow in sparse arithmetic");
  return r;
}
inline Rational checked_add(const Rational& a, const Rational& b) { return a + b; }
inline Rational checked_mul(const Rational& a, const Rational& b) { return a * b; }

inline Rational to_rational(std::int64_t v) { return Rational(static_cast<long>(v)); }
inline const Rational& to_rational(const Rational& v) { return v; }

}  // namespace detail

/// Compressed sparse row matrix with canonical (sorted, zero-free) storage,
/// so structural equality is value equality.
template <typename T>
class SparseMatrix {
 public:
  struct Triplet {
    std::size_t row;
    std::size_t col;
    T value;
  };

  SparseMatrix() : row_ptr_(1, 0) {}
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

  /// Duplicates are summed; zeros dropped.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> t) {
    std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    SparseMatrix m(rows, cols);
    for (std::size_t i = 0; i < t.size();) {
      if (t[i].row >= rows || t[i].col >= cols) throw DomainError("triplet outside matrix");
      T sum = t[i].value;
      std::size_t j = i + 1;
      for (; j < t.size() && t[j].row == t[i].row && t[j].col == t[i].col; ++j) {
        sum = detail::checked_add(sum, t[j].value);
      }
      if (sum != 0) {
        m.col_idx_.push_back(t[i].col);
        m.values_.push_back(std::move(sum));
        ++m.row_ptr_[t[i].row + 1];
      }
      i = j;
    }
    for (std::size_t r = 0; r < rows; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
    return m;
  }

  static SparseMatrix identity(std::size_t n) {
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, T(1)});
    return from_triplets(n, n, std::move(t));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::size_t row_begin(std::size_t r) const { return row_ptr_[r]; }
  std::size_t row_end(std::size_t r) const { return row_ptr_[r + 1]; }
  std::size_t col_at(std::size_t p) const { return col_idx_[p]; }
  const T& value_at(std::size_t p) const { return values_[p]; }

  /// Entry (r, c), zero when not stored.
  T at(std::size_t r, std::size_t c) const {
    auto b = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r]);
    auto e = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r + 1]);
    auto it = std::lower_bound(b, e, c);
    if (it == e || *it != c) return T(0);
    return values_[static_cast<std::size_t>(it - col_idx_.begin())];
  }

  std::vector<Triplet> triplets() const {
    std::vector<Triplet> t;
    t.reserve(nnz());
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) t.push_back({r, col_idx_[p], values_[p]});
    }
    return t;
  }

  SparseMatrix transpose() const {
    auto t = triplets();
    for (auto& x : t) std::swap(x.row, x.col);
    return from_triplets(cols_, rows_, std::move(t));
  }

  SparseMatrix scaled(const T& s) const {
    auto t = triplets();
    for (auto& x : t) x.value = detail::checked_mul(x.value, s);
    return from_triplets(rows_, cols_, std::move(t));
  }

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("sparse sum shape mismatch");
    auto t = a.triplets();
    auto u = b.triplets();
    t.insert(t.end(), u.begin(), u.end());
    return from_triplets(a.rows_, a.cols_, std::move(t));
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("sparse product shape mismatch");
    SparseMatrix c(a.rows_, b.cols_);
    std::vector<std::optional<T>> acc(b.cols_);
    std::vector<std::size_t> touched;
    for (std::size_t r = 0; r < a.rows_; ++r) {
      touched.clear();
      for (std::size_t p = a.row_ptr_[r]; p < a.row_ptr_[r + 1]; ++p) {
        const std::size_t k = a.col_idx_[p];
        for (std::size_t s = b.row_ptr_[k]; s < b.row_ptr_[k + 1]; ++s) {
          const std::size_t j = b.col_idx_[s];
          T prod = detail::checked_mul(a.values_[p], b.values_[s]);
          if (!acc[j]) {
            acc[j] = std::move(prod);
            touched.push_back(j);
          } else {
            *acc[j] = detail::checked_add(*acc[j], prod);
          }
        }
      }
      std::sort(touched.begin(), touched.end());
      for (auto j : touched) {
        if (*acc[j] != 0) {
          c.col_idx_.push_back(j);
          c.values_.push_back(std::move(*acc[j]));
        }
        acc[j].reset();
      }
      c.row_ptr_[r + 1] = c.values_.size();
    }
    return c;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.row_ptr_ == b.row_ptr_ &&
           a.col_idx_ == b.col_idx_ && a.values_ == b.values_;
  }

  /// First (row, col) where the two matrices differ, if any.
  friend std::optional<std::pair<std::size_t, std::size_t>> first_difference(const SparseMatrix& a,
                                                                             const SparseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return std::pair<std::size_t, std::size_t>{0, 0};
    for (std::size_t r = 0; r < a.rows_; ++r) {
      std::size_t p = a.row_ptr_[r], s = b.row_ptr_[r];
      const std::size_t pe = a.row_ptr_[r + 1], se = b.row_ptr_[r + 1];
      while (p < pe || s < se) {
        if (s == se || (p < pe && a.col_idx_[p] < b.col_idx_[s])) return std::pair{r, a.col_idx_[p]};
        if (p == pe || b.col_idx_[s] < a.col_idx_[p]) return std::pair{r, b.col_idx_[s]};
        if (a.values_[p] != b.values_[s]) return std::pair{r, a.col_idx_[p]};
        ++p;
        ++s;
      }
    }
    return std::nullopt;
  }

  ExactMatrix to_dense() const {
    ExactMatrix d(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
        d(r, col_idx_[p]) = detail::to_rational(values_[p]);
      }
    }
    return d;
  }

  /// this * v for a dense exact matrix v.
  ExactMatrix multiply(const ExactMatrix& v) const {
    if (v.rows() != cols_) throw DomainError("sparse-dense product shape mismatch");
    ExactMatrix out(rows_, v.cols());
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
        const Rational x = detail::to_rational(values_[p]);
        for (std::size_t j = 0; j < v.cols(); ++j) {
          const Rational& y = v(col_idx_[p], j);
          if (y != 0) out(r, j) += x * y;
        }
      }
    }
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> col_idx_;
  std::vector<T> values_;
};

using SparseIntMatrix = SparseMatrix<std::int64_t>;
using SparseRationalMatrix = SparseMatrix<Rational>;

/// Entry-wise exact conversion.
SparseRationalMatrix to_rational(const SparseIntMatrix& m);
SparseRationalMatrix to_sparse(const ExactMatrix& m);

}  // namespace flagspec
