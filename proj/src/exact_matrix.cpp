#include "flagspec/exact_matrix.hpp"

#include "flagspec/errors.hpp"

#include <utility>

namespace flagspec {

namespace {

// Integer rows proportional to the rows of m.
std::vector<std::vector<BigInt>> integer_rows(const ExactMatrix& m) {
  std::vector<std::vector<BigInt>> rows(m.rows(), std::vector<BigInt>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    BigInt den = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) den = lcm(den, m(r, c).get_den());
    for (std::size_t c = 0; c < m.cols(); ++c) {
      rows[r][c] = m(r, c).get_num() * (den / m(r, c).get_den());
    }
  }
  return rows;
}

void divide_by_content(std::vector<BigInt>& row) {
  BigInt g = 0;
  for (const auto& e : row) {
    if (e != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
  }
  if (g > 1) {
    for (auto& e : row) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), g.get_mpz_t());
  }
}

}  // namespace

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

ExactMatrix ExactMatrix::column(std::size_t c) const {
  ExactMatrix v(rows_, 1);
  for (std::size_t r = 0; r < rows_; ++r) v(r, 0) = (*this)(r, c);
  return v;
}

std::size_t ExactMatrix::rank() const {
  auto a = integer_rows(*this);
  const std::size_t m = rows_, n = cols_;
  BigInt prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < m; ++c) {
    std::size_t p = rank;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = rank + 1; i < m; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        a[i][j] = a[rank][c] * a[i][j] - a[i][c] * a[rank][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

ExactMatrix ExactMatrix::null_space() const {
  // Fraction-free Gauss-Jordan on integer rows, content removed after each step.
  auto a = integer_rows(*this);
  const std::size_t m = rows_, n = cols_;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const BigInt f = a[i][c];
      const BigInt piv = a[r][c];
      for (std::size_t j = 0; j < n; ++j) a[i][j] = piv * a[i][j] - f * a[r][j];
      divide_by_content(a[i]);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  ExactMatrix basis(n, n - pivot_cols.size());
  std::size_t col = 0;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    basis(f, col) = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
      Rational v(a[i][f], a[i][pivot_cols[i]]);
      v.canonicalize();
      basis(pivot_cols[i], col) = -v;
    }
    ++col;
  }
  return basis;
}

ExactMatrix ExactMatrix::solve(const ExactMatrix& rhs) const {
  if (rows_ != cols_ || rhs.rows_ != rows_) throw DomainError("solve needs a square system");
  const std::size_t n = rows_, k = rhs.cols_;
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + k));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = (*this)(i, j);
    for (std::size_t j = 0; j < k; ++j) a[i][n + j] = rhs(i, j);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw IntegrityError("matrix is singular");
    std::swap(a[p], a[c]);
    const Rational inv = 1 / a[c][c];
    for (std::size_t j = c; j < n + k; ++j) a[c][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < n + k; ++j) {
        if (a[c][j] != 0) a[i][j] -= f * a[c][j];
      }
    }
  }
  ExactMatrix x(n, k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) x(i, j) = std::move(a[i][n + j]);
  }
  return x;
}

ExactMatrix ExactMatrix::inverse() const { return solve(identity(rows_)); }

Rational ExactMatrix::trace() const {
  Rational t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("matrix product shape mismatch");
  ExactMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t t = 0; t < a.cols_; ++t) {
      const Rational& x = a(i, t);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (b(t, j) != 0) c(i, j) += x * b(t, j);
      }
    }
  }
  return c;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix sum shape mismatch");
  ExactMatrix c(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = a.data_[i] + b.data_[i];
  return c;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix sum shape mismatch");
  ExactMatrix c(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = a.data_[i] - b.data_[i];
  return c;
}

ExactMatrix operator*(const Rational& s, const ExactMatrix& a) {
  ExactMatrix c(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = s * a.data_[i];
  return c;
}

ExactMatrix ExactMatrix::hconcat(const std::vector<ExactMatrix>& blocks) {
  if (blocks.empty()) return {};
  const std::size_t rows = blocks.front().rows_;
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows_ != rows) throw DomainError("hconcat height mismatch");
    cols += b.cols_;
  }
  ExactMatrix out(rows, cols);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < b.cols_; ++c) out(r, off + c) = b(r, c);
    }
    off += b.cols_;
  }
  return out;
}

ExactMatrix ExactMatrix::block_diagonal(const std::vector<ExactMatrix>& blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows_;
    cols += b.cols_;
  }
  ExactMatrix out(rows, cols);
  std::size_t ro = 0, co = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows_; ++r) {
      for (std::size_t c = 0; c < b.cols_; ++c) out(ro + r, co + c) = b(r, c);
    }
    ro += b.rows_;
    co += b.cols_;
  }
  return out;
}

}  // namespace flagspec
