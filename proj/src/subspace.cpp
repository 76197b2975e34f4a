#include "flagspec/subspace.hpp"

#include "flagspec/errors.hpp"

#include <algorithm>
#include <string>

namespace flagspec {

namespace {

// In-place RREF of a row-major matrix over F_q; returns pivot columns.
std::vector<int> rref_in_place(std::vector<Subspace::Entry>& m, int rows, int cols,
                               const PrimeField& f) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i) {
      if (m[static_cast<std::size_t>(i) * cols + c] != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    auto row_ptr = [&](int i) { return m.data() + static_cast<std::size_t>(i) * cols; };
    if (p != r) std::swap_ranges(row_ptr(p), row_ptr(p) + cols, row_ptr(r));
    const auto inv = f.inv(row_ptr(r)[c]);
    for (int j = c; j < cols; ++j) row_ptr(r)[j] = f.mul(row_ptr(r)[j], inv);
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const auto factor = row_ptr(i)[c];
      if (factor == 0) continue;
      for (int j = c; j < cols; ++j) {
        row_ptr(i)[j] = f.sub(row_ptr(i)[j], f.mul(factor, row_ptr(r)[j]));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.field_size() != b.field_size()) {
    throw DomainError("subspaces live in different ambient spaces");
  }
}

}  // namespace

Subspace::Subspace(int n, std::uint32_t q) : n_(n), q_(q), dim_(0) {
  if (n < 0) throw DomainError("negative ambient dimension");
}

Subspace::Subspace(int n, std::uint32_t q, int dim, std::vector<Entry> rows,
                   std::vector<int> pivots)
    : n_(n), q_(q), dim_(dim), rows_(std::move(rows)), pivots_(std::move(pivots)) {}

Subspace Subspace::from_rref(int n, std::uint32_t q, int dim, std::vector<Entry> rows) {
  if (dim < 0 || dim > n || rows.size() != static_cast<std::size_t>(dim) * n) {
    throw IntegrityError("basis shape does not match dimension");
  }
  std::vector<int> pivots;
  for (int r = 0; r < dim; ++r) {
    int p = -1;
    for (int c = 0; c < n; ++c) {
      const auto e = rows[static_cast<std::size_t>(r) * n + c];
      if (e >= q) throw IntegrityError("basis entry not reduced mod q");
      if (e != 0) {
        p = c;
        break;
      }
    }
    if (p < 0 || rows[static_cast<std::size_t>(r) * n + p] != 1 ||
        (!pivots.empty() && p <= pivots.back())) {
      throw IntegrityError("basis is not in reduced row echelon form");
    }
    pivots.push_back(p);
  }
  for (int r = 0; r < dim; ++r) {
    for (int other = 0; other < dim; ++other) {
      if (other != r && rows[static_cast<std::size_t>(other) * n + pivots[r]] != 0) {
        throw IntegrityError("pivot column is not cleared");
      }
    }
  }
  return Subspace(n, q, dim, std::move(rows), std::move(pivots));
}

Subspace Subspace::full(int n, std::uint32_t q) {
  std::vector<Entry> rows(static_cast<std::size_t>(n) * n, 0);
  std::vector<int> pivots(n);
  for (int i = 0; i < n; ++i) {
    rows[static_cast<std::size_t>(i) * n + i] = 1;
    pivots[i] = i;
  }
  return Subspace(n, q, n, std::move(rows), std::move(pivots));
}

bool Subspace::contains_vector(std::span<const Entry> v) const {
  if (v.size() != static_cast<std::size_t>(n_)) throw DomainError("vector length mismatch");
  // Residual against the RREF rows: the coefficient of row r is v[pivot_r].
  std::vector<Entry> residual(v.begin(), v.end());
  const std::uint64_t q = q_;
  for (int r = 0; r < dim_; ++r) {
    const auto c = residual[pivots_[r]];
    if (c == 0) continue;
    const Entry* row_ptr = rows_.data() + static_cast<std::size_t>(r) * n_;
    for (int j = pivots_[r]; j < n_; ++j) {
      const auto sub = static_cast<Entry>((c * static_cast<std::uint64_t>(row_ptr[j])) % q);
      residual[j] = residual[j] >= sub ? residual[j] - sub : residual[j] + q_ - sub;
    }
  }
  return std::all_of(residual.begin(), residual.end(), [](Entry e) { return e == 0; });
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  if (auto c = a.q_ <=> b.q_; c != 0) return c;
  if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.rows_.begin(), a.rows_.end(), b.rows_.begin(),
                                                b.rows_.end());
}

Subspace canonicalize(int n, const PrimeField& field, std::span<const Subspace::Entry> rows,
                      int row_count) {
  if (row_count < 0 || rows.size() != static_cast<std::size_t>(row_count) * n) {
    throw DomainError("row buffer does not match row count");
  }
  std::vector<Subspace::Entry> m(rows.begin(), rows.end());
  for (auto& e : m) e %= field.modulus();
  const auto pivots = rref_in_place(m, row_count, n, field);
  const int dim = static_cast<int>(pivots.size());
  m.resize(static_cast<std::size_t>(dim) * n);
  return Subspace::from_rref(n, field.modulus(), dim, std::move(m));
}

bool contains(const Subspace& u, const Subspace& v) {
  require_same_ambient(u, v);
  if (u.dim() > v.dim()) return false;
  for (int r = 0; r < u.dim(); ++r) {
    if (!v.contains_vector(u.row(r))) return false;
  }
  return true;
}

namespace {

struct Zassenhaus {
  Subspace sum;
  Subspace intersection;
};

Zassenhaus zassenhaus(const Subspace& u, const Subspace& w) {
  require_same_ambient(u, w);
  const int n = u.ambient_dim();
  const PrimeField f(u.field_size());
  const int rows = u.dim() + w.dim();
  const int cols = 2 * n;
  std::vector<Subspace::Entry> m(static_cast<std::size_t>(rows) * cols, 0);
  for (int r = 0; r < u.dim(); ++r) {
    auto src = u.row(r);
    std::copy(src.begin(), src.end(), m.begin() + static_cast<std::ptrdiff_t>(r) * cols);
    std::copy(src.begin(), src.end(), m.begin() + static_cast<std::ptrdiff_t>(r) * cols + n);
  }
  for (int r = 0; r < w.dim(); ++r) {
    auto src = w.row(r);
    std::copy(src.begin(), src.end(),
              m.begin() + static_cast<std::ptrdiff_t>(u.dim() + r) * cols);
  }
  const auto pivots = rref_in_place(m, rows, cols, f);
  std::vector<Subspace::Entry> sum_rows, cap_rows;
  int sum_dim = 0, cap_dim = 0;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    const auto* row = m.data() + r * cols;
    if (pivots[r] < n) {
      sum_rows.insert(sum_rows.end(), row, row + n);
      ++sum_dim;
    } else {
      cap_rows.insert(cap_rows.end(), row + n, row + cols);
      ++cap_dim;
    }
  }
  return {canonicalize(n, f, sum_rows, sum_dim), canonicalize(n, f, cap_rows, cap_dim)};
}

}  // namespace

LatticeDims lattice_dims(const Subspace& u, const Subspace& w) {
  const auto z = zassenhaus(u, w);
  return {z.sum.dim(), z.intersection.dim()};
}

Subspace subspace_sum(const Subspace& u, const Subspace& w) { return zassenhaus(u, w).sum; }

Subspace subspace_intersection(const Subspace& u, const Subspace& w) {
  return zassenhaus(u, w).intersection;
}

Flag::Flag(int n, std::uint32_t q, std::vector<Subspace> chain)
    : n_(n), q_(q), chain_(std::move(chain)) {
  for (std::size_t i = 0; i < chain_.size(); ++i) {
    const auto& s = chain_[i];
    if (s.ambient_dim() != n || s.field_size() != q) {
      throw DomainError("flag member lives in a different ambient space");
    }
    if (s.dim() < 1 || s.dim() > n - 1) {
      throw DomainError("flag member of dimension " + std::to_string(s.dim()) +
                        " is trivial");
    }
    if (i > 0) {
      const auto& prev = chain_[i - 1];
      if (prev.dim() >= s.dim() || !contains(prev, s)) {
        throw DomainError("flag chain is not strictly nested");
      }
    }
  }
}

Flag::Flag(std::vector<Subspace> chain)
    : Flag(chain.empty() ? throw DomainError("empty chain needs explicit (n, q)")
                         : chain.front().ambient_dim(),
           chain.front().field_size(), std::move(chain)) {}

std::vector<int> Flag::signature() const {
  std::vector<int> sig;
  sig.reserve(chain_.size());
  for (const auto& s : chain_) sig.push_back(s.dim());
  return sig;
}

}  // namespace flagspec
