#include "flagspec/inclusion_algebra.hpp"

#include "flagspec/enumeration.hpp"
#include "flagspec/errors.hpp"
#include "flagspec/qcombinatorics.hpp"

#include <cstdint>
#include <sstream>

namespace flagspec {

namespace {

std::string params(int n, std::uint32_t q, int i, int j, int k) {
  std::ostringstream s;
  s << "(n=" << n << ", q=" << q << ", i=" << i << ", j=" << j << ", k=" << k << ")";
  return s.str();
}

CheckResult compare(const SparseIntMatrix& lhs, const SparseIntMatrix& rhs, const std::string& what) {
  CheckResult r;
  if (auto d = first_difference(lhs, rhs)) {
    r.pass = false;
    std::ostringstream s;
    s << what << ": entry (" << d->first << "," << d->second << ") lhs="
      << (lhs.rows() == rhs.rows() && lhs.cols() == rhs.cols() ? lhs.at(d->first, d->second) : 0)
      << " rhs=" << (lhs.rows() == rhs.rows() && lhs.cols() == rhs.cols() ? rhs.at(d->first, d->second) : 0);
    r.witness = s.str();
  }
  return r;
}

SparseIntMatrix inclusion(int n, std::uint32_t q, int i, int j) {
  return build_inclusion_matrix(n, q, i, j).entries;
}

// First nonzero entry of a dense matrix, if any.
std::string first_nonzero(const ExactMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) != 0) {
        return "entry (" + std::to_string(r) + "," + std::to_string(c) + ") = " + to_string(m(r, c));
      }
    }
  }
  return {};
}

}  // namespace

InclusionMatrix build_inclusion_matrix(int n, std::uint32_t q, int i, int j,
                                       std::size_t max_nonzeros) {
  if (i < 0 || i > n || j < 0 || j > n) throw DomainError("inclusion matrix dimensions outside [0, n]");
  const int lo = std::min(i, j), hi = std::max(i, j);
  const BigInt nnz = q_binomial(n, lo, q) * q_binomial(n - lo, hi - lo, q);
  if (nnz > BigInt(std::to_string(max_nonzeros))) {
    throw ResourceError("inclusion matrix A_" + std::to_string(i) + std::to_string(j) + " would hold " +
                        to_string(nnz) + " nonzeros (cap " + std::to_string(max_nonzeros) + ")");
  }
  const auto lattice = SubspaceLattice::get(n, q);
  std::vector<SparseIntMatrix::Triplet> t;
  t.reserve(to_u64(nnz));
  for (std::size_t a = 0; a < lattice->level_size(i); ++a) {
    for (auto b : lattice->related(i, a, j)) t.push_back({a, b, 1});
  }
  InclusionMatrix m{n, q, i, j, {}};
  m.entries = SparseIntMatrix::from_triplets(lattice->level_size(i), lattice->level_size(j), std::move(t));
  return m;
}

CheckResult verify_kantor_product(int n, std::uint32_t q, int i, int j, int k) {
  if (!(0 <= k && k <= j && j <= i && i <= n)) {
    throw DomainError("Kantor product needs k <= j <= i <= n, got " + params(n, q, i, j, k));
  }
  const auto lhs = inclusion(n, q, i, j) * inclusion(n, q, j, k);
  const auto rhs = inclusion(n, q, i, k).scaled(to_i64(q_binomial(i - k, j - k, q)));
  return compare(lhs, rhs, "Kantor product " + params(n, q, i, j, k));
}

CheckResult verify_triple_product(int n, std::uint32_t q, int i, int j, int k) {
  if (!(0 <= k && k <= i && i <= j && j <= n)) {
    throw DomainError("triple product needs k <= i <= j <= n, got " + params(n, q, i, j, k));
  }
  const auto lhs = inclusion(n, q, i, j) * inclusion(n, q, j, k);
  SparseIntMatrix rhs(lhs.rows(), lhs.cols());
  for (int m = 0; m <= k; ++m) {
    const std::int64_t c = to_i64(c_coefficient(i, j, k, m, n, q));
    if (c == 0) continue;
    rhs = rhs + (inclusion(n, q, i, m) * inclusion(n, q, m, k)).scaled(c);
  }
  return compare(lhs, rhs, "triple product " + params(n, q, i, j, k));
}

std::size_t rank_check(int n, std::uint32_t q, int i, int k) {
  const auto a = inclusion(n, q, i, k);
  // Elimination cost grows with the row count; rank is transpose invariant.
  return a.rows() <= a.cols() ? a.to_dense().rank() : a.transpose().to_dense().rank();
}

TildeBasis tilde_basis(int n, std::uint32_t q, int k) {
  if (k < 0 || 2 * k > n) throw DomainError("tilde basis needs 0 <= k <= n/2");
  TildeBasis t{n, q, k, {}};
  if (k == 0) {
    t.vectors = ExactMatrix::identity(1);
    return t;
  }
  t.vectors = inclusion(n, q, k - 1, k).to_dense().null_space();
  return t;
}

CheckResult verify_annihilation(int n, std::uint32_t q, int k) {
  if (k < 1 || 2 * k > n) throw DomainError("annihilation check needs 1 <= k <= n/2");
  const auto t = tilde_basis(n, q, k);
  CheckResult r;
  std::vector<ExactMatrix> images(n + 1);
  for (int j = 0; j <= n; ++j) images[j] = inclusion(n, q, j, k).multiply(t.vectors);
  for (int j = 0; j < k && r.pass; ++j) {
    if (auto w = first_nonzero(images[j]); !w.empty()) {
      r.pass = false;
      r.witness = "A_" + std::to_string(j) + std::to_string(k) + " v: " + w;
    }
  }
  for (int i = 0; i < k && r.pass; ++i) {
    for (int j = k; j <= n && r.pass; ++j) {
      if (auto w = first_nonzero(inclusion(n, q, i, j).multiply(images[j])); !w.empty()) {
        r.pass = false;
        r.witness = "A_" + std::to_string(i) + std::to_string(j) + " A_" + std::to_string(j) +
                    std::to_string(k) + " v: " + w;
      }
    }
  }
  return r;
}

CheckResult verify_decomposition(int n, std::uint32_t q, int i) {
  if (i < 0 || i > n) throw DomainError("decomposition check needs 0 <= i <= n");
  std::vector<ExactMatrix> parts;
  for (int k = 0; 2 * k <= n; ++k) {
    if (k <= i && i <= n - k) parts.push_back(inclusion(n, q, i, k).multiply(tilde_basis(n, q, k).vectors));
  }
  const ExactMatrix all = ExactMatrix::hconcat(parts);
  const std::size_t expected = to_u64(q_binomial(n, i, q));
  CheckResult r;
  if (all.cols() != expected) {
    r.pass = false;
    r.witness = "column count " + std::to_string(all.cols()) + " != " + std::to_string(expected);
    return r;
  }
  if (const auto rank = all.rank(); rank != expected) {
    r.pass = false;
    r.witness = "rank " + std::to_string(rank) + " != " + std::to_string(expected);
  }
  return r;
}

BlockBasis build_block_basis(int n, std::uint32_t q) {
  if (n < 3) throw DomainError("block basis needs n >= 3");
  const auto lattice = SubspaceLattice::get(n, q);
  BlockBasis b;
  b.n = n;
  b.q = q;
  std::vector<SparseRationalMatrix::Triplet> t;
  std::size_t col = 0;
  for (int k = 0; 2 * k <= n; ++k) {
    const auto tb = tilde_basis(n, q, k);
    b.tilde_dims.push_back(tb.vectors.cols());
    const int lo = std::max(1, k), hi = std::min(n - 1, n - k);
    std::vector<ExactMatrix> images(n + 1);
    for (int i = lo; i <= hi; ++i) images[i] = inclusion(n, q, i, k).multiply(tb.vectors);
    for (std::size_t v = 0; v < tb.vectors.cols(); ++v) {
      for (int i = lo; i <= hi; ++i) {
        const std::size_t off = lattice->vertex_offset(i);
        for (std::size_t r = 0; r < images[i].rows(); ++r) {
          if (images[i](r, v) != 0) t.push_back({off + r, col, images[i](r, v)});
        }
        b.columns.push_back({k, v, i});
        ++col;
      }
    }
  }
  b.matrix = SparseRationalMatrix::from_triplets(lattice->vertex_count(), col, std::move(t));
  return b;
}

std::size_t block_basis_rank(const BlockBasis& b) {
  const auto lattice = SubspaceLattice::get(b.n, b.q);
  std::size_t rank = 0;
  for (int i = 1; i <= b.n - 1; ++i) {
    std::vector<std::size_t> local(b.columns.size(), SIZE_MAX);
    std::size_t width = 0;
    for (std::size_t c = 0; c < b.columns.size(); ++c) {
      if (b.columns[c].i == i) local[c] = width++;
    }
    const std::size_t off = lattice->vertex_offset(i), size = lattice->level_size(i);
    ExactMatrix block(size, width);
    for (const auto& t : b.matrix.triplets()) {
      if (t.row < off || t.row >= off + size) continue;
      if (local[t.col] == SIZE_MAX) throw IntegrityError("block basis column leaves its dimension");
      block(t.row - off, local[t.col]) = t.value;
    }
    rank += block.rank();
  }
  return rank;
}

}  // namespace flagspec
