#include "flagspec/sparse_matrix.hpp"

namespace flagspec {

SparseRationalMatrix to_rational(const SparseIntMatrix& m) {
  std::vector<SparseRationalMatrix::Triplet> t;
  t.reserve(m.nnz());
  for (const auto& x : m.triplets()) t.push_back({x.row, x.col, detail::to_rational(x.value)});
  return SparseRationalMatrix::from_triplets(m.rows(), m.cols(), std::move(t));
}

SparseRationalMatrix to_sparse(const ExactMatrix& m) {
  std::vector<SparseRationalMatrix::Triplet> t;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) != 0) t.push_back({r, c, m(r, c)});
    }
  }
  return SparseRationalMatrix::from_triplets(m.rows(), m.cols(), std::move(t));
}

}  // namespace flagspec
