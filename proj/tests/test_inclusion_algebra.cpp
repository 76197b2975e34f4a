#include "oracles.hpp"

#include "flagspec/enumeration.hpp"
#include "flagspec/errors.hpp"
#include "flagspec/inclusion_algebra.hpp"
#include "flagspec/qcombinatorics.hpp"

#include <gtest/gtest.h>

using namespace flagspec;

TEST(InclusionMatrix, Examples) {
  const auto a = build_inclusion_matrix(3, 2, 1, 2).entries;
  ASSERT_EQ(a.rows(), 7u);
  ASSERT_EQ(a.cols(), 7u);
  for (std::size_t r = 0; r < 7; ++r) {
    long row = 0, col = 0;
    for (std::size_t c = 0; c < 7; ++c) {
      row += a.at(r, c);
      col += a.at(c, r);
    }
    EXPECT_EQ(row, 3);
    EXPECT_EQ(col, 3);
  }
  EXPECT_EQ(build_inclusion_matrix(4, 3, 2, 2).entries, SparseIntMatrix::identity(130));
  const auto ones = build_inclusion_matrix(4, 2, 0, 2).entries;
  ASSERT_EQ(ones.rows(), 1u);
  for (std::size_t c = 0; c < 35; ++c) EXPECT_EQ(ones.at(0, c), 1);
  EXPECT_THROW(build_inclusion_matrix(4, 2, 1, 2, 10), ResourceError);
}

TEST(InclusionMatrix, AgreesWithVectorSetContainment) {
  const auto levels = enumerate_subspaces(4, 3, 1);
  const auto planes = enumerate_subspaces(4, 3, 2);
  const auto a = build_inclusion_matrix(4, 3, 1, 2).entries;
  for (std::size_t r = 0; r < levels.size(); ++r) {
    const auto er = oracle::elements(levels[r]);
    for (std::size_t c = 0; c < planes.size(); ++c) {
      ASSERT_EQ(a.at(r, c), oracle::subset(er, oracle::elements(planes[c])) ? 1 : 0);
    }
  }
}

TEST(InclusionMatrix, RowColumnSumsAndTranspose) {
  for (int n = 2; n <= 5; ++n) {
    for (std::uint32_t q : {2u, 3u}) {
      if (n == 5 && q == 3) continue;
      for (int i = 0; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
          const auto a = build_inclusion_matrix(n, q, i, j).entries;
          EXPECT_EQ(a.transpose(), build_inclusion_matrix(n, q, j, i).entries);
          const auto rows = to_u64(q_binomial(n - i, j - i, q));
          const auto cols = to_u64(q_binomial(j, i, q));
          for (std::size_t r = 0; r < a.rows(); ++r) {
            ASSERT_EQ(a.row_end(r) - a.row_begin(r), rows);
          }
          const auto t = build_inclusion_matrix(n, q, j, i).entries;
          for (std::size_t r = 0; r < t.rows(); ++r) {
            ASSERT_EQ(t.row_end(r) - t.row_begin(r), cols);
          }
        }
      }
    }
  }
}

TEST(Kantor, Examples) {
  EXPECT_TRUE(verify_kantor_product(3, 2, 2, 2, 1).pass);
  EXPECT_TRUE(verify_kantor_product(3, 2, 2, 1, 1).pass);
  EXPECT_TRUE(verify_kantor_product(4, 2, 3, 2, 1).pass);
  EXPECT_THROW(verify_kantor_product(4, 2, 1, 2, 1), DomainError);
}

TEST(Kantor, AllAdmissibleSmall) {
  for (int n = 1; n <= 4; ++n) {
    for (std::uint32_t q : {2u, 3u}) {
      for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= i; ++j) {
          for (int k = 0; k <= j; ++k) {
            const auto r = verify_kantor_product(n, q, i, j, k);
            ASSERT_TRUE(r.pass) << n << q << i << j << k << " " << r.witness;
          }
        }
      }
    }
  }
}

TEST(TripleProduct, Examples) {
  EXPECT_TRUE(verify_triple_product(3, 2, 1, 2, 1).pass);
  EXPECT_TRUE(verify_triple_product(4, 3, 2, 3, 1).pass);
  EXPECT_TRUE(verify_triple_product(4, 2, 2, 3, 0).pass);
  EXPECT_THROW(verify_triple_product(4, 2, 3, 2, 1), DomainError);
}

TEST(TripleProduct, AllAdmissibleSmall) {
  for (int n = 1; n <= 4; ++n) {
    for (std::uint32_t q : {2u, 3u}) {
      for (int k = 0; k <= n; ++k) {
        for (int i = k; i <= n; ++i) {
          for (int j = i; j <= n; ++j) {
            const auto r = verify_triple_product(n, q, i, j, k);
            ASSERT_TRUE(r.pass) << n << q << i << j << k << " " << r.witness;
          }
        }
      }
    }
  }
}

TEST(TripleProduct, WrongCoefficientIsCaught) {
  // c_{1,2,1,1} = 2 at (3, 2); the identity with c replaced by 3 must fail.
  const auto a12 = build_inclusion_matrix(3, 2, 1, 2).entries;
  const auto a21 = build_inclusion_matrix(3, 2, 2, 1).entries;
  const auto a10 = build_inclusion_matrix(3, 2, 1, 0).entries;
  const auto a01 = build_inclusion_matrix(3, 2, 0, 1).entries;
  const auto lhs = a12 * a21;
  const auto base = a10 * a01;
  const auto id = SparseIntMatrix::identity(7);
  EXPECT_EQ(lhs, base.scaled(c_coefficient(1, 2, 1, 0, 3, 2).get_si()) + id.scaled(2));
  EXPECT_NE(lhs, base.scaled(c_coefficient(1, 2, 1, 0, 3, 2).get_si()) + id.scaled(3));
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank_check(3, 2, 2, 1), 7u);
  EXPECT_EQ(rank_check(4, 2, 2, 1), 15u);
  EXPECT_EQ(rank_check(4, 3, 2, 2), 130u);
}

TEST(Rank, SmallGrid) {
  for (int n = 1; n <= 4; ++n) {
    for (std::uint32_t q : {2u, 3u}) {
      for (int k = 0; 2 * k <= n; ++k) {
        for (int i = k; i <= n - k; ++i) {
          EXPECT_EQ(BigInt(static_cast<unsigned long>(rank_check(n, q, i, k))), q_binomial(n, k, q));
        }
      }
    }
  }
}

TEST(TildeBasis, Dimensions) {
  EXPECT_EQ(tilde_basis(3, 2, 0).vectors.cols(), 1u);
  const auto t = tilde_basis(3, 2, 1).vectors;
  ASSERT_EQ(t.cols(), 6u);
  for (std::size_t c = 0; c < 6; ++c) {
    Rational sum = 0;
    for (std::size_t r = 0; r < t.rows(); ++r) sum += t(r, c);
    EXPECT_EQ(sum, 0);
  }
  EXPECT_EQ(tilde_basis(4, 2, 2).vectors.cols(), 20u);
  for (int n = 2; n <= 5; ++n) {
    for (int k = 1; 2 * k <= n; ++k) {
      EXPECT_EQ(BigInt(static_cast<unsigned long>(tilde_basis(n, 2, k).vectors.cols())),
                q_binomial(n, k, 2) - q_binomial(n, k - 1, 2));
    }
  }
  EXPECT_THROW(tilde_basis(4, 2, 3), DomainError);
}

TEST(Annihilation, SmallGrid) {
  for (int n = 2; n <= 4; ++n) {
    for (std::uint32_t q : {2u, 3u}) {
      for (int k = 1; 2 * k <= n; ++k) {
        const auto r = verify_annihilation(n, q, k);
        EXPECT_TRUE(r.pass) << r.witness;
      }
    }
  }
}

TEST(Decomposition, SmallGrid) {
  for (int n = 2; n <= 4; ++n) {
    for (std::uint32_t q : {2u, 3u}) {
      for (int i = 0; i <= n; ++i) {
        const auto r = verify_decomposition(n, q, i);
        EXPECT_TRUE(r.pass) << r.witness;
      }
    }
  }
}

TEST(BlockBasis, ShapeAndRank) {
  const auto b = build_block_basis(3, 2);
  EXPECT_EQ(b.matrix.rows(), 14u);
  EXPECT_EQ(b.matrix.cols(), 14u);
  std::size_t k0 = 0, k1 = 0;
  for (const auto& c : b.columns) (c.k == 0 ? k0 : k1)++;
  EXPECT_EQ(k0, 2u);
  EXPECT_EQ(k1, 12u);
  EXPECT_EQ(block_basis_rank(b), 14u);
  for (auto [n, q] : std::vector<std::pair<int, std::uint32_t>>{{4, 2}, {4, 3}, {5, 2}}) {
    const auto bb = build_block_basis(n, q);
    EXPECT_EQ(block_basis_rank(bb), bb.matrix.rows());
    // Columns are grouped by (k, v, i ascending).
    for (std::size_t c = 1; c < bb.columns.size(); ++c) {
      const auto& p = bb.columns[c - 1];
      const auto& x = bb.columns[c];
      EXPECT_TRUE(std::tie(p.k, p.v, p.i) < std::tie(x.k, x.v, x.i));
    }
  }
}
