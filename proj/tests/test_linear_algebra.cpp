#include "flagspec/errors.hpp"
#include "flagspec/exact_matrix.hpp"
#include "flagspec/polynomial.hpp"
#include "flagspec/sparse_matrix.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace flagspec;

namespace {

ExactMatrix from_rows(std::vector<std::vector<Rational>> rows) {
  ExactMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

ExactMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
  ExactMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = make_rational(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4));
    }
  }
  return m;
}

Polynomial poly(std::vector<long> ascending) {
  std::vector<Rational> c;
  for (long x : ascending) c.emplace_back(x);
  return Polynomial(c);
}

}  // namespace

TEST(ExactMatrix, RankAndNullSpace) {
  const auto m = from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  EXPECT_EQ(m.rank(), 2u);
  const auto ns = m.null_space();
  ASSERT_EQ(ns.cols(), 1u);
  const auto prod = m * ns;
  for (std::size_t r = 0; r < prod.rows(); ++r) EXPECT_EQ(prod(r, 0), 0);
  EXPECT_EQ(ExactMatrix::identity(4).rank(), 4u);
  EXPECT_EQ(ExactMatrix(3, 5).rank(), 0u);
  EXPECT_EQ(ExactMatrix(3, 5).null_space().cols(), 5u);
}

TEST(ExactMatrix, RandomNullSpaceDimension) {
  std::mt19937 rng(1);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_matrix(rng, 3, 6);
    const auto b = random_matrix(rng, 6, 6);
    const auto m = a.transpose() * a + b * ExactMatrix(6, 6);  // rank <= 3
    const auto ns = m.null_space();
    EXPECT_EQ(ns.cols() + m.rank(), 6u);
    const auto z = m * ns;
    for (std::size_t r = 0; r < z.rows(); ++r) {
      for (std::size_t c = 0; c < z.cols(); ++c) EXPECT_EQ(z(r, c), 0);
    }
  }
}

TEST(ExactMatrix, SolveAndInverse) {
  std::mt19937 rng(2);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_matrix(rng, 5, 5);
    if (a.rank() < 5) continue;
    const auto inv = a.inverse();
    EXPECT_EQ(a * inv, ExactMatrix::identity(5));
    const auto rhs = random_matrix(rng, 5, 2);
    EXPECT_EQ(a * a.solve(rhs), rhs);
  }
  EXPECT_THROW(from_rows({{1, 2}, {2, 4}}).inverse(), IntegrityError);
}

TEST(ExactMatrix, Concatenation) {
  const auto a = from_rows({{1}, {2}});
  const auto b = from_rows({{3, 4}, {5, 6}});
  EXPECT_EQ(ExactMatrix::hconcat({a, b}), from_rows({{1, 3, 4}, {2, 5, 6}}));
  const auto d = ExactMatrix::block_diagonal({from_rows({{7}}), b});
  EXPECT_EQ(d, from_rows({{7, 0, 0}, {0, 3, 4}, {0, 5, 6}}));
  EXPECT_EQ(d.trace(), 16);
}

TEST(SparseMatrix, TripletsAndProducts) {
  const auto s = SparseIntMatrix::from_triplets(2, 3, {{0, 1, 2}, {0, 1, 3}, {1, 0, 4}, {1, 2, 1}, {1, 2, -1}});
  EXPECT_EQ(s.nnz(), 2u);
  EXPECT_EQ(s.at(0, 1), 5);
  EXPECT_EQ(s.at(1, 2), 0);
  const auto t = s.transpose();
  EXPECT_EQ(t.at(1, 0), 5);
  const auto p = s * t;
  EXPECT_EQ(p.at(0, 0), 25);
  EXPECT_EQ(p.at(1, 1), 16);
  EXPECT_EQ(p.at(0, 1), 0);
  EXPECT_EQ(to_rational(s).to_dense(), from_rows({{0, 5, 0}, {4, 0, 0}}));
  EXPECT_EQ(to_sparse(from_rows({{0, 5, 0}, {4, 0, 0}})), to_rational(s));
}

TEST(SparseMatrix, DetectsOverflow) {
  const auto big = SparseIntMatrix::from_triplets(1, 1, {{0, 0, INT64_MAX / 2 + 1}});
  EXPECT_THROW(big + big, IntegrityError);
}

TEST(Polynomial, ArithmeticAndGcd) {
  const auto p = poly({-1, 0, 1});  // t^2 - 1
  const auto q = poly({1, 1});      // t + 1
  const auto [quo, rem] = p.divmod(q);
  EXPECT_EQ(quo, poly({-1, 1}));
  EXPECT_TRUE(rem.is_zero());
  EXPECT_EQ(gcd(p, poly({1, 2, 1})), q);
  EXPECT_EQ(p.derivative(), poly({0, 2}));
  EXPECT_EQ(p.to_string("t"), "t^2 - 1");
}

TEST(Polynomial, SquarefreeDecomposition) {
  const auto cube = Polynomial::linear(5) * Polynomial::linear(5) * Polynomial::linear(5);
  const auto dec = squarefree_decomposition(cube * Polynomial::linear(1));
  ASSERT_EQ(dec.size(), 2u);
  EXPECT_EQ(squarefree_part(cube), Polynomial::linear(5));
}

TEST(RealRoots, Examples) {
  const auto r = real_roots(poly({0, -2, 1}));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].lo, 0);
  EXPECT_NEAR(r[1].value, 2.0, 1e-12);
  // t^2 - 2t + 7/9 -> 1 -+ sqrt(2)/3
  const Polynomial p({make_rational(7, 9), Rational(-2), Rational(1)});
  const auto s = real_roots(p, 1e-12);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(s[0].value, 1 - std::sqrt(2.0) / 3, 1e-12);
  EXPECT_NEAR(s[1].value, 1 + std::sqrt(2.0) / 3, 1e-12);
  EXPECT_LE(to_double(s[0].hi - s[0].lo), 1e-12);
  const auto cube = Polynomial::linear(5) * Polynomial::linear(5) * Polynomial::linear(5);
  const auto c = real_roots(cube);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].multiplicity, 3);
  EXPECT_LE(c[0].lo, 5);
  EXPECT_GE(c[0].hi, 5);
  EXPECT_THROW(real_roots(poly({1, 0, 1})), IntegrityError);
}

TEST(RealRoots, SturmCountsMatchKnownRoots) {
  // (t - 1)(t - 2)(t - 3)(t + 1/2)
  Polynomial p = Polynomial::linear(1) * Polynomial::linear(2) * Polynomial::linear(3) *
                 Polynomial::linear(make_rational(-1, 2));
  const auto chain = sturm_sequence(p);
  EXPECT_EQ(sturm_count(chain, -10, 10), 4);
  EXPECT_EQ(sturm_count(chain, 1, 3), 2);
  EXPECT_EQ(sturm_count(chain, 0, make_rational(3, 2)), 1);
}

TEST(CharPoly, FaddeevAgreesWithHessenberg) {
  std::mt19937 rng(4);
  for (std::size_t size : {1u, 2u, 3u, 5u, 8u}) {
    const auto m = random_matrix(rng, size, size);
    const auto a = char_poly_faddeev(m);
    const auto b = char_poly_hessenberg(m);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.degree(), static_cast<int>(size));
    EXPECT_EQ(a.coefficient(static_cast<int>(size) - 1), -m.trace());
  }
  EXPECT_EQ(char_poly(from_rows({{1, -1}, {-1, 1}})), poly({0, -2, 1}));
}
