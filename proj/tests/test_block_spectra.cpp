#include "flagspec/block_spectra.hpp"
#include "flagspec/errors.hpp"
#include "flagspec/qcombinatorics.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace flagspec;

namespace {

ExactMatrix from_rows(std::vector<std::vector<Rational>> rows) {
  ExactMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

}  // namespace

TEST(Block, Examples) {
  EXPECT_EQ(build_block(4, 2, 2).entries, from_rows({{2}}));
  EXPECT_EQ(build_block(4, 7, 2).entries, from_rows({{2}}));
  EXPECT_EQ(build_block(3, 2, 1).entries,
            from_rows({{1, make_rational(-2, 3)}, {make_rational(-1, 3), 1}}));
  EXPECT_EQ(build_block(3, 2, 0).entries, from_rows({{1, -1}, {-1, 1}}));
  EXPECT_EQ(build_block(3, 2, 1).first_index, 1);
  EXPECT_EQ(build_block(6, 3, 2).first_index, 2);
  EXPECT_THROW(build_block(4, 2, 3), DomainError);
  EXPECT_THROW(build_block(2, 2, 0), DomainError);
}

TEST(Block, EntryFormulas) {
  for (int n = 3; n <= 7; ++n) {
    for (std::uint32_t q : {2u, 3u, 5u}) {
      const auto b0 = build_block(n, q, 0).entries;
      ASSERT_EQ(b0.rows(), static_cast<std::size_t>(n - 1));
      for (std::size_t r = 0; r < b0.rows(); ++r) {
        for (std::size_t c = 0; c < b0.cols(); ++c) EXPECT_EQ(b0(r, c), r == c ? Rational(n - 2) : Rational(-1));
      }
      for (int k = 1; 2 * k <= n; ++k) {
        const auto b = build_block(n, q, k).entries;
        ASSERT_EQ(b.rows(), static_cast<std::size_t>(n - 2 * k + 1));
        for (int i = k; i <= n - k; ++i) {
          for (int j = k; j <= n - k; ++j) {
            const auto& e = b(i - k, j - k);
            if (i == j) {
              EXPECT_EQ(e, n - 2);
            } else if (i < j) {
              EXPECT_EQ(e, -make_rational(c_coefficient(i, j, k, n, q), q_binomial(n - i, j - i, q)));
            } else {
              EXPECT_EQ(e, -make_rational(q_binomial(i - k, j - k, q), q_binomial(i, j, q)));
            }
          }
        }
      }
    }
  }
}

TEST(Block, Multiplicity) {
  EXPECT_EQ(block_multiplicity(3, 2, 0), 1);
  EXPECT_EQ(block_multiplicity(3, 2, 1), 6);
  EXPECT_EQ(block_multiplicity(4, 2, 2), 20);
}

TEST(CharPoly, Examples) {
  EXPECT_EQ(char_poly_exact(build_block(3, 2, 0)).to_string("t"), "t^2 - 2*t");
  EXPECT_EQ(char_poly_exact(build_block(3, 2, 1)).to_string("t"), "t^2 - 2*t + 7/9");
  EXPECT_EQ(char_poly_exact(build_block(6, 5, 3)).to_string("t"), "t - 4");
}

TEST(CharPoly, TraceIdentity) {
  for (int n = 3; n <= 7; ++n) {
    for (std::uint32_t q : {2u, 3u, 5u}) {
      for (int k = 0; 2 * k <= n; ++k) {
        auto b = build_block(n, q, k);
        for (std::size_t i = 0; i < b.entries.rows(); ++i) b.entries(i, i) -= n - 2;
        const auto p = char_poly_exact(b);
        EXPECT_EQ(p.coefficient(p.degree() - 1), 0) << n << q << k;
        // Blocks have real spectra: Sturm isolation accounts for the degree.
        int total = 0;
        for (const auto& r : real_roots(p)) total += r.multiplicity;
        EXPECT_EQ(total, p.degree());
      }
    }
  }
}

TEST(SpectrumViaBlocks, Heawood) {
  const auto rep = merge_clusters(spectrum_via_blocks(3, 2), 1e-7);
  ASSERT_EQ(rep.eigenvalues.size(), 4u);
  const double s = std::sqrt(2.0) / 3;
  const std::vector<std::pair<double, long>> expect = {{0, 1}, {1 - s, 6}, {1 + s, 6}, {2, 1}};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(rep.eigenvalues[i].value, expect[i].first, 1e-12);
    EXPECT_EQ(rep.eigenvalues[i].multiplicity, expect[i].second);
  }
}

TEST(SpectrumViaBlocks, TotalsAndStructuralValues) {
  EXPECT_EQ(spectrum_via_blocks(4, 2).total_multiplicity(), 65);
  EXPECT_GE(exact_eigenvalue_multiplicity(4, 2, 2), 20);
  for (int n = 3; n <= 6; ++n) {
    for (std::uint32_t q : {2u, 3u, 5u, 13u}) {
      BigInt total = 0;
      for (int i = 1; i < n; ++i) total += q_binomial(n, i, q);
      EXPECT_EQ(spectrum_via_blocks(n, q).total_multiplicity(), total);
      EXPECT_EQ(exact_eigenvalue_multiplicity(n, q, 0), 1);
      EXPECT_EQ(exact_eigenvalue_multiplicity(n, q, n - 1), n - 2);
    }
  }
}

TEST(SpectrumViaBlocks, GarlandTrendAtNFour) {
  std::vector<double> gaps;
  for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
    const auto rep = merge_clusters(spectrum_via_blocks(4, q), 1e-9);
    gaps.push_back(rep.eigenvalues[1].value);
  }
  for (std::size_t i = 1; i < gaps.size(); ++i) EXPECT_GE(gaps[i], gaps[i - 1]);
  EXPECT_GT(gaps.back(), 4 - 2 - 0.5);
}

TEST(Conjugation, ExactForSmallInstances) {
  for (auto [n, q] : std::vector<std::pair<int, std::uint32_t>>{{3, 2}, {3, 3}, {4, 2}}) {
    const auto a = verify_conjugation(n, q);
    EXPECT_TRUE(a.pass) << a.witness;
    const auto b = verify_conjugation_literal(n, q);
    EXPECT_TRUE(b.pass) << b.witness;
  }
}

TEST(Reconcile, PassesWithinTolerance) {
  const auto r = reconcile(3, 2, 1e-9);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.numeric_total, 14);
  ASSERT_TRUE(r.conjugation.has_value());
  EXPECT_TRUE(r.conjugation->pass);
  const auto r43 = reconcile(4, 3, 1e-8);
  EXPECT_TRUE(r43.pass);
  EXPECT_EQ(r43.numeric_total, 210);
}

TEST(Reconcile, DetectsPerturbedSpectrum) {
  auto blocks = spectrum_via_blocks(3, 2);
  const auto numeric = numeric_spectrum(assemble_laplacian(3, 2, 0));
  blocks.eigenvalues[1].value += 1e-6;
  const auto r = reconcile_spectra(blocks, numeric, 1e-8);
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.diff.empty());
}

TEST(Distinct, Examples) {
  EXPECT_EQ(distinct_count(3, 2).count, 4u);
  EXPECT_EQ(distinct_count(3, 2).bound, 4u);
  EXPECT_EQ(distinct_count(4, 31).count, 6u);
  for (int n = 3; n <= 7; ++n) {
    for (std::uint32_t q : {2u, 3u, 5u}) {
      const auto d = distinct_count(n, q);
      EXPECT_LE(d.count, d.bound);
    }
  }
}

TEST(ElementwiseLimit, UpperTriangularTarget) {
  for (int n = 3; n <= 6; ++n) {
    for (int k = 1; 2 * k <= n; ++k) {
      const std::vector<std::uint32_t> qs = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
      const std::size_t m = static_cast<std::size_t>(n - 2 * k + 1);
      std::vector<double> err(qs.size(), 0);
      for (std::size_t t = 0; t < qs.size(); ++t) {
        const auto b = build_block(n, qs[t], k).entries;
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t j = 0; j < m; ++j) {
            const double target = i == j ? n - 2 : (i < j ? -1 : 0);
            err[t] = std::max(err[t], std::abs(to_double(b(i, j)) - target));
          }
        }
      }
      // c fitted on the first half, validated on the rest.
      double c = 0;
      for (std::size_t t = 0; t < (qs.size() + 1) / 2; ++t) c = std::max(c, err[t] * qs[t]);
      for (std::size_t t = 0; t < qs.size(); ++t) EXPECT_LE(err[t] * qs[t], 1.25 * c) << n << k << qs[t];
    }
  }
}
