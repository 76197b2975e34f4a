#include "oracles.hpp"

#include "flagspec/errors.hpp"
#include "flagspec/flag_laplacian.hpp"
#include "flagspec/qcombinatorics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace flagspec;

TEST(Weight, Examples) {
  EXPECT_EQ(weight_of_signature({1, 2}, 3, 2), 1);
  EXPECT_EQ(weight_of_signature({1}, 3, 2), 3);
  EXPECT_EQ(weight_of_signature({}, 3, 2), 21);
  EXPECT_THROW(weight_of_signature({2, 1}, 3, 2), DomainError);
  const auto flags = enumerate_flags(3, 2, {1});
  EXPECT_EQ(weight(flags[0], 3, 2), 3);
  EXPECT_THROW(weight(flags[0], 4, 2), DomainError);
}

TEST(Weight, MatchesBruteForceExtensionCount) {
  for (auto [n, q] : std::vector<std::pair<int, std::uint32_t>>{{3, 2}, {4, 2}, {3, 3}}) {
    const auto levels = oracle::all_subspaces(n, q);
    EXPECT_EQ(oracle::extension_count({}, n, q, levels), weight_of_signature({}, n, q));
    for (int k = 0; k <= n - 2; ++k) {
      const auto slice = complex_slice(n, q, k);
      for (std::size_t i = 0; i < slice.size(); ++i) {
        ASSERT_EQ(slice.weights[i], oracle::extension_count(oracle::chain_elements(slice.flag(i)), n, q, levels));
      }
    }
  }
}

TEST(Weight, DependsOnlyOnSignature) {
  const auto lat = SubspaceLattice::get(4, 2);
  for (const auto& sig : std::vector<std::vector<int>>{{1}, {2}, {1, 3}, {2, 3}, {1, 2, 3}}) {
    const auto levels = oracle::all_subspaces(4, 2);
    std::set<BigInt> seen;
    for (const auto& f : enumerate_flags(4, 2, sig)) {
      seen.insert(oracle::extension_count(oracle::chain_elements(f), 4, 2, levels));
    }
    EXPECT_EQ(seen.size(), 1u);
  }
}

TEST(WeightIdentities, RatioAndPartition) {
  for (int n = 2; n <= 4; ++n) {
    for (std::uint32_t q : {2u, 3u}) {
      const auto ratio = verify_weight_ratio(n, q);
      EXPECT_TRUE(ratio.pass) << ratio.witness;
      const auto part = verify_weight_partition(n, q);
      EXPECT_TRUE(part.pass) << part.witness;
    }
  }
}

TEST(ComplexSlice, OrderAndIndex) {
  const auto s = complex_slice(4, 2, 1);
  EXPECT_EQ(s.size(), 315u);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s.index_of(s.flag(i)), i);
  EXPECT_THROW(complex_slice(4, 2, 3), DomainError);
  EXPECT_THROW(complex_slice(4, 2, 1, 100), ResourceError);
}

TEST(Laplacian, HeawoodInstance) {
  const auto l = assemble_laplacian(3, 2, 0);
  ASSERT_EQ(l.size(), 14u);
  const Rational third = make_rational(-1, 3);
  const auto lat = l.slice.lattice;
  for (std::size_t r = 0; r < 14; ++r) {
    EXPECT_EQ(l.entries.at(r, r), 1);
    for (std::size_t c = 0; c < 14; ++c) {
      if (r == c) continue;
      const auto a = l.slice.flag(r).chain()[0], b = l.slice.flag(c).chain()[0];
      const bool incident = a.dim() != b.dim() && (contains(a, b) || contains(b, a));
      EXPECT_EQ(l.entries.at(r, c), incident ? third : Rational(0));
    }
  }
}

TEST(Laplacian, ShapesAndDiagonal) {
  const auto l = assemble_laplacian(4, 2, 0);
  EXPECT_EQ(l.size(), 65u);
  for (std::size_t r = 0; r < l.size(); ++r) EXPECT_EQ(l.entries.at(r, r), 2);
  const auto l1 = assemble_laplacian(4, 2, 1);
  for (std::size_t r = 0; r < l1.size(); ++r) EXPECT_EQ(l1.entries.at(r, r), 1);
  EXPECT_THROW(assemble_laplacian(4, 2, 2), DomainError);
  EXPECT_THROW(assemble_laplacian(2, 2, 0), DomainError);
}

TEST(Laplacian, ClosedFormMatchesCoboundaryOracle) {
  for (auto [n, q, k] : std::vector<std::tuple<int, std::uint32_t, int>>{{3, 2, 0}, {3, 3, 0}, {4, 2, 0}, {4, 2, 1}}) {
    const auto l = assemble_laplacian(n, q, k);
    const auto ref = oracle::laplacian_from_coboundary(n, q, k);
    for (std::size_t r = 0; r < l.size(); ++r) {
      for (std::size_t c = 0; c < l.size(); ++c) {
        ASSERT_EQ(l.entries.at(r, c), ref[r][c]) << "n=" << n << " q=" << q << " k=" << k << " at " << r << "," << c;
      }
    }
  }
}

TEST(Laplacian, LibraryCoboundaryFactorisation) {
  for (auto [n, q, k] : std::vector<std::tuple<int, std::uint32_t, int>>{{4, 3, 0}, {5, 2, 1}}) {
    const auto l = assemble_laplacian(n, q, k);
    const auto upper = complex_slice(n, q, k + 1);
    const auto d = to_rational(coboundary(l.slice, upper));
    std::vector<SparseRationalMatrix::Triplet> wl, wu;
    for (std::size_t i = 0; i < l.size(); ++i) wl.push_back({i, i, Rational(1) / Rational(l.slice.weights[i])});
    for (std::size_t i = 0; i < upper.size(); ++i) wu.push_back({i, i, Rational(upper.weights[i])});
    const auto winv = SparseRationalMatrix::from_triplets(l.size(), l.size(), wl);
    const auto w1 = SparseRationalMatrix::from_triplets(upper.size(), upper.size(), wu);
    EXPECT_EQ(winv * (d.transpose() * (w1 * d)), l.entries);
  }
}

TEST(Laplacian, StructureChecks) {
  for (auto [n, q, k] :
       std::vector<std::tuple<int, std::uint32_t, int>>{{3, 2, 0}, {4, 3, 0}, {4, 2, 1}, {5, 2, 1}, {5, 2, 2}}) {
    const auto l = assemble_laplacian(n, q, k);
    const auto r = verify_laplacian_structure(l);
    EXPECT_TRUE(r.pass) << r.witness;
  }
}

TEST(Symmetrize, SymmetricWithSameDiagonal) {
  const auto l = assemble_laplacian(3, 2, 0);
  const auto s = symmetrize(l);
  EXPECT_LE(symmetry_defect(s), 1e-12);
  for (std::size_t i = 0; i < l.size(); ++i) EXPECT_DOUBLE_EQ(s(i, i), to_double(l.entries.at(i, i)));
  const auto l1 = assemble_laplacian(4, 3, 1);
  EXPECT_LE(symmetry_defect(symmetrize(l1)), 1e-12);
}

TEST(NumericSpectrum, Heawood) {
  const auto ev = numeric_eigenvalues(assemble_laplacian(3, 2, 0));
  ASSERT_EQ(ev.size(), 14u);
  // I - (1/3) A with A the Heawood adjacency, spectrum {+-3, +-sqrt 2 (x6)}.
  std::vector<double> expect = {0, 2};
  for (int i = 0; i < 6; ++i) {
    expect.push_back(1 - std::sqrt(2.0) / 3);
    expect.push_back(1 + std::sqrt(2.0) / 3);
  }
  std::sort(expect.begin(), expect.end());
  for (std::size_t i = 0; i < 14; ++i) EXPECT_NEAR(ev[i], expect[i], 1e-9);
  const auto rep = numeric_spectrum(assemble_laplacian(3, 2, 0));
  EXPECT_EQ(rep.eigenvalues.size(), 4u);
  EXPECT_EQ(rep.total_multiplicity(), 14);
}

TEST(NumericSpectrum, PsdAndStructuralMultiplicities) {
  for (auto [n, q] : std::vector<std::pair<int, std::uint32_t>>{{3, 3}, {4, 2}, {4, 3}, {5, 2}}) {
    const auto rep = numeric_spectrum(assemble_laplacian(n, q, 0));
    EXPECT_GE(rep.eigenvalues.front().value, -1e-10);
    EXPECT_NEAR(rep.eigenvalues.front().value, 0, 1e-9);
    EXPECT_EQ(rep.eigenvalues.front().multiplicity, 1);
    EXPECT_NEAR(rep.eigenvalues.back().value, n - 1, 1e-9);
    EXPECT_EQ(rep.eigenvalues.back().multiplicity, n - 2);
  }
  EXPECT_THROW(numeric_eigenvalues(assemble_laplacian(4, 2, 0), 10), ResourceError);
}

TEST(NumericSpectrum, GarlandTrend) {
  const int n = 3;
  std::vector<double> gaps;
  for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
    const auto rep = numeric_spectrum(assemble_laplacian(n, q, 0));
    gaps.push_back(rep.eigenvalues[1].value);
  }
  for (std::size_t i = 1; i < gaps.size(); ++i) EXPECT_GE(gaps[i], gaps[i - 1]);
  EXPECT_GT(gaps.back(), n - 2 - 0.5);
}

TEST(Cholesky, Certificate) {
  const auto s = symmetrize(assemble_laplacian(4, 2, 1));
  EXPECT_TRUE(shifted_cholesky_certificate(s, 1e-10));
  Eigen::MatrixXd neg = -Eigen::MatrixXd::Identity(3, 3);
  EXPECT_FALSE(shifted_cholesky_certificate(neg, 1e-10));
}

TEST(Export, RoundTripIsBitExact) {
  const auto l = assemble_laplacian(4, 3, 1);
  std::stringstream ss;
  write_laplacian(ss, l);
  const auto first = ss.str();
  EXPECT_EQ(first.rfind("FLAGLAP 4 3 1 ", 0), 0u);
  const auto back = read_laplacian(ss);
  EXPECT_EQ(back.entries, l.entries);
  EXPECT_EQ(back.weights, l.slice.weights);
  EXPECT_EQ(back.n, 4);
  EXPECT_EQ(back.k, 1);
  LaplacianMatrix again = l;
  again.entries = back.entries;
  std::stringstream ss2;
  write_laplacian(ss2, again);
  EXPECT_EQ(ss2.str(), first);
}
