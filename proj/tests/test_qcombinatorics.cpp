#include "oracles.hpp"

#include "flagspec/enumeration.hpp"
#include "flagspec/errors.hpp"
#include "flagspec/qcombinatorics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace flagspec;

TEST(QBinomial, Examples) {
  EXPECT_EQ(q_binomial(4, 2, 2), 35);
  EXPECT_EQ(q_binomial(3, 1, 2), 7);
  EXPECT_EQ(q_binomial(2, 5, 3), 0);
  EXPECT_EQ(q_binomial(-1, 0, 3), 0);
  EXPECT_EQ(q_binomial(3, -1, 3), 0);
  for (int a = 0; a <= 6; ++a) {
    EXPECT_EQ(q_binomial(a, 0, 5), 1);
    EXPECT_EQ(q_binomial(a, a, 5), 1);
  }
  EXPECT_THROW(q_binomial(3, 1, 1), DomainError);
  // q need not be prime.
  EXPECT_EQ(q_binomial(4, 2, 4), 357);
}

TEST(QBinomial, SymmetryAndPascal) {
  for (std::uint64_t q : {2u, 3u, 5u}) {
    for (int a = 0; a <= 8; ++a) {
      for (int b = 0; b <= a; ++b) {
        EXPECT_EQ(q_binomial(a, b, q), q_binomial(a, a - b, q));
        EXPECT_EQ(q_binomial(a, b, q), oracle::q_binomial_pascal(a, b, q));
        if (a >= 1) {
          EXPECT_EQ(q_binomial(a, b, q),
                    q_binomial(a - 1, b - 1, q) + pow(q, static_cast<unsigned long>(b)) * q_binomial(a - 1, b, q));
        }
      }
    }
  }
}

TEST(QBinomial, LargeValuesExact) {
  EXPECT_EQ(q_binomial(40, 20, 31), oracle::q_binomial_pascal(40, 20, 31));
}

TEST(QBinomial, MatchesEnumeration) {
  for (int n = 0; n <= 5; ++n) {
    for (std::uint32_t q : {2u, 3u}) {
      for (int d = 0; d <= n; ++d) {
        EXPECT_EQ(q_binomial(n, d, q), static_cast<unsigned long>(enumerate_subspaces(n, q, d).size()));
      }
    }
  }
}

TEST(QFactorial, CountsCompleteFlags) {
  EXPECT_EQ(q_factorial(3, 2), 21);
  EXPECT_EQ(q_factorial(4, 2), 315);
  EXPECT_EQ(q_factorial(0, 2), 1);
  EXPECT_EQ(q_factorial(1, 7), 1);
}

TEST(Carlitz, Examples) {
  std::vector<Rational> ones(4, Rational(1));
  const auto b = carlitz_invert(ones, 2);
  EXPECT_EQ(b, (std::vector<Rational>{1, 0, 0, 0}));
  std::vector<Rational> a;
  for (int n = 0; n <= 3; ++n) a.push_back(Rational(q_binomial(n, 1, 2)));
  EXPECT_EQ(carlitz_forward(carlitz_invert(a, 2), 2), a);
}

TEST(Carlitz, RoundTripsOnRandomSequences) {
  std::mt19937 rng(5);
  for (std::uint64_t q : {2u, 3u, 7u}) {
    for (int len = 1; len <= 8; ++len) {
      std::vector<Rational> r;
      for (int i = 0; i < len; ++i) {
        r.push_back(make_rational(static_cast<long>(rng() % 200) - 100, 1 + static_cast<long>(rng() % 17)));
      }
      EXPECT_EQ(carlitz_forward(carlitz_invert(r, q), q), r);
      EXPECT_EQ(carlitz_invert(carlitz_forward(r, q), q), r);
    }
  }
}

TEST(CCoefficient, Examples) {
  EXPECT_EQ(c_coefficient(1, 2, 1, 1, 3, 2), 2);
  for (int n = 2; n <= 6; ++n) {
    for (int i = 0; i <= n; ++i) {
      for (int j = i; j <= n; ++j) {
        EXPECT_EQ(c_coefficient(i, j, 0, 0, n, 3), q_binomial(n - i, j - i, 3));
        for (int k = 0; k <= i; ++k) {
          EXPECT_EQ(c_coefficient(i, j, k, 0, n, 2), q_binomial(n - i - k, j - i - k, 2));
        }
      }
    }
  }
  EXPECT_THROW(c_coefficient(2, 1, 1, 1, 3, 2), DomainError);
  EXPECT_THROW(c_coefficient(1, 2, 1, 2, 3, 2), DomainError);
}

TEST(AsymptoticEstimates, RatioEstimate) {
  const auto e0 = qbinom_ratio_estimate(5, 2, 0);
  EXPECT_EQ(e0.q_exponent, 0);
  EXPECT_EQ(e0.leading_coefficient, 1);
  const auto e = qbinom_ratio_estimate(4, 2, 1);
  EXPECT_EQ(e.q_exponent, -2);
  EXPECT_LT(e.error_exponent, e.q_exponent);
  EXPECT_THROW(qbinom_ratio_estimate(4, 2, 3), DomainError);
  // |q^2 (3 choose 1)_q / (4 choose 2)_q - 1| decreases and stays below c/q.
  std::vector<double> res;
  for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u}) {
    const Rational ratio = make_rational(q_binomial(3, 1, q) * pow(q, 2), q_binomial(4, 2, q));
    res.push_back(std::abs(to_double(ratio) - 1.0));
  }
  for (std::size_t i = 1; i < res.size(); ++i) EXPECT_LT(res[i], res[i - 1]);
  const double c = res[0] * 2;
  const std::vector<double> qs = {2, 3, 5, 7, 11};
  for (std::size_t i = 0; i < res.size(); ++i) EXPECT_LE(res[i], 1.25 * c / qs[i]);
}

TEST(AsymptoticEstimates, MagnitudeEstimate) {
  const auto e = qbinom_magnitude_estimate(5, 2);
  EXPECT_EQ(e.q_exponent, 6);
  double prev = 1e9;
  for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u}) {
    const double r = std::abs(to_double(make_rational(q_binomial(5, 2, q), pow(q, 6))) - 1.0);
    EXPECT_LT(r, prev);
    EXPECT_LE(r * static_cast<double>(q), 3.0);
    prev = r;
  }
}

TEST(AsymptoticEstimates, CRatioFirstOrderTerm) {
  EXPECT_TRUE(c_ratio_estimate(1, 2, 0, 3).exact);
  for (auto [i, j, k, n] : std::vector<std::array<int, 4>>{{1, 2, 1, 3}, {1, 2, 1, 4}, {1, 3, 1, 5}, {2, 3, 2, 5}}) {
    const auto est = c_ratio_estimate(i, j, k, n);
    EXPECT_EQ(est.error_exponent, -(n - k - j + 1));
    EXPECT_EQ(est.correction_coefficient, -1);
    // (ratio - 1) q^{n-k-j+1} -> -1 with an O(1/q) gap.
    std::vector<double> gap;
    for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
      const Rational ratio = make_rational(c_coefficient(i, j, k, n, q), q_binomial(n - i, j - i, q));
      const double scaled = (to_double(ratio) - 1.0) * std::pow(static_cast<double>(q), n - k - j + 1);
      gap.push_back(std::abs(scaled + 1.0));
    }
    for (std::size_t t = 1; t < gap.size(); ++t) EXPECT_LT(gap[t], gap[t - 1]) << i << j << k << n;
  }
  // Exact closed form for (1, 2, 1, 3): q / (q + 1).
  for (std::uint64_t q : {2u, 3u, 5u}) {
    EXPECT_EQ(make_rational(c_coefficient(1, 2, 1, 3, q), q_binomial(2, 1, q)),
              make_rational(q, q + 1));
  }
  EXPECT_THROW(c_ratio_estimate(1, 1, 1, 4), DomainError);
}

TEST(Binomial, Basic) {
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(5, 6), 0);
  EXPECT_EQ(binomial(5, -1), 0);
}
