#include "oracles.hpp"

#include "flagspec/asymptotics.hpp"
#include "flagspec/block_spectra.hpp"
#include "flagspec/errors.hpp"
#include "flagspec/qcombinatorics.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace flagspec;

namespace {

std::vector<BigInt> ints(std::vector<long> v) { return {v.begin(), v.end()}; }

const std::vector<std::uint32_t> kPrimes = {2, 3, 5, 7, 11, 13};

}  // namespace

TEST(Fibo, Examples) {
  EXPECT_EQ(fibo_poly(2).f, ints({-1, 0, 1}));
  EXPECT_EQ(fibo_poly(3).f, ints({0, -2, 0, 1}));
  EXPECT_EQ(fibo_poly(4).f, ints({1, 0, -3, 0, 1}));
  EXPECT_EQ(fibo_poly(4).g, ints({1, -3, 1}));
}

TEST(Fibo, ParityRelations) {
  for (int m = 1; m <= 14; ++m) {
    const auto p = fibo_poly(m);
    // F_m(s) = G_m(s^2) for even m and s G_m(s^2) for odd m, coefficientwise.
    std::vector<BigInt> lifted(static_cast<std::size_t>(m + 1), BigInt(0));
    for (std::size_t j = 0; j < p.g.size(); ++j) lifted[2 * j + (m % 2)] = p.g[j];
    EXPECT_EQ(p.f, lifted) << m;
  }
}

TEST(FiboRoots, Examples) {
  const auto r2 = fibo_roots_closed_form(2);
  ASSERT_EQ(r2.size(), 2u);
  EXPECT_NEAR(static_cast<double>(r2[0].value), -1, 1e-15);
  EXPECT_NEAR(static_cast<double>(r2[1].value), 1, 1e-15);
  const auto r3 = fibo_roots_closed_form(3);
  ASSERT_EQ(r3.size(), 3u);
  EXPECT_EQ(r3[1].value, 0);
  EXPECT_NEAR(static_cast<double>(r3[2].value), std::sqrt(2.0), 1e-15);
  const auto r5 = fibo_roots_closed_form(5);
  const std::vector<double> expect = {-std::sqrt(3.0), -1, 0, 1, std::sqrt(3.0)};
  ASSERT_EQ(r5.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(static_cast<double>(r5[i].value), expect[i], 1e-15);
}

TEST(FiboRoots, ResidualsAndCount) {
  for (int m = 2; m <= 12; ++m) {
    const auto p = fibo_poly(m);
    const auto roots = fibo_roots_closed_form(m);
    EXPECT_EQ(static_cast<int>(roots.size()), m);
    for (const auto& r : roots) EXPECT_LE(abs(evaluate(p.f, r.value)), HighPrecision("1e-10"));
    // Independent count: distinct real roots of F_m by Sturm isolation.
    std::vector<Rational> c;
    for (const auto& x : p.f) c.emplace_back(x);
    const auto exact = real_roots(Polynomial(c));
    EXPECT_EQ(exact.size(), roots.size());
    for (std::size_t i = 0; i < exact.size(); ++i) {
      EXPECT_EQ(exact[i].multiplicity, 1);
      EXPECT_NEAR(exact[i].value, static_cast<double>(roots[i].value), 1e-11);
    }
  }
}

TEST(Alpha, Values) {
  EXPECT_EQ(alpha(1), make_rational(1, 2));
  EXPECT_EQ(alpha(2), 1);
  EXPECT_EQ(alpha(5), 1);
}

TEST(Intervals, Examples) {
  const double C = 1.5;
  const auto n3 = predicted_intervals(3, 1, 7, C);
  ASSERT_EQ(n3.size(), 2u);
  EXPECT_NEAR(static_cast<double>(n3[0].center), 1 - 1 / std::sqrt(7.0), 1e-15);
  EXPECT_NEAR(static_cast<double>(n3[1].center), 1 + 1 / std::sqrt(7.0), 1e-15);
  EXPECT_NEAR(static_cast<double>(n3[0].radius), C / 7, 1e-15);
  const auto n4 = predicted_intervals(4, 1, 5, C);
  ASSERT_EQ(n4.size(), 3u);
  int rational = 0;
  for (const auto& p : n4) {
    if (p.kind == IntervalPrediction::Kind::RationalCenter) {
      ++rational;
      EXPECT_EQ(p.zeta_rational, 1);
      EXPECT_NEAR(static_cast<double>(p.center), 2 + 1.0 / 5, 1e-15);
      EXPECT_NEAR(static_cast<double>(p.radius), C / 25, 1e-15);
    } else {
      EXPECT_NEAR(std::abs(static_cast<double>(p.zeta)), std::sqrt(2.0), 1e-15);
    }
  }
  EXPECT_EQ(rational, 1);
  const auto n5 = predicted_intervals(5, 2, 3, C);
  ASSERT_EQ(n5.size(), 2u);
  EXPECT_NEAR(static_cast<double>(n5[1].center), 3 + 1.0 / 3, 1e-15);
  EXPECT_NEAR(static_cast<double>(n5[1].radius), C / 9, 1e-15);
  EXPECT_THROW(predicted_intervals(5, 3, 3, C), DomainError);
  EXPECT_THROW(predicted_intervals(5, 0, 3, C), DomainError);
}

TEST(Intervals, CountsPerK) {
  for (int n = 3; n <= 12; ++n) {
    for (int k = 1; 2 * k <= n - 1; ++k) {
      EXPECT_EQ(static_cast<int>(predicted_intervals(n, k, 5, 1).size()), n - 2 * k + 1) << n << k;
    }
  }
}

TEST(Intervals, RationalityGuard) {
  for (int n = 3; n <= 12; ++n) {
    for (int k = 1; 2 * k <= n - 1; ++k) {
      const double rational = 2.0 * (n - 2 * k) / (n - 2 * k + 2);
      for (const auto& r : fibo_roots_closed_form(n - 2 * k + 1)) {
        EXPECT_GT(std::abs(static_cast<double>(r.value) - rational), 1e-6) << n << k;
      }
    }
  }
}

TEST(Containment, HeawoodAtCOne) {
  const auto rep = verify_containment(3, {2}, 1.0);
  ASSERT_EQ(rep.per_q.size(), 1u);
  for (const auto& o : rep.per_q[0].intervals) {
    EXPECT_GE(o.captured, 1);
    EXPECT_NEAR(std::abs(o.eigenvalue - static_cast<double>(o.prediction.center)), 1 / (3 * std::sqrt(2.0)), 1e-12);
  }
}

TEST(Containment, RationalCentreCapturesValueAboveNMinusTwo) {
  for (int n : {4, 6}) {
    const auto rep = verify_containment(n, {23, 29, 31}, 2.0);
    for (const auto& at : rep.per_q) {
      for (const auto& o : at.intervals) {
        if (o.prediction.kind != IntervalPrediction::Kind::RationalCenter || o.captured != 1) continue;
        EXPECT_GT(o.eigenvalue, n - 2);
      }
    }
  }
}

TEST(Containment, ConservationAndEmpiricalThreshold) {
  const auto rep = verify_containment(3, kPrimes, calibrate_C(3, kPrimes));
  ASSERT_TRUE(rep.q0.has_value());
  for (const auto& at : rep.per_q) {
    if (at.q >= *rep.q0) {
      EXPECT_TRUE(at.pass) << at.q;
      EXPECT_TRUE(at.conservation);
    }
  }
}

TEST(Convergence, HeawoodResidualAndTrend) {
  const auto t = convergence_table(3, 1, kPrimes, 1.0);
  ASSERT_EQ(t.rows.size(), 2 * kPrimes.size());
  // Eigenvalues 1 +- sqrt(q)/(q+1), so both scaled residuals equal 1/(q+1).
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_NEAR(t.rows[i].residual, 1.0 / (t.rows[i].q + 1), 1e-11) << t.rows[i].q;
  }
  for (std::size_t i = 0; i + 2 < t.rows.size(); ++i) EXPECT_GT(t.rows[i].residual, t.rows[i + 2].residual);
  EXPECT_TRUE(t.non_increasing_tail);
  std::vector<double> q, r;
  for (auto p : kPrimes) {
    q.push_back(p);
    r.push_back(1.0 / (p + 1));
  }
  EXPECT_NEAR(t.fitted_exponent, fitted_decay_exponent(q, r), 1e-9);
  EXPECT_GE(t.fitted_exponent, t.required_exponent);
}

TEST(Coefficients, HeawoodAndTrace) {
  const auto c = charpoly_coefficient_check(3, 1, kPrimes);
  EXPECT_TRUE(c.trace_zero);
  ASSERT_FALSE(c.rows.empty());
  EXPECT_EQ(c.rows[0].q, 2u);
  EXPECT_EQ(c.rows[0].exact, make_rational(-2, 9));
  EXPECT_NEAR(c.rows[0].predicted, -0.5, 1e-15);
  EXPECT_TRUE(charpoly_coefficient_check(5, 1, kPrimes).trace_zero);
  const auto p = predicted_coefficient(4, 1, 2);
  EXPECT_EQ(p.coefficient, -3);
  EXPECT_EQ(p.q_exponent, -1);
  const auto p0 = predicted_coefficient(2, 1, 0);
  EXPECT_EQ(p0.coefficient, -1);
  EXPECT_EQ(p0.q_exponent, -1);
}

TEST(Coefficients, PassUpToSeven) {
  const std::vector<std::uint32_t> primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
  for (int n = 3; n <= 7; ++n) {
    for (int k = 1; n - 2 * k + 1 >= 2; ++k) {
      const auto c = charpoly_coefficient_check(n, k, primes);
      EXPECT_TRUE(c.pass) << n << k;
      EXPECT_TRUE(c.fibo_fit.validated) << n << k;
    }
  }
}

TEST(PermCounts, Examples) {
  const auto a = perm_counts(3, 1);
  EXPECT_EQ(a.min_excess, 1);
  EXPECT_EQ(a.extremal_count, 2);
  const auto b = perm_counts(4, 1);
  EXPECT_EQ(b.min_excess, 2);
  EXPECT_EQ(b.extremal_count, 4);
  const auto c = perm_counts(6, 6);
  EXPECT_EQ(c.min_excess, 0);
  EXPECT_EQ(c.extremal_count, 1);
  EXPECT_THROW(perm_counts(5, 4), DomainError);
  EXPECT_THROW(perm_counts(5, 6), DomainError);
}

TEST(PermCounts, MatchHeapOracle) {
  for (int m = 1; m <= 8; ++m) {
    const auto tallies = oracle::perm_tallies(m);
    for (int l = 0; l <= m; ++l) {
      if (l == m - 1) {
        EXPECT_LT(tallies[l].min_excess, 0);
        continue;
      }
      const auto closed = perm_counts(m, l);
      EXPECT_EQ(closed.min_excess, tallies[l].min_excess) << m << " " << l;
      EXPECT_EQ(closed.extremal_count, tallies[l].count) << m << " " << l;
      const auto scan = perm_counts_exhaustive(m, l);
      EXPECT_EQ(scan.min_excess, tallies[l].min_excess);
      EXPECT_EQ(scan.extremal_count, tallies[l].count);
    }
  }
}

TEST(DistinctFormula, IntegerIdentity) {
  for (int n = 3; n <= 50; ++n) EXPECT_EQ(predicted_distinct_count(n), n * n / 4 + 2) << n;
}

TEST(Fitting, SyntheticData) {
  std::vector<double> q = {2, 3, 5, 7, 11, 13, 17, 19};
  std::vector<double> r;
  for (double x : q) r.push_back(3.0 * std::pow(x, -0.75));
  EXPECT_NEAR(fitted_decay_exponent(q, r), 0.75, 1e-12);
  const auto f = fit_constant(q, r, 0.75);
  EXPECT_NEAR(f.c, 3.0, 1e-12);
  EXPECT_TRUE(f.validated);
  r.back() *= 10;
  EXPECT_FALSE(fit_constant(q, r, 0.75).validated);
}
