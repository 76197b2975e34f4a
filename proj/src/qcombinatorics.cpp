#include "flagspec/qcombinatorics.hpp"

#include "flagspec/errors.hpp"

#include <cmath>
#include <string>

namespace flagspec {

BigInt q_binomial(long a, long b, std::uint64_t q) {
  if (q < 2) throw DomainError("q_binomial needs q >= 2");
  if (b < 0 || a < b) return 0;
  if (b > a - b) b = a - b;
  // After step t the running value is (a choose t+1)_q, so each division is exact.
  BigInt value = 1;
  const BigInt qq = static_cast<unsigned long>(q);
  for (long t = 0; t < b; ++t) {
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), qq.get_mpz_t(), static_cast<unsigned long>(a - t));
    mpz_pow_ui(den.get_mpz_t(), qq.get_mpz_t(), static_cast<unsigned long>(t + 1));
    value *= num - 1;
    mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), BigInt(den - 1).get_mpz_t());
  }
  return value;
}

BigInt q_factorial(int g, std::uint64_t q) {
  if (g < 0) throw DomainError("q_factorial of a negative integer");
  BigInt value = 1;
  for (int i = 1; i <= g; ++i) value *= q_binomial(i, 1, q);
  return value;
}

std::vector<Rational> carlitz_forward(const std::vector<Rational>& b, std::uint64_t q) {
  std::vector<Rational> a(b.size());
  for (std::size_t n = 0; n < b.size(); ++n) {
    Rational sum = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      sum += Rational(q_binomial(static_cast<long>(n), static_cast<long>(k), q)) * b[k];
    }
    a[n] = sum;
  }
  return a;
}

std::vector<Rational> carlitz_invert(const std::vector<Rational>& a, std::uint64_t q) {
  std::vector<Rational> b(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) {
    Rational sum = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      const unsigned long d = n - k;
      BigInt term = pow(q, d * (d - (d > 0 ? 1 : 0)) / 2) *
                    q_binomial(static_cast<long>(n), static_cast<long>(k), q);
      if (d % 2 == 1) term = -term;
      sum += Rational(term) * a[k];
    }
    b[n] = sum;
  }
  return b;
}

BigInt c_coefficient(int i, int j, int k, int m, int n, std::uint64_t q) {
  if (!(0 <= m && m <= k && k <= i && i <= j && j <= n)) {
    throw DomainError("c_coefficient needs 0 <= m <= k <= i <= j <= n, got (i,j,k,m,n) = (" +
                      std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                      "," + std::to_string(m) + "," + std::to_string(n) + ")");
  }
  BigInt sum = 0;
  for (int r = 0; r <= m; ++r) {
    const unsigned long d = static_cast<unsigned long>(m - r);
    BigInt term = pow(q, d * (d - (d > 0 ? 1 : 0)) / 2) * q_binomial(m, r, q) *
                  q_binomial(n - i - k + r, j - i - k + r, q);
    if (d % 2 == 1) term = -term;
    sum += term;
  }
  return sum;
}

double AsymptoticEstimate::leading_at(double q) const {
  return to_double(leading_coefficient) * std::pow(q, to_double(q_exponent));
}

AsymptoticEstimate qbinom_ratio_estimate(int a, int b, int k) {
  if (!(0 <= k && k <= b && b <= a)) {
    throw DomainError("qbinom_ratio_estimate needs 0 <= k <= b <= a");
  }
  AsymptoticEstimate e;
  e.leading_coefficient = 1;
  e.q_exponent = -k * (a - b);
  e.error_exponent = e.q_exponent - 1;
  e.correction_coefficient = 0;
  e.exact = (k == 0 || a == b);
  return e;
}

AsymptoticEstimate qbinom_magnitude_estimate(int a, int b) {
  if (!(0 <= b && b <= a)) throw DomainError("qbinom_magnitude_estimate needs 0 <= b <= a");
  AsymptoticEstimate e;
  e.leading_coefficient = 1;
  e.q_exponent = b * (a - b);
  e.error_exponent = e.q_exponent - 1;
  e.correction_coefficient = 0;
  e.exact = (b == 0 || b == a);
  return e;
}

AsymptoticEstimate c_ratio_estimate(int i, int j, int k, int n) {
  AsymptoticEstimate e;
  e.leading_coefficient = 1;
  e.q_exponent = 0;
  if (k == 0) {
    if (!(0 <= i && i <= j && j <= n)) throw DomainError("c_ratio_estimate needs i <= j <= n");
    e.error_exponent = -1;
    e.correction_coefficient = 0;
    e.exact = true;
    return e;
  }
  if (!(1 <= k && k <= i && i < j && j <= n - k)) {
    throw DomainError("c_ratio_estimate needs 1 <= k <= i < j <= n-k");
  }
  e.error_exponent = -(n - k - j + 1);
  e.correction_coefficient = -1;
  return e;
}

BigInt binomial(long a, long b) {
  if (b < 0 || a < b) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return r;
}

}  // namespace flagspec
