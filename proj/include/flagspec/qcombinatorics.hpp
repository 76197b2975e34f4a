#pragma once

#include "flagspec/exact.hpp"

#include <cstdint>
#include <vector>

namespace flagspec {

/// Gaussian binomial (a choose b)_q; zero unless a >= b >= 0.
BigInt q_binomial(long a, long b, std::uint64_t q);

/// [g]_q! = prod_{i=1}^{g} (i choose 1)_q, the number of complete flags of F_q^g.
BigInt q_factorial(int g, std::uint64_t q);

/// a_n = sum_k (n choose k)_q b_k.
std::vector<Rational> carlitz_forward(const std::vector<Rational>& b, std::uint64_t q);

/// Inverse of carlitz_forward:
/// b_n = sum_k (-1)^{n-k} q^{C(n-k,2)} (n choose k)_q a_k.
std::vector<Rational> carlitz_invert(const std::vector<Rational>& a, std::uint64_t q);

/// c_{ijkm} = sum_{r=0}^{m} (-1)^{m-r} q^{C(m-r,2)} (m choose r)_q (n-i-k+r choose j-i-k+r)_q.
/// Requires 0 <= m <= k <= i <= j <= n.
BigInt c_coefficient(int i, int j, int k, int m, int n, std::uint64_t q);

/// c_{ijk} = c_{ijkk}.
inline BigInt c_coefficient(int i, int j, int k, int n, std::uint64_t q) {
  return c_coefficient(i, j, k, k, n, q);
}

/// f(q) = leading_coefficient * q^{q_exponent} + correction_coefficient * q^{error_exponent} + ...
/// When correction_coefficient is zero the correction is only an order claim O(q^{error_exponent}).
/// `exact` marks estimates that hold with no correction at all.
struct AsymptoticEstimate {
  Rational leading_coefficient;
  Rational q_exponent;
  Rational error_exponent;
  Rational correction_coefficient;
  bool exact = false;

  /// Leading term evaluated at q.
  double leading_at(double q) const;
};

/// (a-k choose b-k)_q / (a choose b)_q = q^{-k(a-b)} (1 + O(q^{-1})).
/// Requires 0 <= k <= b <= a.
AsymptoticEstimate qbinom_ratio_estimate(int a, int b, int k);

/// (a choose b)_q = q^{b(a-b)} (1 + O(q^{-1})). Requires 0 <= b <= a.
AsymptoticEstimate qbinom_magnitude_estimate(int a, int b);

/// c_{ijk} / (n-i choose j-i)_q = 1 - q^{-(n-k-j+1)} (1 + O(q^{-1})) for 1 <= k <= i < j <= n-k.
/// k = 0 gives the exact ratio 1.
AsymptoticEstimate c_ratio_estimate(int i, int j, int k, int n);

/// Ordinary binomial coefficient; zero outside 0 <= b <= a.
BigInt binomial(long a, long b);

}  // namespace flagspec
