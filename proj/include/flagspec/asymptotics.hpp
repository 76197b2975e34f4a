#pragma once

#include "flagspec/exact.hpp"
#include "flagspec/polynomial.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace flagspec {

/// 50 significant decimal digits.
using HighPrecision = boost::multiprecision::cpp_bin_float_50;

/// F_m(s) = sum_j (-1)^j C(m-j, j) s^{m-2j} and G_m(s) = sum_j (-1)^j C(m-j, j) s^{floor(m/2)-j},
/// coefficients by ascending degree.
struct SignedFiboPoly {
  int m = 0;
  std::vector<BigInt> f;
  std::vector<BigInt> g;
};
SignedFiboPoly fibo_poly(int m);

HighPrecision evaluate(const std::vector<BigInt>& ascending, const HighPrecision& s);

/// sign * 2cos(j pi / (m+1)); the zero root of odd m has sign 0.
struct CosineRoot {
  int j = 0;
  int sign = 0;
  int denominator = 0;
  HighPrecision value;
  std::string description;
};

/// {±2cos(j pi/(m+1)) : 1 <= j <= floor(m/2)}, plus 0 for odd m, sorted ascending.
std::vector<CosineRoot> fibo_roots_closed_form(int m);

/// min{k/2, 1}
Rational alpha(int k);

struct IntervalPrediction {
  enum class Kind { Cosine, RationalCenter };
  int n = 0;
  int k = 0;
  std::uint32_t q = 0;
  Kind kind = Kind::Cosine;
  CosineRoot zeta_root;   // Cosine kind
  Rational zeta_rational; // RationalCenter kind: 2(n-2k)/(n-2k+2)
  HighPrecision zeta;
  HighPrecision center;
  HighPrecision radius;
  double C = 0;
  BigInt multiplicity;    // (n choose k)_q - (n choose k-1)_q

  std::string zeta_description() const;
  HighPrecision lo() const { return center - radius; }
  HighPrecision hi() const { return center + radius; }
};

/// Cosine intervals centred at n-2 + zeta q^{-k/2} with radius C q^{-(k/2+alpha)}, and for even n
/// the interval centred at n-2 + 2(n-2k)/(n-2k+2) q^{-k} with radius C q^{-(k+1)}.
/// Requires 1 <= k <= floor((n-1)/2).
std::vector<IntervalPrediction> predicted_intervals(int n, int k, std::uint32_t q, double C);
std::vector<IntervalPrediction> all_predicted_intervals(int n, std::uint32_t q, double C);

/// Exact roots of every block at one (n, q).
struct BlockRoots {
  int k = 0;
  Polynomial char_poly;
  std::vector<RealRoot> roots;
};
std::vector<BlockRoots> block_roots(int n, std::uint32_t q, double precision = 1e-12);

struct IntervalOutcome {
  IntervalPrediction prediction;
  int captured = 0;           // roots inside, over all blocks
  int captured_block = -1;    // block of the captured root when exactly one
  int captured_multiplicity = 0;  // root multiplicity inside the block
  double eigenvalue = 0;      // captured value when exactly one
  bool ambiguous = false;     // an endpoint could not be separated from a root
};

struct ContainmentAtQ {
  std::uint32_t q = 0;
  bool disjoint = false;
  bool exactly_one = false;
  bool labels = false;
  bool conservation = false;
  bool pass = false;
  std::vector<IntervalOutcome> intervals;
};

struct ContainmentReport {
  int n = 0;
  double C = 0;
  std::vector<ContainmentAtQ> per_q;
  /// Smallest listed prime from which every listed prime passes.
  std::optional<std::uint32_t> q0;
};

ContainmentReport verify_containment(int n, const std::vector<std::uint32_t>& q_list, double C);

struct ConvergenceRow {
  int n = 0;
  int k = 0;
  std::string zeta_description;
  bool rational_center = false;
  std::uint32_t q = 0;
  double eigenvalue = 0;
  double center = 0;
  double residual = 0;  // |(lambda - (n-2)) q^{k/2} - zeta|, or q^{k} scaling for the rational centre
  double radius = 0;
  bool pass = false;    // |lambda - center| <= radius
};

struct ConvergenceTable {
  int n = 0;
  int k = 0;
  std::vector<ConvergenceRow> rows;
  /// Decay exponent of the largest cosine residual per q.
  double fitted_exponent = 0;
  /// Decay exponent per cosine zeta, in zeta order.
  std::vector<std::pair<std::string, double>> per_zeta_exponent;
  /// Decay exponent of the rational-centre residual (even n).
  std::optional<double> rational_exponent;
  bool non_increasing_tail = false;  // every cosine residual over the last three primes
  double required_exponent = 0;      // 0.8 alpha(k)
};

ConvergenceTable convergence_table(int n, int k, const std::vector<std::uint32_t>& q_list, double C);

/// Largest |lambda - center| / q^{-(k/2+alpha)} (and q^{-(k+1)} for the rational centre) over
/// the given primes, all k.
double max_deviation_ratio(int n, const std::vector<std::uint32_t>& q_list);

/// 1.25 times the largest ratio over the first ceil(half) of q_list.
double calibrate_C(int n, const std::vector<std::uint32_t>& q_list);

/// c = max err * q^order over the first ceil(half); validated if the rest stays within 1.25 c.
struct FittedConstant {
  double c = 0;
  double validation_max = 0;
  bool validated = false;
};
FittedConstant fit_constant(const std::vector<double>& q, const std::vector<double>& err, double order);

/// Predicted leading term of a_i for det(tI - M), M in the q-perturbed class of size m with rate r.
struct CoefficientPrediction {
  Rational coefficient;
  Rational q_exponent;
};
CoefficientPrediction predicted_coefficient(int m, int r, int i);

struct CoefficientRow {
  std::uint32_t q = 0;
  int i = 0;
  Rational exact;
  double predicted = 0;
  double ratio = 0;
};

struct CoefficientCheck {
  int n = 0;
  int k = 0;
  int m = 0;
  bool trace_zero = false;            // a_{m-1} = 0 at every q
  bool signs_at_largest = false;      // sign agreement at the largest prime
  std::vector<CoefficientRow> rows;
  std::vector<double> fitted_c;       // per i < m-1: max |ratio - 1| q over the first half
  std::vector<bool> validated;        // second half within 1.25 * fitted_c
  bool pass = false;
  /// Per prime, the largest |normalised coefficient - F_m coefficient| after t = s q^{-k/2}.
  std::vector<double> fibo_gap;
  /// Fit of fibo_gap against q^{-alpha(k)}.
  FittedConstant fibo_fit;
};

CoefficientCheck charpoly_coefficient_check(int n, int k, const std::vector<std::uint32_t>& q_list);

struct PermCountResult {
  int m = 0;
  int l = 0;
  long min_excess = 0;
  BigInt extremal_count;
};

/// Closed forms: c = ceil((m-l)/2), |C| = C((m+l)/2, l) for even m-l and
/// C((m+l-1)/2, l) (m-l-1) for odd m-l. DomainError for l = m-1 or l outside [0, m].
PermCountResult perm_counts(int m, int l);

/// Same quantities by scanning all of S_m; m <= 10.
PermCountResult perm_counts_exhaustive(int m, int l);

/// floor(n^2/4) + 2 assembled from |J_k|: sum |J_k| + 2 for odd n, sum (|J_k| + 1) + 3 for even n.
long predicted_distinct_count(int n);

/// Least-squares slope of -log r against log q over the largest ceil(half) points.
double fitted_decay_exponent(const std::vector<double>& q, const std::vector<double>& r);


}  // namespace flagspec
