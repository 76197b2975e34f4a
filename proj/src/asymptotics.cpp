#include "flagspec/asymptotics.hpp"

#include "flagspec/block_spectra.hpp"
#include "flagspec/errors.hpp"
#include "flagspec/qcombinatorics.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace flagspec {

namespace {

HighPrecision to_hp(const Rational& r) {
  return HighPrecision(r.get_num().get_str()) / HighPrecision(r.get_den().get_str());
}

HighPrecision hp_pow(std::uint32_t q, const Rational& e) {
  return boost::multiprecision::pow(HighPrecision(q), to_hp(e));
}

std::vector<std::size_t> first_half(std::size_t n) {
  std::vector<std::size_t> idx((n + 1) / 2);
  std::iota(idx.begin(), idx.end(), 0);
  return idx;
}

}  // namespace

SignedFiboPoly fibo_poly(int m) {
  if (m < 1) throw DomainError("Fibonacci polynomial index must be >= 1");
  SignedFiboPoly p;
  p.m = m;
  p.f.assign(m + 1, 0);
  p.g.assign(m / 2 + 1, 0);
  for (int j = 0; j <= m / 2; ++j) {
    BigInt c = binomial(m - j, j);
    if (j % 2 == 1) c = -c;
    p.f[m - 2 * j] = c;
    p.g[m / 2 - j] = c;
  }
  return p;
}

HighPrecision evaluate(const std::vector<BigInt>& ascending, const HighPrecision& s) {
  HighPrecision acc = 0;
  for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) acc = acc * s + HighPrecision(it->get_str());
  return acc;
}

std::vector<CosineRoot> fibo_roots_closed_form(int m) {
  if (m < 1) throw DomainError("Fibonacci polynomial index must be >= 1");
  const HighPrecision pi = boost::math::constants::pi<HighPrecision>();
  std::vector<CosineRoot> out;
  for (int j = 1; j <= m / 2; ++j) {
    const HighPrecision c = 2 * boost::multiprecision::cos(pi * j / (m + 1));
    for (int sign : {1, -1}) {
      CosineRoot r;
      r.j = j;
      r.sign = sign;
      r.denominator = m + 1;
      r.value = sign * c;
      r.description = std::string(sign > 0 ? "+" : "-") + "2cos(" + std::to_string(j) + "pi/" +
                      std::to_string(m + 1) + ")";
      out.push_back(r);
    }
  }
  if (m % 2 == 1) {
    CosineRoot z;
    z.j = 0;
    z.sign = 0;
    z.denominator = m + 1;
    z.value = 0;
    z.description = "0";
    out.push_back(z);
  }
  std::sort(out.begin(), out.end(), [](const CosineRoot& a, const CosineRoot& b) { return a.value < b.value; });
  return out;
}

Rational alpha(int k) {
  Rational a(k, 2);
  a.canonicalize();
  return a < 1 ? a : Rational(1);
}

std::string IntervalPrediction::zeta_description() const {
  return kind == Kind::Cosine ? zeta_root.description : "rational " + to_string(zeta_rational);
}

std::vector<IntervalPrediction> predicted_intervals(int n, int k, std::uint32_t q, double C) {
  if (k < 1 || k > (n - 1) / 2) {
    throw DomainError("predicted intervals need 1 <= k <= floor((n-1)/2), got n=" + std::to_string(n) +
                      " k=" + std::to_string(k));
  }
  const int m = n - 2 * k + 1;
  const Rational half_k = make_rational(k, 2);
  const Rational a = alpha(k);
  const HighPrecision base = n - 2;
  const HighPrecision scale = hp_pow(q, -half_k);
  const HighPrecision radius = HighPrecision(C) * hp_pow(q, -(half_k + a));
  const BigInt mult = block_multiplicity(n, q, k);
  std::vector<IntervalPrediction> out;
  for (const auto& root : fibo_roots_closed_form(m)) {
    if (root.sign == 0) continue;
    IntervalPrediction p;
    p.n = n;
    p.k = k;
    p.q = q;
    p.kind = IntervalPrediction::Kind::Cosine;
    p.zeta_root = root;
    p.zeta = root.value;
    p.center = base + root.value * scale;
    p.radius = radius;
    p.C = C;
    p.multiplicity = mult;
    out.push_back(std::move(p));
  }
  if (n % 2 == 0) {
    IntervalPrediction p;
    p.n = n;
    p.k = k;
    p.q = q;
    p.kind = IntervalPrediction::Kind::RationalCenter;
    p.zeta_rational = Rational(2 * (n - 2 * k), n - 2 * k + 2);
    p.zeta_rational.canonicalize();
    p.zeta = to_hp(p.zeta_rational);
    p.center = base + p.zeta * hp_pow(q, Rational(-k));
    p.radius = HighPrecision(C) * hp_pow(q, Rational(-(k + 1)));
    p.C = C;
    p.multiplicity = mult;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<IntervalPrediction> all_predicted_intervals(int n, std::uint32_t q, double C) {
  std::vector<IntervalPrediction> out;
  for (int k = 1; k <= (n - 1) / 2; ++k) {
    auto part = predicted_intervals(n, k, q, C);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<BlockRoots> block_roots(int n, std::uint32_t q, double precision) {
  std::vector<BlockRoots> out;
  for (int k = 0; 2 * k <= n; ++k) {
    BlockRoots b;
    b.k = k;
    b.char_poly = char_poly_exact(build_block(n, q, k));
    b.roots = real_roots(b.char_poly, precision);
    out.push_back(std::move(b));
  }
  return out;
}

namespace {

enum class Where { Inside, Outside, Ambiguous };

Where locate(RealRoot& r, const HighPrecision& lo, const HighPrecision& hi) {
  const double margin = 1e-9;
  if (r.hi < Rational(static_cast<double>(lo) - margin) || r.lo > Rational(static_cast<double>(hi) + margin)) {
    return Where::Outside;
  }
  const Rational finest(1, BigInt("10000000000000000000000000000000000000000"));
  for (Rational width(1, BigInt("1000000000000")); ; width /= 1000000) {
    const HighPrecision a = to_hp(r.lo), b = to_hp(r.hi);
    if (a >= lo && b <= hi) return Where::Inside;
    if (b < lo || a > hi) return Where::Outside;
    if (r.lo == r.hi || width < finest) return Where::Ambiguous;
    refine_root(r, width);
  }
}

// Nearest root of block k to x.
const RealRoot* nearest_root(const std::vector<BlockRoots>& roots, int k, double x) {
  const RealRoot* best = nullptr;
  for (const auto& b : roots) {
    if (b.k != k) continue;
    for (const auto& r : b.roots) {
      if (!best || std::abs(r.value - x) < std::abs(best->value - x)) best = &r;
    }
  }
  return best;
}

HighPrecision root_midpoint(const RealRoot& r) { return (to_hp(r.lo) + to_hp(r.hi)) / 2; }

}  // namespace

ContainmentReport verify_containment(int n, const std::vector<std::uint32_t>& q_list, double C) {
  if (q_list.empty()) throw DomainError("containment needs at least one prime");
  ContainmentReport rep;
  rep.n = n;
  rep.C = C;
  for (auto q : q_list) {
    ContainmentAtQ at;
    at.q = q;
    auto roots = block_roots(n, q);
    auto preds = all_predicted_intervals(n, q, C);
    std::sort(preds.begin(), preds.end(),
              [](const IntervalPrediction& a, const IntervalPrediction& b) { return a.center < b.center; });
    at.disjoint = true;
    for (std::size_t i = 0; i + 1 < preds.size(); ++i) {
      if (!(preds[i].hi() < preds[i + 1].lo())) at.disjoint = false;
    }
    at.exactly_one = true;
    at.labels = true;
    BigInt covered = 0;
    for (const auto& p : preds) {
      IntervalOutcome o;
      o.prediction = p;
      const HighPrecision lo = p.lo(), hi = p.hi();
      for (auto& b : roots) {
        for (auto& r : b.roots) {
          const Where w = locate(r, lo, hi);
          if (w == Where::Ambiguous) o.ambiguous = true;
          if (w != Where::Inside) continue;
          ++o.captured;
          o.captured_block = b.k;
          o.captured_multiplicity = r.multiplicity;
          o.eigenvalue = r.value;
        }
      }
      if (o.captured != 1 || o.ambiguous) at.exactly_one = false;
      if (o.captured == 1 && (o.captured_block != p.k || o.captured_multiplicity != 1)) at.labels = false;
      if (o.captured == 1) covered += block_multiplicity(n, q, o.captured_block) * o.captured_multiplicity;
      at.intervals.push_back(std::move(o));
    }
    // The remaining spectrum: 0 and n-1 from the first block, n-2 from the middle block for even n.
    covered += root_multiplicity(roots[0].char_poly, 0) + root_multiplicity(roots[0].char_poly, n - 1);
    if (n % 2 == 0) {
      covered += block_multiplicity(n, q, n / 2) * root_multiplicity(roots.back().char_poly, n - 2);
    }
    BigInt total = 0;
    for (int i = 1; i <= n - 1; ++i) total += q_binomial(n, i, q);
    at.conservation = covered == total;
    at.pass = at.disjoint && at.exactly_one && at.labels && at.conservation;
    rep.per_q.push_back(std::move(at));
  }
  // q0: start of the passing suffix, in list order.
  for (std::size_t i = rep.per_q.size(); i-- > 0;) {
    if (!rep.per_q[i].pass) break;
    rep.q0 = rep.per_q[i].q;
  }
  return rep;
}

double fitted_decay_exponent(const std::vector<double>& q, const std::vector<double>& r) {
  const std::size_t n = q.size();
  const std::size_t take = (n + 1) / 2;
  std::vector<double> x, y;
  for (std::size_t i = n - take; i < n; ++i) {
    if (r[i] <= 0) continue;
    x.push_back(std::log(q[i]));
    y.push_back(std::log(r[i]));
  }
  if (x.size() < 2) return std::numeric_limits<double>::infinity();
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return -sxy / sxx;
}

FittedConstant fit_constant(const std::vector<double>& q, const std::vector<double>& err, double order) {
  FittedConstant f;
  const std::size_t head = (q.size() + 1) / 2;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double scaled = err[i] * std::pow(q[i], order);
    if (i < head) f.c = std::max(f.c, scaled);
    else f.validation_max = std::max(f.validation_max, scaled);
  }
  f.validated = f.validation_max <= 1.25 * f.c;
  return f;
}

ConvergenceTable convergence_table(int n, int k, const std::vector<std::uint32_t>& q_list, double C) {
  ConvergenceTable t;
  t.n = n;
  t.k = k;
  t.required_exponent = 0.8 * to_double(alpha(k));
  std::vector<std::vector<double>> per_zeta;  // residual series, cosine intervals
  std::vector<std::string> names;
  std::vector<double> rational_series;
  std::vector<double> qs;
  for (auto q : q_list) {
    qs.push_back(q);
    const auto roots = block_roots(n, q);
    const auto preds = predicted_intervals(n, k, q, C);
    std::size_t cosine_index = 0;
    for (const auto& p : preds) {
      const RealRoot* r = nearest_root(roots, k, static_cast<double>(p.center));
      const HighPrecision lam = root_midpoint(*r);
      ConvergenceRow row;
      row.n = n;
      row.k = k;
      row.q = q;
      row.zeta_description = p.zeta_description();
      row.rational_center = p.kind == IntervalPrediction::Kind::RationalCenter;
      row.eigenvalue = static_cast<double>(lam);
      row.center = static_cast<double>(p.center);
      row.radius = static_cast<double>(p.radius);
      row.pass = boost::multiprecision::abs(lam - p.center) <= p.radius;
      const HighPrecision scale = row.rational_center ? hp_pow(q, Rational(k)) : hp_pow(q, Rational(k, 2));
      row.residual = static_cast<double>(boost::multiprecision::abs((lam - (n - 2)) * scale - p.zeta));
      if (row.rational_center) {
        rational_series.push_back(row.residual);
      } else {
        if (per_zeta.size() <= cosine_index) {
          per_zeta.emplace_back();
          names.push_back(row.zeta_description);
        }
        per_zeta[cosine_index++].push_back(row.residual);
      }
      t.rows.push_back(std::move(row));
    }
  }
  std::vector<double> sup(qs.size(), 0);
  t.non_increasing_tail = true;
  for (std::size_t z = 0; z < per_zeta.size(); ++z) {
    const auto& s = per_zeta[z];
    for (std::size_t i = 0; i < s.size(); ++i) sup[i] = std::max(sup[i], s[i]);
    t.per_zeta_exponent.emplace_back(names[z], fitted_decay_exponent(qs, s));
    const std::size_t L = s.size();
    for (std::size_t i = L >= 3 ? L - 3 : 0; i + 1 < L; ++i) {
      if (s[i + 1] > s[i]) t.non_increasing_tail = false;
    }
  }
  t.fitted_exponent = fitted_decay_exponent(qs, sup);
  if (!rational_series.empty()) t.rational_exponent = fitted_decay_exponent(qs, rational_series);
  return t;
}

double max_deviation_ratio(int n, const std::vector<std::uint32_t>& q_list) {
  double worst = 0;
  for (auto q : q_list) {
    const auto roots = block_roots(n, q);
    for (const auto& p : all_predicted_intervals(n, q, 1.0)) {
      const RealRoot* r = nearest_root(roots, p.k, static_cast<double>(p.center));
      const HighPrecision dev = boost::multiprecision::abs(root_midpoint(*r) - p.center);
      // With C = 1 the radius is exactly the order of the predicted error.
      worst = std::max(worst, static_cast<double>(dev / p.radius));
    }
  }
  return worst;
}

double calibrate_C(int n, const std::vector<std::uint32_t>& q_list) {
  std::vector<std::uint32_t> head;
  for (auto i : first_half(q_list.size())) head.push_back(q_list[i]);
  return 1.25 * max_deviation_ratio(n, head);
}

CoefficientPrediction predicted_coefficient(int m, int r, int i) {
  if (i < 0 || i >= m - 1) throw DomainError("predicted coefficient needs 0 <= i < m-1");
  CoefficientPrediction p;
  const int gap = m - i;
  if (gap % 2 == 0) {
    p.coefficient = Rational(binomial((m + i) / 2, i));
    if ((gap / 2) % 2 == 1) p.coefficient = -p.coefficient;
    p.q_exponent = Rational(-r * gap, 2);
  } else {
    p.coefficient = Rational(binomial((m + i - 1) / 2, i) * (m - i - 1));
    if (((gap - 3) / 2) % 2 != 0) p.coefficient = -p.coefficient;
    p.q_exponent = Rational(-r * (gap + 1), 2);
  }
  p.q_exponent.canonicalize();
  return p;
}

CoefficientCheck charpoly_coefficient_check(int n, int k, const std::vector<std::uint32_t>& q_list) {
  CoefficientCheck c;
  c.n = n;
  c.k = k;
  c.m = n - 2 * k + 1;
  if (k < 1 || c.m < 2) throw DomainError("coefficient check needs k >= 1 and n-2k+1 >= 2");
  const int m = c.m;
  const auto fibo = fibo_poly(m);
  c.trace_zero = true;
  std::vector<std::vector<double>> err(m - 1);
  std::vector<double> qs;
  c.signs_at_largest = true;
  for (std::size_t qi = 0; qi < q_list.size(); ++qi) {
    const auto q = q_list[qi];
    qs.push_back(q);
    auto block = build_block(n, q, k);
    for (int i = 0; i < m; ++i) block.entries(i, i) -= n - 2;
    const Polynomial p = char_poly(block.entries);
    if (p.coefficient(m - 1) != 0) c.trace_zero = false;
    for (int i = 0; i < m - 1; ++i) {
      const auto pred = predicted_coefficient(m, k, i);
      const HighPrecision predicted = to_hp(pred.coefficient) * hp_pow(q, pred.q_exponent);
      CoefficientRow row;
      row.q = q;
      row.i = i;
      row.exact = p.coefficient(i);
      row.predicted = static_cast<double>(predicted);
      row.ratio = static_cast<double>(to_hp(row.exact) / predicted);
      err[i].push_back(std::abs(row.ratio - 1));
      if (qi + 1 == q_list.size() && sgn(row.exact) != sgn(pred.coefficient)) c.signs_at_largest = false;
      c.rows.push_back(std::move(row));
    }
    double gap = 0;
    for (int i = 0; i <= m; ++i) {
      const HighPrecision normalised = to_hp(p.coefficient(i)) * hp_pow(q, Rational(k * (m - i), 2));
      const HighPrecision target(fibo.f[i].get_str());
      gap = std::max(gap, static_cast<double>(boost::multiprecision::abs(normalised - target)));
    }
    c.fibo_gap.push_back(gap);
  }
  bool all_validated = true;
  for (int i = 0; i < m - 1; ++i) {
    const auto f = fit_constant(qs, err[i], 1.0);
    c.fitted_c.push_back(f.c);
    c.validated.push_back(f.validated);
    all_validated = all_validated && f.validated;
  }
  c.fibo_fit = fit_constant(qs, c.fibo_gap, to_double(alpha(k)));
  c.pass = c.trace_zero && c.signs_at_largest && all_validated && c.fibo_fit.validated;
  return c;
}

PermCountResult perm_counts(int m, int l) {
  if (m < 1 || l < 0 || l > m) throw DomainError("perm_counts needs 0 <= l <= m");
  if (l == m - 1) throw DomainError("no permutation has exactly m-1 fixed points");
  PermCountResult r;
  r.m = m;
  r.l = l;
  const int gap = m - l;
  r.min_excess = (gap + 1) / 2;
  if (gap % 2 == 0) r.extremal_count = binomial((m + l) / 2, l);
  else r.extremal_count = binomial((m + l - 1) / 2, l) * (m - l - 1);
  return r;
}

PermCountResult perm_counts_exhaustive(int m, int l) {
  if (m < 1 || m > 10 || l < 0 || l > m) throw DomainError("exhaustive perm_counts needs 1 <= m <= 10");
  PermCountResult r;
  r.m = m;
  r.l = l;
  r.min_excess = std::numeric_limits<long>::max();
  r.extremal_count = 0;
  std::vector<int> pi(m);
  std::iota(pi.begin(), pi.end(), 0);
  do {
    int fixed = 0;
    long excess = 0;
    for (int i = 0; i < m; ++i) {
      if (pi[i] == i) ++fixed;
      else if (pi[i] > i) excess += pi[i] - i;
    }
    if (fixed != l) continue;
    if (excess < r.min_excess) {
      r.min_excess = excess;
      r.extremal_count = 1;
    } else if (excess == r.min_excess) {
      r.extremal_count += 1;
    }
  } while (std::next_permutation(pi.begin(), pi.end()));
  if (r.extremal_count == 0) r.min_excess = -1;
  return r;
}

long predicted_distinct_count(int n) {
  long total = 0;
  for (int k = 1; k <= (n - 1) / 2; ++k) {
    const long jk = 2 * ((n - 2 * k + 1) / 2);
    total += n % 2 == 1 ? jk : jk + 1;
  }
  return total + (n % 2 == 1 ? 2 : 3);
}

}  // namespace flagspec
