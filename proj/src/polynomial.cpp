#include "flagspec/polynomial.hpp"

#include "flagspec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace flagspec {

Polynomial::Polynomial(std::vector<Rational> ascending) : c_(std::move(ascending)) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::linear(const Rational& root) { return Polynomial({-root, Rational(1)}); }

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Polynomial::coefficient(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[i];
}

const Rational& Polynomial::leading() const {
  if (c_.empty()) throw DomainError("zero polynomial has no leading coefficient");
  return c_.back();
}

Rational Polynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::evaluate(double x) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

int Polynomial::sign_at(const Rational& x) const { return sgn(evaluate(x)); }

Polynomial Polynomial::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (c_.empty()) return {};
  return (1 / leading()) * *this;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
  if (d.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> rem = c_;
  const int dd = d.degree();
  std::vector<Rational> quo(std::max(0, degree() - dd + 1));
  const Rational inv_lead = 1 / d.leading();
  for (int i = degree(); i >= dd; --i) {
    const Rational f = rem[i] * inv_lead;
    if (f == 0) continue;
    quo[i - dd] = f;
    for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= f * d.c_[j];
  }
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(i) + b.coefficient(i);
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(i) - b.coefficient(i);
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(c));
}

Polynomial operator*(const Rational& s, const Polynomial& a) {
  std::vector<Rational> c(a.c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = s * a.c_[i];
  return Polynomial(std::move(c));
}

std::string Polynomial::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& a = c_[i];
    if (a == 0) continue;
    Rational mag = abs(a);
    if (!first) out << (sgn(a) < 0 ? " - " : " + ");
    else if (sgn(a) < 0) out << "-";
    first = false;
    const bool unit = (mag == 1 && i > 0);
    if (!unit) out << mag.get_str();
    if (i > 0) {
      if (!unit) out << "*";
      out << var;
      if (i > 1) out << "^" << i;
    }
  }
  return out.str();
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    auto r = x.divmod(y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p) {
  if (p.degree() < 1) return {};
  std::vector<std::pair<Polynomial, int>> out;
  const Polynomial f = p.monic();
  const Polynomial fp = f.derivative();
  Polynomial a = gcd(f, fp);
  Polynomial b = f.divmod(a).first;
  Polynomial c = fp.divmod(a).first;
  Polynomial d = c - b.derivative();
  int i = 1;
  while (b.degree() >= 1) {
    Polynomial g = gcd(b, d);
    if (g.degree() >= 1) out.emplace_back(g, i);
    b = b.divmod(g).first;
    c = d.divmod(g).first;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() < 1) return p.monic();
  return p.monic().divmod(gcd(p, p.derivative())).first.monic();
}

std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
  std::vector<Polynomial> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    auto r = chain[chain.size() - 2].divmod(chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(Rational(-1) * r);
  }
  if (chain.back().is_zero()) chain.pop_back();
  return chain;
}

namespace {

int variations(const std::vector<Polynomial>& chain, const Rational& x) {
  int count = 0, last = 0;
  for (const auto& p : chain) {
    const int s = p.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

Rational cauchy_bound(const Polynomial& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max<Rational>(m, abs(p.coefficient(i) / p.leading()));
  return m + 1;
}

}  // namespace

int sturm_count(const std::vector<Polynomial>& chain, const Rational& lo, const Rational& hi) {
  return variations(chain, lo) - variations(chain, hi);
}

void refine_root(RealRoot& r, const Rational& width) {
  if (r.lo == r.hi) return;
  const auto chain = sturm_sequence(r.factor);
  while (r.hi - r.lo > width) {
    if (r.factor.sign_at(r.hi) == 0) {
      r.lo = r.hi;
      break;
    }
    Rational mid = (r.lo + r.hi) / 2;
    if (sturm_count(chain, r.lo, mid) == 1) r.hi = mid;
    else r.lo = mid;
  }
  r.value = to_double((r.lo + r.hi) / 2);
}

std::vector<RealRoot> real_roots(const Polynomial& p, double precision) {
  if (p.is_zero()) throw DomainError("real_roots of the zero polynomial");
  std::vector<RealRoot> out;
  const Rational width(precision);
  int total = 0;
  for (const auto& [f, mult] : squarefree_decomposition(p)) {
    const auto chain = sturm_sequence(f);
    const Rational m = cauchy_bound(f);
    std::vector<std::pair<Rational, Rational>> stack{{-m, m}};
    while (!stack.empty()) {
      auto [lo, hi] = stack.back();
      stack.pop_back();
      const int c = sturm_count(chain, lo, hi);
      if (c == 0) continue;
      if (c == 1) {
        RealRoot r{lo, hi, 0, mult, f};
        refine_root(r, width);
        out.push_back(std::move(r));
        total += mult;
        continue;
      }
      const Rational mid = (lo + hi) / 2;
      stack.emplace_back(lo, mid);
      stack.emplace_back(mid, hi);
    }
  }
  if (total != p.degree()) {
    throw IntegrityError("polynomial of degree " + std::to_string(p.degree()) + " has only " +
                         std::to_string(total) + " real roots counted with multiplicity");
  }
  std::sort(out.begin(), out.end(), [](const RealRoot& a, const RealRoot& b) { return a.lo < b.lo; });
  return out;
}

Polynomial char_poly_faddeev(const ExactMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DomainError("char_poly needs a square matrix");
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  ExactMatrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    ExactMatrix next = a * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    c[n - k] = -(a * mk).trace() / Rational(static_cast<long>(k));
  }
  return Polynomial(std::move(c));
}

Polynomial char_poly_hessenberg(const ExactMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DomainError("char_poly needs a square matrix");
  ExactMatrix h = a;
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t p = j + 1;
    while (p < n && h(p, j) == 0) ++p;
    if (p == n) continue;
    if (p != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(p, c), h(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, p), h(r, j + 1));
    }
    for (std::size_t r = j + 2; r < n; ++r) {
      if (h(r, j) == 0) continue;
      const Rational f = h(r, j) / h(j + 1, j);
      for (std::size_t c = 0; c < n; ++c) h(r, c) -= f * h(j + 1, c);
      for (std::size_t rr = 0; rr < n; ++rr) h(rr, j + 1) += f * h(rr, r);
    }
  }
  // p_m = (t - h_mm) p_{m-1} - sum_i h_{m-i,m} prod_{j=m-i+1}^{m} h_{j,j-1} p_{m-i-1}, 1-based.
  std::vector<Polynomial> ps{Polynomial::constant(1)};
  const Polynomial t({Rational(0), Rational(1)});
  for (std::size_t m = 1; m <= n; ++m) {
    Polynomial pm = (t - Polynomial::constant(h(m - 1, m - 1))) * ps[m - 1];
    Rational prod = 1;
    for (std::size_t i = 1; i < m; ++i) {
      prod *= h(m - i, m - i - 1);
      if (prod == 0) break;
      pm = pm - (prod * h(m - i - 1, m - 1)) * ps[m - i - 1];
    }
    ps.push_back(std::move(pm));
  }
  return ps[n];
}

Polynomial char_poly(const ExactMatrix& m) {
  return m.rows() <= 16 ? char_poly_faddeev(m) : char_poly_hessenberg(m);
}

}  // namespace flagspec
