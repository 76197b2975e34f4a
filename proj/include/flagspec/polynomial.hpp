#pragma once

#include "flagspec/exact.hpp"
#include "flagspec/exact_matrix.hpp"

#include <string>
#include <utility>
#include <vector>

namespace flagspec {

/// Univariate polynomial over Q, coefficients by ascending degree, no trailing zeros.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> ascending);
  static Polynomial constant(const Rational& c);
  /// x - root
  static Polynomial linear(const Rational& root);

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<Rational>& coefficients() const noexcept { return c_; }
  /// Coefficient of x^i, zero beyond the degree.
  Rational coefficient(int i) const;
  const Rational& leading() const;

  Rational evaluate(const Rational& x) const;
  double evaluate(double x) const;
  /// Sign of p(x) in {-1, 0, 1}.
  int sign_at(const Rational& x) const;

  Polynomial derivative() const;
  Polynomial monic() const;

  /// p = quotient * d + remainder.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& s, const Polynomial& a);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Yun factorisation: pairs (f_i, i) with p = lc * prod f_i^i, f_i monic squarefree
/// and pairwise coprime. Factors equal to 1 are omitted.
std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p);

/// Monic squarefree part p / gcd(p, p').
Polynomial squarefree_part(const Polynomial& p);

/// Sturm chain p, p', -rem(p, p'), ...
std::vector<Polynomial> sturm_sequence(const Polynomial& p);

/// Number of distinct real roots in (lo, hi]. Needs a chain of a squarefree polynomial.
int sturm_count(const std::vector<Polynomial>& chain, const Rational& lo, const Rational& hi);

/// Real root of a squarefree factor with isolating interval (lo, hi]; lo == hi marks an exact root.
struct RealRoot {
  Rational lo;
  Rational hi;
  double value = 0;
  int multiplicity = 1;
  Polynomial factor;
};

/// All real roots, sorted, refined until hi - lo <= precision.
/// Throws IntegrityError if fewer real roots (with multiplicity) than the degree exist.
std::vector<RealRoot> real_roots(const Polynomial& p, double precision = 1e-12);

/// Shrinks the isolating interval of r until its width is at most `width`.
void refine_root(RealRoot& r, const Rational& width);

/// det(t I - M), exact. Faddeev-LeVerrier up to size 16, Hessenberg reduction above.
Polynomial char_poly(const ExactMatrix& m);
Polynomial char_poly_faddeev(const ExactMatrix& m);
Polynomial char_poly_hessenberg(const ExactMatrix& m);

}  // namespace flagspec
