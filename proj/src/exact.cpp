#include "flagspec/exact.hpp"

#include "flagspec/errors.hpp"

#include <limits>

namespace flagspec {

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

BigInt pow(std::uint64_t base, unsigned long exponent) {
  BigInt b;
  mpz_import(b.get_mpz_t(), 1, -1, sizeof(base), 0, 0, &base);
  return pow(b, exponent);
}

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational r;
  if (r.set_str(s, 10) != 0 || r.get_den() == 0) {
    throw DomainError("malformed rational: '" + s + "'");
  }
  r.canonicalize();
  return r;
}

double to_double(const Rational& r) { return r.get_d(); }

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

bool fits_u64(const BigInt& z) {
  return sgn(z) >= 0 && mpz_sizeinbase(z.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const BigInt& z) {
  if (!fits_u64(z)) throw IntegrityError("integer does not fit in 64 bits: " + z.get_str());
  std::uint64_t out = 0;
  std::size_t count = 0;
  mpz_export(&out, &count, -1, sizeof(out), 0, 0, z.get_mpz_t());
  return out;
}

std::int64_t to_i64(const BigInt& z) {
  if (mpz_sizeinbase(z.get_mpz_t(), 2) > 62) {
    throw IntegrityError("integer does not fit in int64: " + z.get_str());
  }
  const BigInt a = abs(z);
  const auto mag = static_cast<std::int64_t>(to_u64(a));
  return sgn(z) < 0 ? -mag : mag;
}

}  // namespace flagspec
