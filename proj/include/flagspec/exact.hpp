#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace flagspec {

using BigInt = mpz_class;
// gmpxx keeps every arithmetic result canonical (lowest terms, positive denominator).
using Rational = mpq_class;

BigInt pow(const BigInt& base, unsigned long exponent);
BigInt pow(std::uint64_t base, unsigned long exponent);

// Always "num/den", denominator included even when 1.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& z);
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);
Rational make_rational(const BigInt& num, const BigInt& den);

BigInt lcm(const BigInt& a, const BigInt& b);

// Converts to uint64 or throws IntegrityError.
std::uint64_t to_u64(const BigInt& z);
std::int64_t to_i64(const BigInt& z);
bool fits_u64(const BigInt& z);

}  // namespace flagspec
