#include "flagspec/prime_field.hpp"

#include "flagspec/errors.hpp"

#include <string>

namespace flagspec {

bool is_prime(std::uint64_t value) {
  if (value < 2) return false;
  if (value % 2 == 0) return value == 2;
  for (std::uint64_t d = 3; d * d <= value; d += 2) {
    if (value % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
  if (q >= (1u << 31) || !is_prime(q)) {
    throw DomainError("field size must be a prime below 2^31, got " + std::to_string(q));
  }
}

PrimeField::Element PrimeField::inv(Element a) const {
  if (a % q_ == 0) throw DomainError("inverse of zero in F_" + std::to_string(q_));
  // extended Euclid on (a, q)
  std::int64_t r0 = q_, r1 = a % q_, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t quot = r0 / r1;
    std::int64_t tmp = r0 - quot * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - quot * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t0 < 0) t0 += q_;
  return static_cast<Element>(t0);
}

}  // namespace flagspec
