#pragma once

#include <cstdint>

namespace flagspec {

bool is_prime(std::uint64_t value);

/// Arithmetic in F_q for a prime q. Elements are stored reduced in [0, q).
class PrimeField {
 public:
  using Element = std::uint32_t;

  /// Throws DomainError unless q is prime and below 2^31.
  explicit PrimeField(std::uint32_t q);

  std::uint32_t modulus() const noexcept { return q_; }

  Element add(Element a, Element b) const noexcept {
    const std::uint32_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Element sub(Element a, Element b) const noexcept { return a >= b ? a - b : a + q_ - b; }
  Element neg(Element a) const noexcept { return a == 0 ? 0 : q_ - a; }
  Element mul(Element a, Element b) const noexcept {
    return static_cast<Element>((static_cast<std::uint64_t>(a) * b) % q_);
  }
  /// Throws DomainError on zero.
  Element inv(Element a) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t q_;
};

}  // namespace flagspec
