#pragma once

#include <cstdint>

namespace clalg {

/// Arithmetic in Z/pZ for a machine-word prime p < 2^31.
class Zp {
 public:
  using value_type = std::uint32_t;

  explicit Zp(std::uint32_t p) : p_(p) {}

  std::uint32_t modulus() const { return p_; }

  value_type add(value_type a, value_type b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  value_type pow(value_type a, std::uint64_t e) const {
    value_type r = 1 % p_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  /// Inverse of a nonzero element (Fermat).
  value_type inv(value_type a) const { return pow(a, p_ - 2); }

  /// Canonical representative of a signed integer.
  value_type from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<value_type>(r);
  }
  /// Symmetric representative in (-p/2, p/2], used for printing.
  std::int64_t to_signed(value_type a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
  }

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

}  // namespace clalg
