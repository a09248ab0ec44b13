#pragma once

#include <cstdint>

namespace iep {

/// A least nonnegative residue: 0 <= value < modulus.
struct Residue {
  std::int64_t value = 0;
  std::int64_t modulus = 1;

  friend bool operator==(const Residue&, const Residue&) = default;
};

/// [N]_n, the least nonnegative residue of N modulo n (n >= 1, N any sign).
Residue least_nonneg_residue(std::int64_t N, std::int64_t n);

/// Multiplicative inverse of a modulo n. Throws NotInvertible unless
/// gcd(a, n) == 1, InvalidParameters if n < 2.
Residue mod_inverse(std::int64_t a, std::int64_t n);

/// (a * b) mod n without intermediate overflow; result in [0, n).
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t n);

/// Checked multiplication; throws InvalidParameters on signed 64-bit overflow.
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// Membership in the numerical semigroup generated by p and q, i.e. whether
/// N = x*q + y*p for some x, y >= 0. False for every N < 0.
///
/// Computes x = N * q^{-1} mod p and accepts iff N - x*q >= 0. Generators of
/// size 1 are accepted (they generate every N >= 0).
bool in_semigroup(std::int64_t N, std::int64_t p, std::int64_t q);

/// Precomputed form of in_semigroup for repeated queries with fixed (p, q).
class Semigroup {
 public:
  Semigroup(std::int64_t p, std::int64_t q);

  bool contains(std::int64_t N) const;
  std::int64_t p() const noexcept { return p_; }
  std::int64_t q() const noexcept { return q_; }

 private:
  std::int64_t p_;
  std::int64_t q_;
  std::int64_t q_inv_mod_p_;
};

}  // namespace iep
