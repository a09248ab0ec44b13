#include "iep/arith.hpp"

#include <numeric>
#include <string>

#include "iep/error.hpp"

namespace iep {

Residue least_nonneg_residue(std::int64_t N, std::int64_t n) {
  if (n < 1) throw InvalidParameters("modulus must be positive, got " + std::to_string(n));
  std::int64_t v = N % n;
  if (v < 0) v += n;
  return {v, n};
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t n) {
  __int128 prod = static_cast<__int128>(a) * b;
  auto v = static_cast<std::int64_t>(prod % n);
  return v < 0 ? v + n : v;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw InvalidParameters("64-bit overflow in " + std::to_string(a) + " * " + std::to_string(b));
  }
  return out;
}

Residue mod_inverse(std::int64_t a, std::int64_t n) {
  if (n < 2) throw InvalidParameters("mod_inverse needs n >= 2, got " + std::to_string(n));
  std::int64_t a0 = least_nonneg_residue(a, n).value;
  // extended Euclid on (a0, n)
  std::int64_t old_r = a0, r = n;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t quot = old_r / r;
    std::int64_t tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) {
    throw NotInvertible(std::to_string(a) + " is not invertible modulo " + std::to_string(n) +
                        " (gcd " + std::to_string(old_r) + ")");
  }
  return least_nonneg_residue(old_s, n);
}

Semigroup::Semigroup(std::int64_t p, std::int64_t q) : p_(p), q_(q), q_inv_mod_p_(0) {
  if (p < 1 || q < 1) throw InvalidParameters("semigroup generators must be positive");
  if (std::gcd(p, q) != 1) {
    throw InvalidParameters("semigroup generators " + std::to_string(p) + ", " +
                            std::to_string(q) + " are not coprime");
  }
  if (p > 1) q_inv_mod_p_ = mod_inverse(q, p).value;
}

bool Semigroup::contains(std::int64_t N) const {
  if (N < 0) return false;
  std::int64_t x = p_ == 1 ? 0 : mul_mod(N, q_inv_mod_p_, p_);
  // x is the only candidate in [0, p); N - x*q is then divisible by p.
  return static_cast<__int128>(x) * q_ <= N;
}

bool in_semigroup(std::int64_t N, std::int64_t p, std::int64_t q) {
  return Semigroup(p, q).contains(N);
}

}  // namespace iep
