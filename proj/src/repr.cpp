#include "iep/repr.hpp"

#include <algorithm>
#include <numeric>

#include "iep/arith.hpp"
#include "iep/error.hpp"

namespace iep {

namespace {

constexpr std::int64_t kProductLimit = std::int64_t{1} << 62;

std::int64_t inverse_or_zero(std::int64_t a, std::int64_t n) {
  return n == 1 ? 0 : mod_inverse(a, n).value;
}

}  // namespace

std::int64_t Triple::product() const { return checked_mul(checked_mul(p, q), r); }

std::int64_t Triple::min() const { return std::min({p, q, r}); }
std::int64_t Triple::max() const { return std::max({p, q, r}); }

Triple Triple::canonical() const {
  auto e = elements();
  std::sort(e.begin(), e.end());
  return {e[0], e[1], e[2]};
}

std::string Triple::str() const {
  return "{" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + "}";
}

void validate(const Triple& t) {
  for (auto e : t.elements()) {
    if (e < 1) throw InvalidTriple("triple " + t.str() + " has an element below 1");
  }
  if (std::gcd(t.p, t.q) != 1 || std::gcd(t.q, t.r) != 1 || std::gcd(t.r, t.p) != 1) {
    throw InvalidTriple("triple " + t.str() + " is not pairwise coprime");
  }
  int small = (t.p < 3) + (t.q < 3) + (t.r < 3);
  if (small > 1) throw InvalidTriple("triple " + t.str() + " has more than one element below 3");
  __int128 prod = static_cast<__int128>(t.p) * t.q * t.r;
  if (prod >= kProductLimit) throw InvalidTriple("triple " + t.str() + ": pqr exceeds 2^62");
}

bool is_valid(const Triple& t) noexcept {
  try {
    validate(t);
    return true;
  } catch (const Error&) {
    return false;
  }
}

Triple with_pivot(const Triple& t, Pivot pivot) {
  switch (pivot) {
    case Pivot::p:
      return {t.q, t.r, t.p};
    case Pivot::q:
      return {t.p, t.r, t.q};
    case Pivot::r:
      break;
  }
  return t;
}

TripleContext::TripleContext(const Triple& t) : t_(t) {
  validate(t);
  pq_ = t.p * t.q;
  qr_ = t.q * t.r;
  rp_ = t.r * t.p;
  pqr_ = pq_ * t.r;
  inv_x_ = inverse_or_zero(qr_, t.p);
  inv_y_ = inverse_or_zero(rp_, t.q);
  inv_z_ = inverse_or_zero(pq_, t.r);
}

Representation TripleContext::decompose(std::int64_t n) const {
  Representation rep;
  rep.x = mul_mod(least_nonneg_residue(n, t_.p).value, inv_x_, t_.p);
  rep.y = mul_mod(least_nonneg_residue(n, t_.q).value, inv_y_, t_.q);
  rep.z = mul_mod(least_nonneg_residue(n, t_.r).value, inv_z_, t_.r);
  __int128 rest = static_cast<__int128>(n) - static_cast<__int128>(rep.x) * qr_ -
                  static_cast<__int128>(rep.y) * rp_ - static_cast<__int128>(rep.z) * pq_;
  // rest is an exact multiple of pqr by construction; the assertion below is
  // the uniqueness self-check.
  if (rest % pqr_ != 0) throw OverflowDetected("decomposition of " + std::to_string(n) + " is inconsistent");
  rep.delta = static_cast<std::int64_t>(rest / pqr_);
  return rep;
}

int TripleContext::chi(std::int64_t n) const {
  if (n < 0) return 0;
  if (n >= pqr_) {
    throw DomainExceeded("chi(" + std::to_string(n) + ") outside n < pqr = " + std::to_string(pqr_));
  }
  std::int64_t x = mul_mod(n, inv_x_, t_.p);
  std::int64_t y = mul_mod(n, inv_y_, t_.q);
  std::int64_t z = mul_mod(n, inv_z_, t_.r);
  // The sum is congruent to n mod pqr and lies in [0, 3pqr); with n < pqr,
  // delta = 0 exactly when the sum does not exceed n.
  __int128 sum = static_cast<__int128>(x) * qr_ + static_cast<__int128>(y) * rp_ +
                 static_cast<__int128>(z) * pq_;
  return sum <= n ? 1 : 0;
}

std::int64_t TripleContext::sigma(std::int64_t k, std::int64_t m) const {
  if (k < 0) throw InvalidParameters("sigma window length must be nonnegative");
  if (m >= pqr_) {
    throw DomainExceeded("sigma window end " + std::to_string(m) + " outside m < pqr = " +
                         std::to_string(pqr_));
  }
  std::int64_t lo = std::max<std::int64_t>(m - k + 1, 0);
  std::int64_t count = 0;
  for (std::int64_t n = lo; n <= m; ++n) count += chi(n);
  return count;
}

Representation decompose(std::int64_t n, const Triple& t) { return TripleContext(t).decompose(n); }

int chi(std::int64_t n, const Triple& t) { return TripleContext(t).chi(n); }

std::int64_t sigma(std::int64_t k, std::int64_t m, const Triple& t) { return TripleContext(t).sigma(k, m); }

FFunction::FFunction(const Triple& t, Pivot pivot) {
  validate(t);
  Triple rel = with_pivot(t, pivot);
  pq_ = rel.p * rel.q;
  r_ = rel.r;
  r_inv_ = inverse_or_zero(rel.r, pq_);
  // N is in <p, q> iff N = 0 or N - p or N - q is.
  in_r_.assign(static_cast<std::size_t>(pq_), 0);
  in_r_[0] = 1;
  for (std::int64_t N = 1; N < pq_; ++N) {
    const bool via_p = N >= rel.p && in_r_[static_cast<std::size_t>(N - rel.p)] != 0;
    const bool via_q = N >= rel.q && in_r_[static_cast<std::size_t>(N - rel.q)] != 0;
    in_r_[static_cast<std::size_t>(N)] = via_p || via_q ? 1 : 0;
  }
}

std::int64_t FFunction::operator()(std::int64_t n) const {
  std::int64_t res = mul_mod(least_nonneg_residue(n, pq_).value, r_inv_, pq_);
  return residue_in_semigroup(res) ? res : res + pq_;
}

std::int64_t f_value(std::int64_t n, const Triple& t, Pivot pivot) {
  validate(t);
  Triple rel = with_pivot(t, pivot);
  std::int64_t pq = rel.p * rel.q;
  std::int64_t res = mul_mod(least_nonneg_residue(n, pq).value, inverse_or_zero(rel.r, pq), pq);
  return in_semigroup(res, rel.p, rel.q) ? res : res + pq;
}

int chi_via_lemma4(std::int64_t n, const Triple& t, Pivot pivot) {
  std::int64_t pqr = t.product();
  if (n < 0 || n >= pqr) {
    throw DomainExceeded("chi_via_lemma4(" + std::to_string(n) + ") outside [0, " +
                         std::to_string(pqr) + ")");
  }
  Triple rel = with_pivot(t, pivot);
  return f_value(n, t, pivot) <= n / rel.r ? 1 : 0;
}

ChiTable::ChiTable(const Triple& t, std::int64_t limit, std::int64_t pad) : limit_(limit), pad_(pad) {
  validate(t);
  if (limit < 0 || pad < 0) throw InvalidParameters("ChiTable bounds must be nonnegative");
  if (limit > t.product()) throw DomainExceeded("ChiTable limit exceeds pqr");
  cells_.assign(static_cast<std::size_t>(limit + pad), 0);
  const std::int64_t qr = t.q * t.r, rp = t.r * t.p, pq = t.p * t.q;
  std::uint8_t* base = cells_.data() + pad;
  for (std::int64_t x = 0; x < t.p && x * qr < limit; ++x) {
    for (std::int64_t y = 0; y < t.q; ++y) {
      std::int64_t xy = x * qr + y * rp;
      if (xy >= limit) break;
      for (std::int64_t n = xy, z = 0; z < t.r && n < limit; ++z, n += pq) base[n] = 1;
    }
  }
}

int ChiTable::at(std::int64_t n) const {
  if (n >= limit_) throw DomainExceeded("ChiTable lookup beyond limit");
  if (n < 0) return 0;
  return (*this)[n];
}

}  // namespace iep
