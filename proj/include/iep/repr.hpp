#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace iep {

/// Parameter set {p, q, r} of an inclusion-exclusion polynomial. Roles are
/// symmetric; the elements are stored in the order given.
struct Triple {
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::int64_t r = 0;

  std::array<std::int64_t, 3> elements() const { return {p, q, r}; }
  std::int64_t product() const;  // pqr, overflow-checked
  std::int64_t min() const;
  std::int64_t max() const;
  /// All three elements >= 3.
  bool ternary() const { return p >= 3 && q >= 3 && r >= 3; }
  /// Same set, sorted ascending.
  Triple canonical() const;
  std::string str() const;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// Throws InvalidTriple unless the elements are >= 1, pairwise coprime, at
/// most one of them is below 3, and pqr fits comfortably in 62 bits.
void validate(const Triple& t);

/// Non-throwing form of validate.
bool is_valid(const Triple& t) noexcept;

/// Names which stored element plays the role of r; the other two play p, q
/// in stored order.
enum class Pivot { p, q, r };

inline constexpr std::array<Pivot, 3> kAllPivots{Pivot::p, Pivot::q, Pivot::r};

/// The triple relabelled so that the pivot element sits in the r slot.
Triple with_pivot(const Triple& t, Pivot pivot);

/// n = x*qr + y*rp + z*pq + delta*pqr with 0 <= x < p, 0 <= y < q, 0 <= z < r.
struct Representation {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;
  std::int64_t delta = 0;

  friend bool operator==(const Representation&, const Representation&) = default;
};

/// Validated triple plus the cached inverses (qr)^{-1} mod p, (rp)^{-1} mod q,
/// (pq)^{-1} mod r. Immutable after construction.
class TripleContext {
 public:
  explicit TripleContext(const Triple& t);

  const Triple& triple() const noexcept { return t_; }
  std::int64_t pq() const noexcept { return pq_; }
  std::int64_t qr() const noexcept { return qr_; }
  std::int64_t rp() const noexcept { return rp_; }
  std::int64_t pqr() const noexcept { return pqr_; }

  Representation decompose(std::int64_t n) const;

  /// Indicator of representable integers; 0 for n < 0, DomainExceeded for
  /// n >= pqr.
  int chi(std::int64_t n) const;

  /// Count of representable integers in the window (m - k, m].
  std::int64_t sigma(std::int64_t k, std::int64_t m) const;

 private:
  Triple t_;
  std::int64_t pq_, qr_, rp_, pqr_;
  std::int64_t inv_x_, inv_y_, inv_z_;
};

Representation decompose(std::int64_t n, const Triple& t);
int chi(std::int64_t n, const Triple& t);
std::int64_t sigma(std::int64_t k, std::int64_t m, const Triple& t);

/// f(n) = x_n*q + y_n*p with the pivot in the r role. Evaluated through the
/// residue [n r^*]_{pq}, lifted by pq when it falls outside the semigroup
/// generated by p and q.
std::int64_t f_value(std::int64_t n, const Triple& t, Pivot pivot);

/// chi(n) recomputed as [f(n) <= floor(n / r)] with the pivot in the r role.
/// Requires 0 <= n < pqr.
int chi_via_lemma4(std::int64_t n, const Triple& t, Pivot pivot);

/// Precomputed f for one pivot; f_value without per-call setup.
class FFunction {
 public:
  FFunction(const Triple& t, Pivot pivot);

  std::int64_t operator()(std::int64_t n) const;
  std::int64_t modulus() const noexcept { return pq_; }
  std::int64_t pivot_value() const noexcept { return r_; }
  /// r^* mod pq.
  std::int64_t pivot_inverse() const noexcept { return r_inv_; }
  /// Semigroup membership for residues in [0, pq).
  bool residue_in_semigroup(std::int64_t N) const { return in_r_[static_cast<std::size_t>(N)] != 0; }

 private:
  std::int64_t pq_;
  std::int64_t r_;
  std::int64_t r_inv_;
  std::vector<std::uint8_t> in_r_;
};

/// chi tabulated over [-pad, limit) by enumerating x*qr + y*rp + z*pq < limit.
/// limit must not exceed pqr.
class ChiTable {
 public:
  ChiTable(const Triple& t, std::int64_t limit, std::int64_t pad = 0);

  std::int64_t limit() const noexcept { return limit_; }
  std::int64_t pad() const noexcept { return pad_; }

  /// Unchecked for n in [-pad, limit).
  std::uint8_t operator[](std::int64_t n) const { return cells_[static_cast<std::size_t>(n + pad_)]; }
  /// Pointer to the cell for n = 0; valid offsets are [-pad, limit).
  const std::uint8_t* origin() const noexcept { return cells_.data() + pad_; }
  /// 0 below the table; DomainExceeded at or above the limit.
  int at(std::int64_t n) const;

  /// Values for [0, limit).
  std::span<const std::uint8_t> values() const {
    return std::span<const std::uint8_t>(cells_).subspan(static_cast<std::size_t>(pad_));
  }

 private:
  std::int64_t limit_;
  std::int64_t pad_;
  std::vector<std::uint8_t> cells_;
};

}  // namespace iep
