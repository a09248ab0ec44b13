#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "iep/repr.hpp"

namespace iep {

enum class EngineId : std::uint32_t { series = 0, chi = 1 };

std::string_view engine_name(EngineId id);
EngineId parse_engine(std::string_view name);

enum class SeriesMode { full, half };

/// Default cap on the polynomial degree: IEP_DEGREE_CAP from the
/// environment when set, otherwise 2e7.
std::int64_t default_degree_cap();

struct EngineLimits {
  std::int64_t degree_cap = default_degree_cap();
};

/// Dense coefficient array of Q_{p,q,r}, indices 0..degree.
struct CoefficientVector {
  Triple triple;
  std::int64_t degree = 0;
  EngineId engine = EngineId::series;
  std::vector<std::int64_t> coeffs;

  std::int64_t operator[](std::int64_t m) const { return coeffs[static_cast<std::size_t>(m)]; }
  /// a_m with the extended-range convention (0 outside [0, degree]).
  std::int64_t at(std::int64_t m) const { return m < 0 || m > degree ? 0 : (*this)[m]; }
};

/// (p-1)(q-1)(r-1).
std::int64_t degree(const Triple& t);

/// First `length` coefficients of the power series of
///
///   (1 - z^pqr)(1 - z^p)(1 - z^q)(1 - z^r)
///   --------------------------------------
///   (1 - z)(1 - z^pq)(1 - z^qr)(1 - z^rp)
///
/// by strided in-place updates. Numerator factors are applied first, then the
/// denominators in the order listed. Throws OverflowDetected if an update
/// leaves signed 64-bit range.
std::vector<std::int64_t> series_prefix(const Triple& t, std::int64_t length);

/// Series engine. Half mode computes indices 0..degree/2 and mirrors the
/// rest through a_m = a_{degree-m}.
CoefficientVector coeffs_series(const Triple& t, SeriesMode mode = SeriesMode::full,
                                const EngineLimits& limits = {});

/// Representation engine: a_m as the window sum over (m - w, m] of
/// chi(n) - chi(n-u) - chi(n-v) + chi(n-u-v), where w is the smallest element
/// and u, v are the other two. Ternary triples only.
CoefficientVector coeffs_chi(const Triple& t, const EngineLimits& limits = {});

/// a_m from four window sums of chi with the given element as window length:
///   sigma_w(m) - sigma_w(m-u) - sigma_w(m-v) + sigma_w(m-u-v).
/// Valid for -pqr < m < pqr; yields 0 outside [0, degree].
std::int64_t coefficient_via_windows(const TripleContext& ctx, std::int64_t m, Pivot window);

/// Single coefficient using the smallest element as window. Ternary only.
std::int64_t coefficient_at(const Triple& t, std::int64_t m);

// --- serialization --------------------------------------------------------

enum class CoeffFormat { text, csv, json, bin };

CoeffFormat parse_coeff_format(std::string_view name);

inline constexpr std::uint32_t kCoeffFormatVersion = 1;

/// Versioned record: header (p, q, r, degree, engine) then the coefficients.
///
/// Binary layout, all fields little-endian:
///   "IEPC" | u32 version | i64 p | i64 q | i64 r | i64 degree |
///   u32 engine | u32 reserved (0) | i64 coeffs[degree + 1]
void write_coefficients(std::ostream& out, const CoefficientVector& v, CoeffFormat format);

CoefficientVector read_coefficients_binary(std::istream& in);
CoefficientVector read_coefficients_csv(std::istream& in);

}  // namespace iep
