#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iep/poly.hpp"

namespace iep {

/// Coefficient statistics of Q_{p,q,r}.
///
/// `height` follows the convention A(p,q,s) = s - 1 when the triple has an
/// element s in {1, 2}; `literal_max` is always max_m |a_m| as computed. The
/// two only differ for triples of the form {p, q, 1}.
struct HeightRecord {
  Triple triple;
  std::int64_t a_minus = 0;
  std::int64_t a_plus = 0;
  std::int64_t height = 0;
  std::int64_t literal_max = 0;
  bool flat = false;
  std::vector<std::int64_t> coeff_set;

  friend bool operator==(const HeightRecord&, const HeightRecord&) = default;
};

/// Statistics of an already computed vector (applies the s <= 2 convention).
HeightRecord height_of(const CoefficientVector& v);

/// Computes the half vector with the series engine and summarizes it.
HeightRecord height(const Triple& t, const EngineLimits& limits = {});

/// Distinct coefficients, ascending. Ternary triples only; throws
/// NotConsecutive if the values do not form a run [A^-, A^+].
std::vector<std::int64_t> coefficient_set(const Triple& t, const EngineLimits& limits = {});

bool is_flat(const Triple& t, const EngineLimits& limits = {});

/// Throws Error describing the first broken record invariant.
void check_invariants(const HeightRecord& rec);

/// One-line JSON object with the fixed key order
/// p, q, r, a_minus, a_plus, height, literal_max, flat.
std::string to_json_line(const HeightRecord& rec);

/// Parses the fields written by to_json_line. coeff_set is rebuilt as the
/// run [a_minus, a_plus].
HeightRecord height_from_json_line(const std::string& line);

}  // namespace iep
