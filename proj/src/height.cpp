#include "iep/height.hpp"

#include <algorithm>
#include <cstdlib>
#include <span>

#include <nlohmann/json.hpp>

#include "iep/error.hpp"

namespace iep {

namespace {

// Smallest element when it is 1 or 2, else 0.
std::int64_t degenerate_element(const Triple& t) {
  for (auto e : t.elements()) {
    if (e < 3) return e;
  }
  return 0;
}

HeightRecord summarize(const Triple& t, std::span<const std::int64_t> coeffs) {
  HeightRecord rec;
  rec.triple = t;
  auto [lo, hi] = std::minmax_element(coeffs.begin(), coeffs.end());
  rec.a_minus = *lo;
  rec.a_plus = *hi;
  rec.literal_max = std::max(std::abs(rec.a_minus), std::abs(rec.a_plus));
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(rec.a_plus - rec.a_minus + 1), 0);
  for (auto c : coeffs) seen[static_cast<std::size_t>(c - rec.a_minus)] = 1;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i] != 0) rec.coeff_set.push_back(rec.a_minus + static_cast<std::int64_t>(i));
  }
  rec.flat = rec.a_minus >= -1 && rec.a_plus <= 1;
  const std::int64_t s = degenerate_element(t);
  rec.height = s != 0 ? s - 1 : rec.literal_max;
  return rec;
}

}  // namespace

HeightRecord height_of(const CoefficientVector& v) { return summarize(v.triple, v.coeffs); }

HeightRecord height(const Triple& t, const EngineLimits& limits) {
  const std::int64_t deg = degree(t);
  if (deg > limits.degree_cap) throw DegreeCapExceeded(deg, limits.degree_cap);
  // Reciprocity makes the lower half carry every value.
  const auto half = series_prefix(t, deg / 2 + 1);
  return summarize(t, half);
}

std::vector<std::int64_t> coefficient_set(const Triple& t, const EngineLimits& limits) {
  validate(t);
  if (!t.ternary()) throw InvalidTriple("coefficient_set needs all elements >= 3, got " + t.str());
  auto rec = height(t, limits);
  if (static_cast<std::int64_t>(rec.coeff_set.size()) != rec.a_plus - rec.a_minus + 1) {
    throw NotConsecutive("coefficient set of Q" + t.str() + " has gaps between " + std::to_string(rec.a_minus) +
                         " and " + std::to_string(rec.a_plus));
  }
  return rec.coeff_set;
}

bool is_flat(const Triple& t, const EngineLimits& limits) { return height(t, limits).flat; }

void check_invariants(const HeightRecord& rec) {
  auto fail = [&](const std::string& what) { throw Error("height record " + rec.triple.str() + ": " + what); };
  if (rec.literal_max != std::max(std::abs(rec.a_minus), std::abs(rec.a_plus))) {
    fail("literal_max differs from max(|a_minus|, a_plus)");
  }
  const bool flat_by_set = std::all_of(rec.coeff_set.begin(), rec.coeff_set.end(),
                                       [](std::int64_t c) { return c >= -1 && c <= 1; });
  if (rec.flat != flat_by_set) fail("flat flag disagrees with the coefficient set");
  if (rec.coeff_set.empty() || rec.coeff_set.front() != rec.a_minus || rec.coeff_set.back() != rec.a_plus) {
    fail("coefficient set does not span [a_minus, a_plus]");
  }
  const std::int64_t s = degenerate_element(rec.triple);
  if (s != 0) {
    if (rec.height != s - 1) fail("height ignores the s - 1 convention");
    return;
  }
  if (rec.height != rec.literal_max) fail("height differs from literal_max");
  if (!(rec.a_minus <= 0 && rec.a_plus >= 1)) fail("expected a_minus <= 0 < 1 <= a_plus");
  if (static_cast<std::int64_t>(rec.coeff_set.size()) != rec.a_plus - rec.a_minus + 1) {
    fail("coefficient set is not consecutive");
  }
}

std::string to_json_line(const HeightRecord& rec) {
  nlohmann::ordered_json j;
  j["p"] = rec.triple.p;
  j["q"] = rec.triple.q;
  j["r"] = rec.triple.r;
  j["a_minus"] = rec.a_minus;
  j["a_plus"] = rec.a_plus;
  j["height"] = rec.height;
  j["literal_max"] = rec.literal_max;
  j["flat"] = rec.flat;
  return j.dump();
}

HeightRecord height_from_json_line(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
    HeightRecord rec;
    rec.triple = {j.at("p").get<std::int64_t>(), j.at("q").get<std::int64_t>(), j.at("r").get<std::int64_t>()};
    rec.a_minus = j.at("a_minus").get<std::int64_t>();
    rec.a_plus = j.at("a_plus").get<std::int64_t>();
    rec.height = j.at("height").get<std::int64_t>();
    rec.literal_max = j.at("literal_max").get<std::int64_t>();
    rec.flat = j.at("flat").get<bool>();
    for (std::int64_t c = rec.a_minus; c <= rec.a_plus; ++c) rec.coeff_set.push_back(c);
    return rec;
  } catch (const nlohmann::json::exception& e) {
    throw PersistenceError(std::string("malformed height record: ") + e.what());
  }
}

}  // namespace iep
