#include "iep/poly.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "iep/arith.hpp"
#include "iep/error.hpp"

namespace iep {

namespace {

constexpr std::int64_t kDefaultDegreeCap = 20'000'000;

// c <- c * (1 - z^a) mod z^N, where c[i] = 0 for i >= support.
void multiply_binomial(std::vector<std::int64_t>& c, std::int64_t a, std::int64_t support) {
  const auto n = std::min(static_cast<std::int64_t>(c.size()), support + a);
  bool overflow = false;
  for (std::int64_t i = n - 1; i >= a; --i) {
    overflow |= __builtin_sub_overflow(c[i], c[i - a], &c[i]);
  }
  if (overflow) throw OverflowDetected("series engine overflow multiplying by (1 - z^" + std::to_string(a) + ")");
}

// c <- c / (1 - z^b) mod z^N; ascending order so c[i - b] is already final.
void divide_binomial(std::vector<std::int64_t>& c, std::int64_t b) {
  const auto n = static_cast<std::int64_t>(c.size());
  bool overflow = false;
  for (std::int64_t i = b; i < n; ++i) {
    overflow |= __builtin_add_overflow(c[i], c[i - b], &c[i]);
  }
  if (overflow) throw OverflowDetected("series engine overflow dividing by (1 - z^" + std::to_string(b) + ")");
}

void check_cap(std::int64_t deg, const EngineLimits& limits) {
  if (deg > limits.degree_cap) throw DegreeCapExceeded(deg, limits.degree_cap);
}

}  // namespace

std::string_view engine_name(EngineId id) { return id == EngineId::series ? "series" : "chi"; }

EngineId parse_engine(std::string_view name) {
  if (name == "series") return EngineId::series;
  if (name == "chi") return EngineId::chi;
  throw InvalidParameters("unknown engine '" + std::string(name) + "'");
}

std::int64_t default_degree_cap() {
  if (const char* env = std::getenv("IEP_DEGREE_CAP"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != nullptr && *end == '\0' && v > 0) return v;
  }
  return kDefaultDegreeCap;
}

std::int64_t degree(const Triple& t) {
  validate(t);
  return checked_mul(checked_mul(t.p - 1, t.q - 1), t.r - 1);
}

std::vector<std::int64_t> series_prefix(const Triple& t, std::int64_t length) {
  validate(t);
  if (length < 0) throw InvalidParameters("negative series length");
  std::vector<std::int64_t> c(static_cast<std::size_t>(length), 0);
  if (length == 0) return c;
  c[0] = 1;
  const std::int64_t pq = t.p * t.q, qr = t.q * t.r, rp = t.r * t.p;
  // The numerator is sparse, so each multiplication only touches the
  // current support.
  std::int64_t support = 1;
  for (std::int64_t a : {pq * t.r, t.p, t.q, t.r}) {
    if (a >= length) continue;
    multiply_binomial(c, a, support);
    support += a;
  }
  for (std::int64_t b : {std::int64_t{1}, pq, qr, rp}) {
    if (b < length) divide_binomial(c, b);
  }
  return c;
}

CoefficientVector coeffs_series(const Triple& t, SeriesMode mode, const EngineLimits& limits) {
  CoefficientVector v;
  v.triple = t;
  v.degree = degree(t);
  v.engine = EngineId::series;
  check_cap(v.degree, limits);
  if (mode == SeriesMode::full) {
    v.coeffs = series_prefix(t, v.degree + 1);
    return v;
  }
  const std::int64_t half = v.degree / 2;
  v.coeffs = series_prefix(t, half + 1);
  v.coeffs.resize(static_cast<std::size_t>(v.degree + 1));
  for (std::int64_t m = half + 1; m <= v.degree; ++m) {
    v.coeffs[static_cast<std::size_t>(m)] = v.coeffs[static_cast<std::size_t>(v.degree - m)];
  }
  return v;
}

CoefficientVector coeffs_chi(const Triple& t, const EngineLimits& limits) {
  validate(t);
  if (!t.ternary()) throw InvalidTriple("chi engine needs all elements >= 3, got " + t.str());
  CoefficientVector v;
  v.triple = t;
  v.degree = degree(t);
  v.engine = EngineId::chi;
  check_cap(v.degree, limits);

  auto e = t.elements();
  std::sort(e.begin(), e.end());
  const std::int64_t w = e[0], u = e[1], vv = e[2];
  const std::int64_t len = v.degree + 1;
  const ChiTable chi(t, len, w + u + vv);

  auto g = [&](std::int64_t n) -> std::int64_t {
    return std::int64_t{chi[n]} - chi[n - u] - chi[n - vv] + chi[n - u - vv];
  };

  // Sliding window over (m - w, m] of the inclusion-exclusion terms g(n).
  v.coeffs.resize(static_cast<std::size_t>(len));
  std::int64_t window = 0;
  for (std::int64_t m = 0; m < len; ++m) {
    window += g(m) - g(m - w);
    v.coeffs[static_cast<std::size_t>(m)] = window;
  }
  return v;
}

std::int64_t coefficient_via_windows(const TripleContext& ctx, std::int64_t m, Pivot window) {
  const Triple rel = with_pivot(ctx.triple(), window);
  const std::int64_t w = rel.r, u = rel.p, v = rel.q;
  const std::int64_t pqr = ctx.pqr();
  if (m <= -pqr || m >= pqr) {
    throw DomainExceeded("coefficient index " + std::to_string(m) + " outside (-pqr, pqr)");
  }
  return ctx.sigma(w, m) - ctx.sigma(w, m - u) - ctx.sigma(w, m - v) + ctx.sigma(w, m - u - v);
}

std::int64_t coefficient_at(const Triple& t, std::int64_t m) {
  const TripleContext ctx(t);
  if (!t.ternary()) throw InvalidTriple("coefficient_at needs all elements >= 3, got " + t.str());
  Pivot smallest = Pivot::r;
  if (t.p <= t.q && t.p <= t.r) {
    smallest = Pivot::p;
  } else if (t.q <= t.r) {
    smallest = Pivot::q;
  }
  return coefficient_via_windows(ctx, m, smallest);
}

}  // namespace iep
