#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "iep/error.hpp"
#include "iep/poly.hpp"

namespace {

using namespace iep;
using Poly = std::vector<std::int64_t>;

std::vector<std::int64_t> read_golden(const std::string& name) {
  std::ifstream in(std::string(IEP_GOLDEN_DIR) + "/" + name);
  EXPECT_TRUE(in) << name;
  std::vector<std::int64_t> out;
  for (std::int64_t v = 0; in >> v;) out.push_back(v);
  return out;
}

Poly binomial(std::int64_t d) {  // z^d - 1
  Poly b(static_cast<std::size_t>(d + 1), 0);
  b[0] = -1;
  b[static_cast<std::size_t>(d)] += 1;
  return b;
}

Poly times(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Schoolbook division from the leading term down; every divisor is monic.
Poly long_divide(Poly num, const Poly& den) {
  const std::size_t dn = den.size() - 1;
  Poly quo(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    const std::int64_t c = num[k];
    quo[k - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
  }
  for (std::size_t i = 0; i < dn; ++i) EXPECT_EQ(num[i], 0) << "nonzero remainder";
  return quo;
}

Poly long_division_oracle(const Triple& t) {
  const auto [p, q, r] = t.elements();
  Poly num = times(times(times(binomial(p * q * r), binomial(p)), binomial(q)), binomial(r));
  Poly den = times(times(times(binomial(p * q), binomial(q * r)), binomial(r * p)), binomial(1));
  return long_divide(num, den);
}

TEST(Degree, Examples) {
  EXPECT_EQ(degree({3, 5, 1}), 0);
  EXPECT_EQ(degree({3, 5, 7}), 48);
  EXPECT_EQ(degree({13, 43, 564}), 283752);
  EXPECT_THROW(degree({3, 5, 6}), InvalidTriple);
}

TEST(Series, GoldenVectors) {
  for (const auto& [t, file] : std::vector<std::pair<Triple, std::string>>{{{3, 5, 7}, "q_3_5_7.txt"},
                                                                           {{3, 5, 8}, "q_3_5_8.txt"},
                                                                           {{3, 4, 5}, "q_3_4_5.txt"},
                                                                           {{5, 7, 3}, "q_5_7_3.txt"},
                                                                           {{3, 5, 16}, "q_3_5_16.txt"}}) {
    EXPECT_EQ(coeffs_series(t).coeffs, read_golden(file)) << t.str();
    EXPECT_EQ(coeffs_chi(t).coeffs, read_golden(file)) << t.str();
  }
}

TEST(Series, Example357) {
  const auto v = coeffs_series({3, 5, 7});
  EXPECT_EQ(v.degree, 48);
  EXPECT_EQ(v[0], 1);
  EXPECT_EQ(v[48], 1);
  EXPECT_EQ(*std::min_element(v.coeffs.begin(), v.coeffs.end()), -2);
}

TEST(Series, DegenerateTriplesAreOne) {
  for (const Triple t : {Triple{3, 5, 1}, Triple{1, 7, 9}, Triple{11, 1, 13}}) {
    const auto v = coeffs_series(t);
    EXPECT_EQ(v.degree, 0);
    EXPECT_EQ(v.coeffs, Poly{1});
  }
}

TEST(Series, MatchesLongDivision) {
  for (std::int64_t p = 2; p <= 7; ++p) {
    for (std::int64_t q = p + 1; q <= 9; ++q) {
      for (std::int64_t r = q + 1; r <= 13; ++r) {
        const Triple t{p, q, r};
        if (!is_valid(t)) continue;
        ASSERT_EQ(coeffs_series(t).coeffs, long_division_oracle(t)) << t.str();
      }
    }
  }
}

TEST(Series, HalfModeMatchesFull) {
  for (const Triple t : {Triple{3, 5, 7}, Triple{7, 11, 13}, Triple{4, 9, 35}, Triple{2, 5, 7}, Triple{5, 6, 7}}) {
    EXPECT_EQ(coeffs_series(t, SeriesMode::half).coeffs, coeffs_series(t).coeffs) << t.str();
  }
}

TEST(Series, PermutationInvariant) {
  for (Triple t : {Triple{3, 5, 7}, Triple{5, 8, 9}, Triple{7, 11, 20}}) {
    const auto ref = coeffs_series(t).coeffs;
    auto e = t.elements();
    std::sort(e.begin(), e.end());
    do {
      EXPECT_EQ(coeffs_series({e[0], e[1], e[2]}).coeffs, ref);
    } while (std::next_permutation(e.begin(), e.end()));
  }
}

TEST(Series, DegreeCap) {
  EngineLimits limits;
  limits.degree_cap = 47;
  EXPECT_THROW(coeffs_series({3, 5, 7}, SeriesMode::full, limits), DegreeCapExceeded);
  EXPECT_THROW(coeffs_chi({3, 5, 7}, limits), DegreeCapExceeded);
  limits.degree_cap = 48;
  EXPECT_NO_THROW(coeffs_series({3, 5, 7}, SeriesMode::full, limits));
}

TEST(SeriesPrefix, TruncatesTheSeries) {
  const auto full = coeffs_series({3, 5, 7}).coeffs;
  const auto prefix = series_prefix({3, 5, 7}, 20);
  ASSERT_EQ(prefix.size(), 20u);
  EXPECT_TRUE(std::equal(prefix.begin(), prefix.end(), full.begin()));
  // Beyond the degree the series is zero.
  const auto longer = series_prefix({3, 5, 7}, 120);
  EXPECT_TRUE(std::all_of(longer.begin() + 49, longer.end(), [](auto c) { return c == 0; }));
}

TEST(Chi, NeedsTernary) { EXPECT_THROW(coeffs_chi({2, 5, 7}), InvalidTriple); }

TEST(Chi, Example358HasNegatedSet) {
  const auto a = coeffs_chi({3, 5, 7}).coeffs, b = coeffs_chi({3, 5, 8}).coeffs;
  std::vector<std::int64_t> sa(a), sb(b);
  std::sort(sa.begin(), sa.end());
  sa.erase(std::unique(sa.begin(), sa.end()), sa.end());
  std::sort(sb.begin(), sb.end());
  sb.erase(std::unique(sb.begin(), sb.end()), sb.end());
  std::vector<std::int64_t> neg;
  for (auto it = sa.rbegin(); it != sa.rend(); ++it) neg.push_back(-*it);
  EXPECT_EQ(sb, neg);
}

TEST(Engines, AgreeOnEveryTripleUpTo25) {
  for (std::int64_t p = 3; p <= 25; ++p) {
    for (std::int64_t q = p + 1; q <= 25; ++q) {
      for (std::int64_t r = q + 1; r <= 25; ++r) {
        const Triple t{p, q, r};
        if (!is_valid(t)) continue;
        const auto v = coeffs_series(t);
        ASSERT_EQ(v.coeffs, coeffs_chi(t).coeffs) << t.str();
        std::int64_t sum = 0;
        for (std::int64_t m = 0; m <= v.degree; ++m) {
          ASSERT_EQ(v[m], v[v.degree - m]);
          sum += v[m];
        }
        ASSERT_EQ(sum, 1);
      }
    }
  }
}

TEST(CoefficientAt, Examples) {
  EXPECT_EQ(coefficient_at({3, 5, 7}, 0), 1);
  EXPECT_EQ(coefficient_at({3, 5, 7}, 48), 1);
  EXPECT_EQ(coefficient_at({3, 5, 7}, -3), 0);
  EXPECT_EQ(coefficient_at({3, 5, 7}, 60), 0);
  EXPECT_THROW(coefficient_at({3, 5, 7}, 105), DomainExceeded);
}

TEST(CoefficientAt, MatchesChiEngineAndEveryWindow) {
  std::mt19937_64 rng(3);
  for (const Triple t : {Triple{7, 11, 13}, Triple{11, 13, 147}, Triple{9, 10, 91}}) {
    const auto v = coeffs_chi(t);
    const TripleContext ctx(t);
    std::uniform_int_distribution<std::int64_t> pick(-50, v.degree + 50);
    for (int i = 0; i < 300; ++i) {
      const std::int64_t m = pick(rng);
      ASSERT_EQ(coefficient_at(t, m), v.at(m)) << t.str() << " m=" << m;
      for (Pivot w : kAllPivots) ASSERT_EQ(coefficient_via_windows(ctx, m, w), v.at(m));
    }
  }
}

TEST(Serialization, BinaryRoundTrip) {
  const auto v = coeffs_series({7, 11, 13});
  std::stringstream ss;
  write_coefficients(ss, v, CoeffFormat::bin);
  const std::string bytes = ss.str();
  ASSERT_EQ(bytes.size(), 4 + 4 + 4 * 8 + 4 + 4 + 8 * v.coeffs.size());
  EXPECT_EQ(bytes.substr(0, 4), "IEPC");
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 1);
  const auto back = read_coefficients_binary(ss);
  EXPECT_EQ(back.triple, v.triple);
  EXPECT_EQ(back.degree, v.degree);
  EXPECT_EQ(back.engine, EngineId::series);
  EXPECT_EQ(back.coeffs, v.coeffs);
}

TEST(Serialization, BinaryRejectsCorruption) {
  std::stringstream bad("XXXX");
  EXPECT_THROW(read_coefficients_binary(bad), PersistenceError);
  std::stringstream ss;
  write_coefficients(ss, coeffs_series({3, 5, 7}), CoeffFormat::bin);
  std::string cut = ss.str();
  cut.resize(cut.size() - 3);
  std::stringstream truncated(cut);
  EXPECT_THROW(read_coefficients_binary(truncated), PersistenceError);
}

TEST(Serialization, CsvRoundTrip) {
  const auto v = coeffs_chi({3, 5, 7});
  std::stringstream ss;
  write_coefficients(ss, v, CoeffFormat::csv);
  const auto back = read_coefficients_csv(ss);
  EXPECT_EQ(back.coeffs, v.coeffs);
  EXPECT_EQ(back.engine, EngineId::chi);
  std::stringstream bad("# iep-coefficients v1 p=3 q=5 r=7 degree=48 engine=series\nindex,coefficient\n0,1\n");
  EXPECT_THROW(read_coefficients_csv(bad), PersistenceError);
}

TEST(Serialization, JsonShape) {
  std::stringstream ss;
  write_coefficients(ss, coeffs_series({3, 4, 5}), CoeffFormat::json);
  const auto j = nlohmann::json::parse(ss.str());
  EXPECT_EQ(j["version"], 1);
  EXPECT_EQ(j["degree"], 24);
  EXPECT_EQ(j["engine"], "series");
  EXPECT_EQ(j["coeffs"].get<std::vector<std::int64_t>>(), read_golden("q_3_4_5.txt"));
}

}  // namespace
