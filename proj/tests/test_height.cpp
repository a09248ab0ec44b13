#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "iep/error.hpp"
#include "iep/height.hpp"

namespace {

using namespace iep;

TEST(Height, Examples) {
  EXPECT_EQ(height({5, 7, 3}).height, 2);
  EXPECT_EQ(height({11, 13, 4}).height, 3);
  const auto one = height({5, 7, 1});
  EXPECT_EQ(one.height, 0);
  EXPECT_EQ(one.literal_max, 1);
  EXPECT_TRUE(one.flat);
}

TEST(Height, TwoConvention) {
  // A(p, q, 2) = 1 whatever the literal maximum is.
  for (const Triple t : {Triple{3, 5, 2}, Triple{7, 9, 2}, Triple{11, 13, 2}}) {
    const auto rec = height(t);
    EXPECT_EQ(rec.height, 1) << t.str();
    EXPECT_NO_THROW(check_invariants(rec));
  }
}

TEST(Height, MatchesFullVector) {
  for (const Triple t : {Triple{3, 5, 7}, Triple{7, 11, 13}, Triple{13, 43, 564}, Triple{9, 10, 11}}) {
    const auto v = coeffs_series(t);
    const auto via_half = height(t);
    const auto via_full = height_of(v);
    EXPECT_EQ(via_half, via_full) << t.str();
    EXPECT_NO_THROW(check_invariants(via_half));
  }
}

TEST(Height, PermutationInvariant) {
  const auto ref = height({7, 11, 13});
  for (const Triple t : {Triple{7, 13, 11}, Triple{11, 7, 13}, Triple{11, 13, 7}, Triple{13, 7, 11}, Triple{13, 11, 7}}) {
    auto rec = height(t);
    rec.triple = ref.triple;
    EXPECT_EQ(rec, ref);
  }
}

TEST(CoefficientSet, Examples) {
  const auto flat = coefficient_set({3, 5, 16});
  EXPECT_EQ(flat, (std::vector<std::int64_t>{-1, 0, 1}));
  const auto s357 = coefficient_set({3, 5, 7});
  EXPECT_EQ(s357.front(), -2);
  EXPECT_EQ(s357, (std::vector<std::int64_t>{-2, -1, 0, 1}));
  const auto s345 = coefficient_set({3, 4, 5});
  for (std::size_t i = 1; i < s345.size(); ++i) EXPECT_EQ(s345[i], s345[i - 1] + 1);
  EXPECT_THROW(coefficient_set({3, 5, 1}), InvalidTriple);
}

TEST(IsFlat, Examples) {
  EXPECT_TRUE(is_flat({3, 5, 16}));
  EXPECT_FALSE(is_flat({3, 5, 7}));
  EXPECT_TRUE(is_flat({3, 5, 1}));
}

TEST(IsFlat, ResidueClassesPlusMinusOne) {
  for (std::int64_t p = 3; p <= 12; ++p) {
    for (std::int64_t q = p + 1; q <= 12; ++q) {
      for (std::int64_t k = 1; k <= 2; ++k) {
        for (std::int64_t r : {k * p * q - 1, k * p * q + 1}) {
          const Triple t{p, q, r};
          if (!is_valid(t)) continue;
          EXPECT_TRUE(is_flat(t)) << t.str();
        }
      }
    }
  }
}

TEST(Height, BoundByQuarterOfSmallest) {
  for (std::int64_t p = 3; p <= 13; ++p) {
    for (std::int64_t q = p + 1; q <= 17; ++q) {
      for (std::int64_t r = q + 1; r <= 40; ++r) {
        const Triple t{p, q, r};
        if (!is_valid(t)) continue;
        const auto rec = height(t);
        ASSERT_NO_THROW(check_invariants(rec));
        const std::int64_t m = t.min();
        ASSERT_LE(rec.height, m - (m + 3) / 4) << t.str();
      }
    }
  }
}

TEST(CheckInvariants, RejectsBrokenRecords) {
  auto rec = height({3, 5, 7});
  auto bad = rec;
  bad.flat = true;
  EXPECT_THROW(check_invariants(bad), Error);
  bad = rec;
  bad.literal_max = 5;
  EXPECT_THROW(check_invariants(bad), Error);
  bad = rec;
  bad.coeff_set = {-2, 0, 1};
  EXPECT_THROW(check_invariants(bad), Error);
  bad = height({3, 5, 1});
  bad.height = 1;
  EXPECT_THROW(check_invariants(bad), Error);
}

TEST(JsonLine, FixedKeyOrderAndRoundTrip) {
  const auto rec = height({5, 7, 3});
  const std::string line = to_json_line(rec);
  EXPECT_EQ(line, R"({"p":5,"q":7,"r":3,"a_minus":-2,"a_plus":1,"height":2,"literal_max":2,"flat":false})");
  EXPECT_EQ(height_from_json_line(line), rec);
  EXPECT_THROW(height_from_json_line("{\"p\":5}"), PersistenceError);
  EXPECT_THROW(height_from_json_line("not json"), PersistenceError);
}

}  // namespace
