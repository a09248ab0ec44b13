#include <gtest/gtest.h>

#include <algorithm>

#include "iep/error.hpp"
#include "iep/theorems.hpp"

namespace {

using namespace iep;

TEST(Eq15, Examples) {
  const auto a = verify_eq_1_5(3, 5, 17, 32);
  EXPECT_TRUE(a.passed);
  EXPECT_EQ(a.values["A_r"], 2);
  EXPECT_EQ(a.values["A_s"], 2);
  const auto b = verify_eq_1_5(3, 5, 16, 31);
  EXPECT_TRUE(b.passed);
  EXPECT_EQ(b.values["A_r"], 1);
  EXPECT_THROW(verify_eq_1_5(3, 5, 17, 16), PreconditionViolated);
  EXPECT_THROW(verify_eq_1_5(3, 5, 4, 19), PreconditionViolated);  // r below max(p, q)
}

TEST(Eq16, Examples) {
  const auto same = verify_eq_1_6(3, 5, 7, 22);
  EXPECT_TRUE(same.passed);
  EXPECT_EQ(same.values["relation"], "same");
  const auto opp = verify_eq_1_6(3, 5, 8, 7);
  EXPECT_TRUE(opp.passed);
  EXPECT_EQ(opp.values["relation"], "opposite");
  EXPECT_THROW(verify_eq_1_6(3, 5, 7, 8, SignRelation::same), PreconditionViolated);
  EXPECT_THROW(verify_eq_1_6(3, 5, 7, 22, SignRelation::opposite), PreconditionViolated);
  EXPECT_TRUE(verify_eq_1_6(3, 5, 8, 7, SignRelation::opposite).passed);
}

TEST(MainTheorem, Examples) {
  const auto a = verify_main_theorem(3, 5, 1, 16);
  EXPECT_TRUE(a.passed);
  EXPECT_EQ(a.values["A_s"], 0);
  EXPECT_EQ(a.values["A_r"], 1);
  EXPECT_EQ(a.values["attained"], "upper");
  const auto b = verify_main_theorem(3, 5, 2, 17);
  EXPECT_TRUE(b.passed);
  EXPECT_EQ(b.values["A_r"], 2);
  EXPECT_EQ(b.values["attained"], "upper");
  const auto c = verify_main_theorem(5, 7, 3, 38);
  EXPECT_TRUE(c.passed);
  const std::int64_t a38 = c.values["A_r"];
  EXPECT_TRUE(a38 == 2 || a38 == 3);
  EXPECT_THROW(verify_main_theorem(3, 5, 7, 22), PreconditionViolated);  // s > max(p,q)
  EXPECT_THROW(verify_main_theorem(3, 5, 2, 18), PreconditionViolated);  // 18 != +-2 mod 15
}

TEST(Corollary, Examples) {
  const auto a = verify_corollary(13, 43, 5, 564);
  EXPECT_TRUE(a.passed);
  EXPECT_EQ(a.values["A_r"], 4);
  EXPECT_EQ(a.values["strict"], true);
  const auto b = verify_corollary(3, 5, 2, 17);
  EXPECT_TRUE(b.passed);
  EXPECT_EQ(b.values["A_r"], 2);
  EXPECT_TRUE(verify_corollary(3, 5, 1, 16).passed);
}

TEST(IteratedBound, Examples) {
  const auto plus = verify_iterated_bound(3, 5, 1);
  EXPECT_TRUE(plus.passed);
  EXPECT_EQ(plus.values["triple"], (nlohmann::ordered_json{5, 16, 83}));
  const auto minus = verify_iterated_bound(3, 5, -1);
  EXPECT_EQ(minus.values["triple"], (nlohmann::ordered_json{5, 14, 67}));
  EXPECT_TRUE(minus.passed);
  const auto four = verify_iterated_bound(4, 5, 1);
  EXPECT_EQ(four.values["triple"], (nlohmann::ordered_json{5, 21, 109}));
  EXPECT_TRUE(four.passed);
  EXPECT_THROW(verify_iterated_bound(3, 6, 1), PreconditionViolated);
  EXPECT_THROW(verify_iterated_bound(3, 5, 2), PreconditionViolated);
}

TEST(IteratedBound, SmallSweep) {
  for (std::int64_t p = 1; p <= 6; ++p) {
    for (std::int64_t q = 3; q <= 9; ++q) {
      for (int sign : {1, -1}) {
        try {
          EXPECT_TRUE(verify_iterated_bound(p, q, sign).passed) << p << " " << q << " " << sign;
        } catch (const PreconditionViolated&) {
        }
      }
    }
  }
}

TEST(HeightBound, Examples) {
  const auto rep = verify_height_bound({13, 43, 564});
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.values["bound"], 9);
  EXPECT_THROW(verify_height_bound({4, 6, 7}), PreconditionViolated);
}

TEST(BoundedM, Examples) {
  EXPECT_EQ(bounded_M(1, 9).value, 0);
  const auto m5 = bounded_M(5, 15);
  EXPECT_EQ(m5.value, 3);
  EXPECT_NE(std::find(m5.attained_at.begin(), m5.attained_at.end(), std::make_pair<std::int64_t, std::int64_t>(7, 11)),
            m5.attained_at.end());
  const auto m3 = bounded_M(3, 10);
  EXPECT_EQ(m3.value, 2);
  EXPECT_NE(std::find(m3.attained_at.begin(), m3.attained_at.end(), std::make_pair<std::int64_t, std::int64_t>(5, 7)),
            m3.attained_at.end());
  EXPECT_THROW(bounded_M(0, 10), InvalidParameters);
}

TEST(BoundedM, WorkerCountDoesNotMatter) {
  const auto a = bounded_M(4, 20, 1), b = bounded_M(4, 20, 4);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.attained_at, b.attained_at);
  EXPECT_EQ(a.pairs_examined, b.pairs_examined);
}

TEST(MainTheorem, SweepUpTo12) {
  const auto sweep = sweep_main_theorem(12, 2);
  for (const auto& rep : sweep.reports) EXPECT_TRUE(rep.passed) << to_json_line(rep);
  EXPECT_GT(sweep.lower_attained, 0u);
  EXPECT_GT(sweep.upper_attained, 0u);
  EXPECT_EQ(sweep.lower_attained + sweep.upper_attained, sweep.reports.size());
  EXPECT_TRUE(std::is_sorted(sweep.reports.begin(), sweep.reports.end(), [](const auto& x, const auto& y) {
    auto key = [](const VerificationReport& r) {
      return std::make_tuple(r.instance[0].second, r.instance[1].second, r.instance[3].second, r.instance[2].second);
    };
    return key(x) < key(y);
  }));
}

TEST(ResidueIdentities, SweepUpTo7) {
  const auto reports = sweep_residue_identities(7);
  ASSERT_FALSE(reports.empty());
  for (const auto& rep : reports) EXPECT_TRUE(rep.passed) << to_json_line(rep);
  const auto rows = summarize(reports);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].check_id, "eq1.5");
  EXPECT_EQ(rows[1].check_id, "eq1.6");
  EXPECT_EQ(rows[0].failures + rows[1].failures, 0u);
  const std::string table = render_summary(rows);
  EXPECT_NE(table.find("eq1.5"), std::string::npos);
}

TEST(Report, JsonShape) {
  const auto rep = verify_main_theorem(3, 5, 2, 17);
  const auto j = to_json(rep);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"check_id", "instance", "passed", "values", "detail"}));
  EXPECT_EQ(j["instance"].dump(), R"({"p":3,"q":5,"s":2,"r":17})");
}

}  // namespace
