#include "iep/theorems.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <tuple>

#include "iep/arith.hpp"
#include "iep/error.hpp"
#include "iep/parallel.hpp"

namespace iep {

namespace {

using Instance = std::vector<std::pair<std::string, std::int64_t>>;

void require(bool ok, const std::string& hypothesis) {
  if (!ok) throw PreconditionViolated("hypothesis failed: " + hypothesis);
}

void require_valid(const Triple& t) {
  if (!is_valid(t)) throw PreconditionViolated("hypothesis failed: " + t.str() + " pairwise coprime");
}

// +1 when r = s (mod pq), -1 when r = -s (mod pq), 0 otherwise.
int residue_sign(std::int64_t r, std::int64_t s, std::int64_t pq) {
  if (least_nonneg_residue(r - s, pq).value == 0) return 1;
  if (least_nonneg_residue(r + s, pq).value == 0) return -1;
  return 0;
}

VerificationReport make_report(std::string id, Instance instance) {
  VerificationReport rep;
  rep.check_id = std::move(id);
  rep.instance = std::move(instance);
  return rep;
}

std::string triple_label(std::int64_t p, std::int64_t q, std::int64_t r) {
  return "A(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + ")";
}

// Shared hypothesis block of the recursive bound and its corollary.
void require_main_hypotheses(std::int64_t p, std::int64_t q, std::int64_t s, std::int64_t r) {
  require(p >= 3 && q >= 3, "p, q >= 3");
  require(s >= 1, "s >= 1");
  require_valid({p, q, r});
  require_valid({p, q, s});
  require(residue_sign(r, s, p * q) != 0, "r = +-s (mod pq)");
  require(r > std::max(p, q) && std::max(p, q) > s, "r > max(p,q) > s");
}

}  // namespace

nlohmann::ordered_json to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["check_id"] = r.check_id;
  nlohmann::ordered_json inst = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.instance) inst[k] = v;
  j["instance"] = inst;
  j["passed"] = r.passed;
  if (r.witness) j["witness"] = *r.witness;
  if (r.seed) j["seed"] = *r.seed;
  if (!r.values.empty()) j["values"] = r.values;
  j["detail"] = r.detail;
  return j;
}

std::string to_json_line(const VerificationReport& r) { return to_json(r).dump(); }

std::vector<SummaryRow> summarize(const std::vector<VerificationReport>& reports) {
  std::vector<SummaryRow> rows;
  for (const auto& rep : reports) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const SummaryRow& r) { return r.check_id == rep.check_id; });
    if (it == rows.end()) {
      rows.push_back({rep.check_id, 0, 0, 0});
      it = rows.end() - 1;
    }
    ++it->instances;
    ++(rep.passed ? it->passes : it->failures);
  }
  return rows;
}

std::string render_summary(const std::vector<SummaryRow>& rows) {
  std::size_t width = std::string("check_id").size();
  for (const auto& r : rows) width = std::max(width, r.check_id.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(width)) << "check_id" << std::right << std::setw(11) << "instances"
     << std::setw(9) << "passes" << std::setw(10) << "failures" << '\n';
  for (const auto& r : rows) {
    os << std::left << std::setw(static_cast<int>(width)) << r.check_id << std::right << std::setw(11) << r.instances
       << std::setw(9) << r.passes << std::setw(10) << r.failures << '\n';
  }
  return os.str();
}

VerificationReport verify_eq_1_5(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s,
                                 const EngineLimits& limits) {
  require(p >= 3 && q >= 3, "p, q >= 3");
  require_valid({p, q, r});
  require_valid({p, q, s});
  require(residue_sign(r, s, p * q) != 0, "r = +-s (mod pq)");
  require(r > std::max(p, q) && s > std::max(p, q), "r, s > max(p,q)");

  auto rep = make_report("eq1.5", {{"p", p}, {"q", q}, {"r", r}, {"s", s}});
  const auto hr = height({p, q, r}, limits);
  const auto hs = height({p, q, s}, limits);
  rep.values["A_r"] = hr.height;
  rep.values["A_s"] = hs.height;
  rep.passed = hr.height == hs.height;
  rep.detail = triple_label(p, q, r) + "=" + std::to_string(hr.height) + ", " + triple_label(p, q, s) + "=" +
               std::to_string(hs.height);
  if (!rep.passed) rep.witness = nlohmann::ordered_json{{"A_r", hr.height}, {"A_s", hs.height}};
  return rep;
}

VerificationReport verify_eq_1_6(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s, SignRelation sign,
                                 const EngineLimits& limits) {
  require(p >= 3 && q >= 3, "p, q >= 3");
  require_valid({p, q, r});
  require_valid({p, q, s});
  require(r > std::max(p, q) && s > std::max(p, q), "r, s > max(p,q)");
  const int rel = residue_sign(r, s, p * q);
  switch (sign) {
    case SignRelation::automatic:
      require(rel != 0, "r = +-s (mod pq)");
      break;
    case SignRelation::same:
      require(rel == 1, "r = s (mod pq)");
      break;
    case SignRelation::opposite:
      require(rel == -1, "r = -s (mod pq)");
      break;
  }

  auto rep = make_report("eq1.6", {{"p", p}, {"q", q}, {"r", r}, {"s", s}});
  const auto set_r = coefficient_set({p, q, r}, limits);
  auto set_s = coefficient_set({p, q, s}, limits);
  if (rel == -1) {
    for (auto& c : set_s) c = -c;
    std::sort(set_s.begin(), set_s.end());
  }
  rep.values["relation"] = rel == 1 ? "same" : "opposite";
  rep.values["set_r"] = set_r;
  rep.values["expected"] = set_s;
  rep.passed = set_r == set_s;
  rep.detail = std::string(rel == 1 ? "set(r) == set(s)" : "set(r) == -set(s)") + (rep.passed ? " holds" : " fails");
  if (!rep.passed) rep.witness = nlohmann::ordered_json{{"set_r", set_r}, {"expected", set_s}};
  return rep;
}

VerificationReport verify_main_theorem(std::int64_t p, std::int64_t q, std::int64_t s, std::int64_t r,
                                       const EngineLimits& limits) {
  require_main_hypotheses(p, q, s, r);
  auto rep = make_report("main", {{"p", p}, {"q", q}, {"s", s}, {"r", r}});
  const std::int64_t a_s = height({p, q, s}, limits).height;
  const std::int64_t a_r = height({p, q, r}, limits).height;
  rep.values["A_s"] = a_s;
  rep.values["A_r"] = a_r;
  rep.passed = a_s <= a_r && a_r <= a_s + 1;
  if (rep.passed) rep.values["attained"] = a_r == a_s ? "lower" : "upper";
  rep.detail = std::to_string(a_s) + " <= " + std::to_string(a_r) + " <= " + std::to_string(a_s + 1);
  if (!rep.passed) rep.witness = nlohmann::ordered_json{{"A_s", a_s}, {"A_r", a_r}};
  return rep;
}

VerificationReport verify_corollary(std::int64_t p, std::int64_t q, std::int64_t s, std::int64_t r,
                                    const EngineLimits& limits) {
  require_main_hypotheses(p, q, s, r);
  auto rep = make_report("corollary", {{"p", p}, {"q", q}, {"s", s}, {"r", r}});
  const std::int64_t a_r = height({p, q, r}, limits).height;
  const bool strict = s >= 5;
  rep.values["A_r"] = a_r;
  rep.values["strict"] = strict;
  rep.passed = strict ? a_r < s : a_r <= s;
  rep.detail = std::to_string(a_r) + (strict ? " < " : " <= ") + std::to_string(s);
  if (!rep.passed) rep.witness = nlohmann::ordered_json{{"A_r", a_r}, {"s", s}};
  return rep;
}

VerificationReport verify_iterated_bound(std::int64_t p, std::int64_t q, int sign, const EngineLimits& limits) {
  require(sign == 1 || sign == -1, "sign is + or -");
  require(p >= 1 && q >= 1 && std::gcd(p, q) == 1, "gcd(p,q) = 1");
  const std::int64_t mid = p * q + sign;
  const Triple t{q, mid, q * mid + sign * p};
  require(t.ternary(), "all elements of " + t.str() + " >= 3");
  require_valid(t);
  auto rep = make_report("iterated", {{"p", p}, {"q", q}, {"sign", sign}});
  const std::int64_t a = height(t, limits).height;
  rep.values["triple"] = {t.p, t.q, t.r};
  rep.values["A"] = a;
  rep.passed = a <= 2;
  rep.detail = triple_label(t.p, t.q, t.r) + "=" + std::to_string(a) + " <= 2";
  if (!rep.passed) rep.witness = nlohmann::ordered_json{{"triple", {t.p, t.q, t.r}}, {"A", a}};
  return rep;
}

VerificationReport verify_height_bound(const Triple& t, const EngineLimits& limits) {
  require_valid(t);
  auto rep = make_report("eq1.11", {{"p", t.p}, {"q", t.q}, {"r", t.r}});
  const std::int64_t m = t.min();
  const std::int64_t bound = m - (m + 3) / 4;
  const std::int64_t a = height(t, limits).height;
  rep.values["A"] = a;
  rep.values["bound"] = bound;
  rep.passed = a <= bound;
  rep.detail = std::to_string(a) + " <= " + std::to_string(bound);
  if (!rep.passed) rep.witness = nlohmann::ordered_json{{"A", a}, {"bound", bound}};
  return rep;
}

BoundedM bounded_M(std::int64_t s, std::int64_t p_max, unsigned workers) {
  if (s < 1) throw InvalidParameters("bounded_M needs s >= 1");
  BoundedM out;
  out.s = s;
  out.p_max = p_max;
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (std::int64_t p = 3; p <= p_max; ++p) {
    for (std::int64_t q = p + 1; q <= p_max; ++q) {
      if (std::gcd(p, q) == 1 && std::gcd(p, s) == 1 && std::gcd(q, s) == 1) pairs.emplace_back(p, q);
    }
  }
  out.pairs_examined = pairs.size();
  ordered_parallel_for(
      pairs.size(), workers, [&](std::size_t i) { return height({pairs[i].first, pairs[i].second, s}).height; },
      [&](std::size_t i, std::int64_t a) {
        if (out.attained_at.empty() || a > out.value) {
          out.value = a;
          out.attained_at.clear();
        }
        if (a == out.value) out.attained_at.push_back(pairs[i]);
      });
  return out;
}

MainTheoremSweep sweep_main_theorem(std::int64_t q_max, unsigned workers, const EngineLimits& limits) {
  using Key = std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>;  // p, q, r, s
  std::vector<Key> keys;
  for (std::int64_t q = 4; q <= q_max; ++q) {
    for (std::int64_t p = 3; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      for (std::int64_t s = 1; s < q; ++s) {
        if (std::gcd(s, p * q) != 1) continue;
        keys.emplace_back(p, q, p * q - s, s);
        keys.emplace_back(p, q, p * q + s, s);
      }
    }
  }
  std::sort(keys.begin(), keys.end());
  MainTheoremSweep out;
  out.reports.reserve(keys.size());
  ordered_parallel_for(
      keys.size(), workers,
      [&](std::size_t i) {
        auto [p, q, r, s] = keys[i];
        return verify_main_theorem(p, q, s, r, limits);
      },
      [&](std::size_t, VerificationReport rep) {
        if (rep.passed) ++(rep.values["attained"] == "lower" ? out.lower_attained : out.upper_attained);
        out.reports.push_back(std::move(rep));
      });
  return out;
}

std::vector<VerificationReport> sweep_residue_identities(std::int64_t q_max, std::int64_t factor, unsigned workers,
                                                         const EngineLimits& limits) {
  struct Job {
    std::int64_t p, q, r, s;
    bool identity_1_6;
  };
  std::vector<Job> jobs;
  for (std::int64_t p = 3; p <= q_max; ++p) {
    for (std::int64_t q = p + 1; q <= q_max; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const std::int64_t pq = p * q, top = factor * pq;
      for (std::int64_t r = q + 1; r <= top; ++r) {
        if (std::gcd(r, pq) != 1) continue;
        for (std::int64_t s = r + 1; s <= top; ++s) {
          if (residue_sign(r, s, pq) == 0) continue;
          jobs.push_back({p, q, r, s, false});
          jobs.push_back({p, q, r, s, true});
        }
      }
    }
  }
  std::vector<VerificationReport> out;
  out.reserve(jobs.size());
  ordered_parallel_for(
      jobs.size(), workers,
      [&](std::size_t i) {
        const auto& j = jobs[i];
        return j.identity_1_6 ? verify_eq_1_6(j.p, j.q, j.r, j.s, SignRelation::automatic, limits)
                              : verify_eq_1_5(j.p, j.q, j.r, j.s, limits);
      },
      [&](std::size_t, VerificationReport rep) { out.push_back(std::move(rep)); });
  return out;
}

}  // namespace iep
