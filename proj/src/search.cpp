#include "iep/search.hpp"

#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "iep/error.hpp"
#include "iep/parallel.hpp"
#include "iep/reference.hpp"
#include "iep/theorems.hpp"
#include "iep/version.hpp"

namespace iep {

namespace {

using json = nlohmann::ordered_json;

struct TaskName {
  TaskKind kind;
  std::string_view name;
};

constexpr TaskName kTaskNames[] = {
    {TaskKind::height_sweep, "height-sweep"},
    {TaskKind::eq13, "eq13"},
    {TaskKind::eq14, "eq14"},
    {TaskKind::flat_hunt, "flat-hunt"},
};

void check_bounds(const Bounds& b, std::int64_t floor, const char* name) {
  if (b.lo > b.hi) {
    throw InvalidParameters(std::string("empty range for ") + name + ": [" + std::to_string(b.lo) + ", " +
                            std::to_string(b.hi) + "]");
  }
  if (b.lo < floor) {
    throw InvalidParameters(std::string("range for ") + name + " starts below " + std::to_string(floor));
  }
}

// Pairs (p, q), 3 <= p < q, coprime to each other and to s.
std::vector<std::pair<std::int64_t, std::int64_t>> admissible_pairs(const Bounds& pb, const Bounds& qb,
                                                                    std::int64_t s) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t p = std::max<std::int64_t>(pb.lo, 3); p <= pb.hi; ++p) {
    for (std::int64_t q = std::max(qb.lo, p + 1); q <= qb.hi; ++q) {
      if (std::gcd(p, q) == 1 && std::gcd(p * q, s) == 1) out.emplace_back(p, q);
    }
  }
  return out;
}

SolutionList solve_pairs(std::int64_t s, std::int64_t target,
                         const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs, unsigned workers,
                         const EngineLimits& limits) {
  SolutionList out;
  out.s = s;
  out.target = target;
  out.pairs_examined = pairs.size();
  ordered_parallel_for(
      pairs.size(), workers,
      [&](std::size_t i) {
        const auto [p, q] = pairs[i];
        return height({p, q, p * q + s}, limits).height;
      },
      [&](std::size_t i, std::int64_t a) {
        if (a != target) return;
        const auto [p, q] = pairs[i];
        out.solutions.push_back({p, q, p * q + s, a});
      });
  return out;
}

struct Job {
  Triple triple;
  std::array<std::int64_t, 3> key;
};

std::vector<Job> task_jobs(const SearchTask& task) {
  std::vector<Job> jobs;
  switch (task.kind) {
    case TaskKind::height_sweep:
    case TaskKind::flat_hunt:
      for_each_coprime_triple(task.ranges, [&](const Triple& t) {
        if (task.kind == TaskKind::flat_hunt) {
          const std::int64_t pq = t.p * t.q, res = t.r % pq;
          if (res != 1 && res != pq - 1) return;
        }
        jobs.push_back({t, {t.p, t.q, t.r}});
      });
      break;
    case TaskKind::eq13:
    case TaskKind::eq14:
      for (auto [p, q] : admissible_pairs(task.ranges.p, task.ranges.q, *task.s)) {
        jobs.push_back({{p, q, p * q + *task.s}, {p, q, *task.s}});
      }
      break;
  }
  return jobs;
}

json key_json(const std::array<std::int64_t, 3>& key) { return json::array({key[0], key[1], key[2]}); }

struct LineContext {
  TaskKind kind;
  std::optional<std::int64_t> target;  // eq13 / eq14
  EngineLimits limits;
};

std::string compute_line(const LineContext& cx, const Job& job) {
  json j;
  j["task"] = task_name(cx.kind);
  j["key"] = key_json(job.key);
  try {
    const HeightRecord rec = height(job.triple, cx.limits);
    j["p"] = rec.triple.p;
    j["q"] = rec.triple.q;
    j["r"] = rec.triple.r;
    j["a_minus"] = rec.a_minus;
    j["a_plus"] = rec.a_plus;
    j["height"] = rec.height;
    j["literal_max"] = rec.literal_max;
    j["flat"] = rec.flat;
    if (cx.target) j["solution"] = rec.height == *cx.target;
  } catch (const Error& e) {
    j["p"] = job.triple.p;
    j["q"] = job.triple.q;
    j["r"] = job.triple.r;
    j["error"] = e.what();
  }
  return j.dump();
}

// Checks a persisted line against the key it should carry and the height
// invariants. Returns whether it is an error record.
bool validate_line(const LineContext& cx, const Job& job, const std::string& line, std::size_t index) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw PersistenceError("line " + std::to_string(index + 1) + " is not JSON: " + e.what());
  }
  if (!j.is_object() || j.value("task", "") != task_name(cx.kind) || j.value("key", json()) != key_json(job.key)) {
    throw PersistenceError("line " + std::to_string(index + 1) + " does not match the expected key " +
                           key_json(job.key).dump());
  }
  if (j.contains("error")) return true;
  const HeightRecord rec = height_from_json_line(line);
  if (rec.triple != job.triple) throw PersistenceError("line " + std::to_string(index + 1) + " has the wrong triple");
  try {
    check_invariants(rec);
  } catch (const Error& e) {
    throw PersistenceError("line " + std::to_string(index + 1) + ": " + e.what());
  }
  if (cx.target && j.value("solution", !(rec.height == *cx.target)) != (rec.height == *cx.target)) {
    throw PersistenceError("line " + std::to_string(index + 1) + " has an inconsistent solution flag");
  }
  return false;
}

struct StopRequested {};

}  // namespace

void for_each_coprime_triple(const TripleRanges& ranges, const std::function<void(const Triple&)>& fn) {
  const std::int64_t floor = ranges.allow_degenerate ? 1 : 3;
  check_bounds(ranges.p, floor, "p");
  check_bounds(ranges.q, floor, "q");
  check_bounds(ranges.r, floor, "r");
  for (std::int64_t p = ranges.p.lo; p <= ranges.p.hi; ++p) {
    for (std::int64_t q = std::max(ranges.q.lo, p + 1); q <= ranges.q.hi; ++q) {
      if (std::gcd(p, q) != 1) continue;
      for (std::int64_t r = std::max(ranges.r.lo, q + 1); r <= ranges.r.hi; ++r) {
        if (std::gcd(r, p * q) != 1) continue;
        const Triple t{p, q, r};
        if (ranges.allow_degenerate && !is_valid(t)) continue;
        fn(t);
      }
    }
  }
}

std::vector<Triple> enumerate_coprime_triples(const TripleRanges& ranges) {
  std::vector<Triple> out;
  for_each_coprime_triple(ranges, [&](const Triple& t) { out.push_back(t); });
  return out;
}

SolutionList find_eq13_solutions(std::int64_t s, std::int64_t p_max, std::int64_t q_max, unsigned workers,
                                 const EngineLimits& limits) {
  if (s < 1) throw InvalidParameters("s must be >= 1");
  return solve_pairs(s, s, admissible_pairs({3, p_max}, {3, q_max}, s), workers, limits);
}

SolutionList find_eq14_solutions(std::int64_t s, std::int64_t p_max, unsigned workers, const EngineLimits& limits) {
  if (s < 1) throw InvalidParameters("s must be >= 1");
  const BoundedM m = bounded_M(s, p_max, workers);
  SolutionList out = solve_pairs(s, m.value + 1, admissible_pairs({3, p_max}, {3, p_max}, s), workers, limits);
  out.m_hat = m.value;
  const auto known = known_M(s);
  out.conditional = !(known && *known == m.value);
  return out;
}

json to_json(const SolutionList& list) {
  json j;
  j["s"] = list.s;
  j["target"] = list.target;
  if (list.m_hat) {
    j["m_hat"] = *list.m_hat;
    j["conditional"] = list.conditional;
  }
  j["pairs_examined"] = list.pairs_examined;
  json sols = json::array();
  for (const auto& sol : list.solutions) {
    sols.push_back(json{{"p", sol.p}, {"q", sol.q}, {"r", sol.r}, {"height", sol.height}});
  }
  j["solutions"] = std::move(sols);
  return j;
}

std::string_view task_name(TaskKind kind) {
  for (const auto& e : kTaskNames) {
    if (e.kind == kind) return e.name;
  }
  return "?";
}

TaskKind parse_task_kind(std::string_view name) {
  for (const auto& e : kTaskNames) {
    if (e.name == name) return e.kind;
  }
  throw InvalidParameters("unknown search kind '" + std::string(name) +
                          "' (expected height-sweep, eq13, eq14 or flat-hunt)");
}

void validate(const SearchTask& task) {
  const bool pairs = task.kind == TaskKind::eq13 || task.kind == TaskKind::eq14;
  if (pairs && (!task.s || *task.s < 1)) throw InvalidParameters("search " + std::string(task_name(task.kind)) + " needs s >= 1");
  const std::int64_t floor = task.ranges.allow_degenerate ? 1 : 3;
  check_bounds(task.ranges.p, floor, "p");
  check_bounds(task.ranges.q, floor, "q");
  if (!pairs) check_bounds(task.ranges.r, floor, "r");
}

json to_json(const SearchTask& task) {
  json j;
  j["kind"] = task_name(task.kind);
  j["p"] = json::array({task.ranges.p.lo, task.ranges.p.hi});
  j["q"] = json::array({task.ranges.q.lo, task.ranges.q.hi});
  if (task.kind == TaskKind::height_sweep || task.kind == TaskKind::flat_hunt) {
    j["r"] = json::array({task.ranges.r.lo, task.ranges.r.hi});
  }
  j["allow_degenerate"] = task.ranges.allow_degenerate;
  j["s"] = task.s ? json(*task.s) : json(nullptr);
  return j;
}

std::string manifest_path(const std::string& out) { return out + ".manifest.json"; }

SweepSummary sweep_heights(const SearchTask& task, const SweepOptions& options) {
  validate(task);
  if (options.out.empty()) throw InvalidParameters("sweep needs an output path");
  namespace fs = std::filesystem;

  const std::vector<Job> jobs = task_jobs(task);
  LineContext cx{task.kind, std::nullopt, options.limits};
  json manifest;
  manifest["format"] = "iep-sweep";
  manifest["version"] = 1;
  manifest["code_version"] = kVersion;
  manifest["task"] = to_json(task);
  manifest["seed"] = nullptr;
  manifest["records"] = jobs.size();
  if (task.kind == TaskKind::eq13) cx.target = *task.s;
  if (task.kind == TaskKind::eq14) {
    const std::int64_t bound = std::max(task.ranges.p.hi, task.ranges.q.hi);
    const BoundedM m = bounded_M(*task.s, bound, options.workers);
    cx.target = m.value + 1;
    manifest["m_hat"] = m.value;
    manifest["m_hat_p_max"] = bound;
  }
  const std::string manifest_text = manifest.dump(2) + "\n";

  SweepSummary summary;
  summary.total = jobs.size();
  const std::string mpath = manifest_path(options.out);

  std::size_t start = 0;
  std::error_code ec;
  if (options.resume && fs::exists(options.out, ec)) {
    if (fs::exists(mpath, ec)) {
      std::ifstream min(mpath, std::ios::binary);
      std::stringstream ss;
      ss << min.rdbuf();
      if (ss.str() != manifest_text) {
        throw PersistenceError("manifest " + mpath + " describes a different task; refusing to resume");
      }
    }
    std::ifstream in(options.out, std::ios::binary);
    if (!in) throw PersistenceError("cannot read " + options.out);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string content = ss.str();
    in.close();
    // Only newline-terminated lines count; a torn tail is discarded.
    std::size_t keep = 0, pos = 0;
    while (true) {
      const std::size_t nl = content.find('\n', pos);
      if (nl == std::string::npos) break;
      if (start >= jobs.size()) throw PersistenceError(options.out + " has more lines than the task defines");
      validate_line(cx, jobs[start], content.substr(pos, nl - pos), start);
      ++start;
      pos = nl + 1;
      keep = pos;
    }
    if (keep != content.size()) {
      fs::resize_file(options.out, keep, ec);
      if (ec) throw PersistenceError("cannot truncate " + options.out + ": " + ec.message());
    }
    summary.resumed = start;
  } else {
    std::ofstream trunc(options.out, std::ios::binary | std::ios::trunc);
    if (!trunc) throw PersistenceError("cannot create " + options.out);
  }

  {
    std::ofstream mout(mpath, std::ios::binary | std::ios::trunc);
    mout << manifest_text;
    if (!mout) throw PersistenceError("cannot write " + mpath);
  }

  std::ofstream out(options.out, std::ios::binary | std::ios::app);
  if (!out) throw PersistenceError("cannot open " + options.out + " for appending");

  const std::size_t remaining = jobs.size() - start;
  try {
    ordered_parallel_for(
        remaining, options.workers, [&](std::size_t i) { return compute_line(cx, jobs[start + i]); },
        [&](std::size_t, std::string line) {
          if (options.stop_after && summary.written >= *options.stop_after) throw StopRequested{};
          out << line << '\n';
          out.flush();
          if (!out) throw PersistenceError("write to " + options.out + " failed");
          ++summary.written;
          if (line.find("\"error\":") != std::string::npos) ++summary.errors;
          if (line.find("\"solution\":true") != std::string::npos) ++summary.solutions;
        });
  } catch (const StopRequested&) {
    return summary;
  }
  summary.complete = true;
  return summary;
}

}  // namespace iep
