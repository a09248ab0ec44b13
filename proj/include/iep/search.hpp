#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "iep/height.hpp"
#include "iep/poly.hpp"
#include "iep/repr.hpp"

namespace iep {

/// Inclusive integer range.
struct Bounds {
  std::int64_t lo = 3;
  std::int64_t hi = 3;
};

struct TripleRanges {
  Bounds p, q, r;
  /// Permit elements 1 and 2 (at most one per triple).
  bool allow_degenerate = false;
};

/// Calls fn for every pairwise-coprime p < q < r inside the ranges, in
/// lexicographic order. Throws InvalidParameters for bounds below 3 unless
/// degenerate elements are enabled, or for an empty range.
void for_each_coprime_triple(const TripleRanges& ranges, const std::function<void(const Triple&)>& fn);
std::vector<Triple> enumerate_coprime_triples(const TripleRanges& ranges);

struct PairSolution {
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::int64_t r = 0;  // pq + s
  std::int64_t height = 0;
};

struct SolutionList {
  std::int64_t s = 0;
  std::int64_t target = 0;  // the height a solution must reach
  std::size_t pairs_examined = 0;
  std::vector<PairSolution> solutions;
  /// Set for the M(s) + 1 equation: M(s) was bounded by a finite search.
  std::optional<std::int64_t> m_hat;
  bool conditional = false;
};

/// Pairs 3 <= p < q with p <= p_max, q <= q_max, gcd(p, q) = gcd(pq, s) = 1
/// and A(p, q, pq + s) = s.
SolutionList find_eq13_solutions(std::int64_t s, std::int64_t p_max, std::int64_t q_max, unsigned workers = 1,
                                 const EngineLimits& limits = {});

/// Pairs 3 <= p < q <= p_max with A(p, q, pq + s) = M(s) + 1, where M(s) is
/// replaced by its maximum over pairs up to p_max. The list is conditional
/// unless that maximum agrees with a published value of M(s).
SolutionList find_eq14_solutions(std::int64_t s, std::int64_t p_max, unsigned workers = 1,
                                 const EngineLimits& limits = {});

nlohmann::ordered_json to_json(const SolutionList& list);

// --- persisted sweeps ---------------------------------------------------------

enum class TaskKind { height_sweep, eq13, eq14, flat_hunt };

std::string_view task_name(TaskKind kind);
/// Accepts height-sweep, eq13, eq14, flat-hunt. Throws InvalidParameters.
TaskKind parse_task_kind(std::string_view name);

/// height-sweep: every coprime triple in the ranges.
/// flat-hunt: the same restricted to r = +-1 (mod pq).
/// eq13 / eq14: pairs (p, q) from the p and q ranges with r = pq + s; the r
/// range is ignored.
struct SearchTask {
  TaskKind kind = TaskKind::height_sweep;
  TripleRanges ranges;
  std::optional<std::int64_t> s;
};

/// Throws InvalidParameters when the task is malformed.
void validate(const SearchTask& task);

/// Canonical JSON description of the task, as stored in the manifest.
nlohmann::ordered_json to_json(const SearchTask& task);

struct SweepOptions {
  std::string out;
  unsigned workers = 1;
  /// Continue an existing result file instead of starting over.
  bool resume = false;
  /// Stop after writing this many new records (simulates an interruption).
  std::optional<std::size_t> stop_after;
  EngineLimits limits;
};

struct SweepSummary {
  std::size_t total = 0;     // records the task defines
  std::size_t resumed = 0;   // already present and validated
  std::size_t written = 0;   // appended in this run
  std::size_t errors = 0;    // error records among those written
  std::size_t solutions = 0; // solution flags among those written
  bool complete = false;
};

/// Computes one JSON line per key, in key order, appending to options.out.
/// Lines carry the height record fields plus "task" and "key"; eq13/eq14
/// lines add "solution". Engine failures become error records. A sidecar
/// `<out>.manifest.json` describes the task. With resume, existing lines are
/// checked against the expected keys and re-validated, a torn final line is
/// dropped, and the sweep continues; the final file is byte-identical to an
/// uninterrupted run. Throws PersistenceError on I/O failure, a manifest
/// mismatch, or corrupt existing content.
SweepSummary sweep_heights(const SearchTask& task, const SweepOptions& options);

/// Path of the manifest written next to a result file.
std::string manifest_path(const std::string& out);

}  // namespace iep
