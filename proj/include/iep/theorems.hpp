#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "iep/height.hpp"
#include "iep/poly.hpp"
#include "iep/repr.hpp"

namespace iep {

/// Evidence for one check on one instance. A failed report always carries a
/// witness that can be re-checked on its own.
struct VerificationReport {
  std::string check_id;
  std::vector<std::pair<std::string, std::int64_t>> instance;
  bool passed = false;
  std::optional<nlohmann::ordered_json> witness;
  std::string detail;
  std::optional<std::uint64_t> seed;
  /// Check-specific observations (heights, which bound was attained, ...).
  nlohmann::ordered_json values = nlohmann::ordered_json::object();
};

nlohmann::ordered_json to_json(const VerificationReport& r);
std::string to_json_line(const VerificationReport& r);

struct SummaryRow {
  std::string check_id;
  std::size_t instances = 0;
  std::size_t passes = 0;
  std::size_t failures = 0;
};

/// Per-check tallies in first-seen order.
std::vector<SummaryRow> summarize(const std::vector<VerificationReport>& reports);
std::string render_summary(const std::vector<SummaryRow>& rows);

// --- residue-class identities and the recursive bound ---------------------

/// A(p,q,r) = A(p,q,s) for r = +-s (mod pq), r, s > max(p,q).
VerificationReport verify_eq_1_5(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s,
                                 const EngineLimits& limits = {});

enum class SignRelation { automatic, same, opposite };

/// Coefficient sets of {p,q,r} and {p,q,s} agree (r = s mod pq) or are
/// negatives of each other (r = -s mod pq), for r, s > max(p,q).
VerificationReport verify_eq_1_6(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s,
                                 SignRelation sign = SignRelation::automatic, const EngineLimits& limits = {});

/// A(p,q,s) <= A(p,q,r) <= A(p,q,s) + 1 for r = +-s (mod pq) and
/// r > max(p,q) > s >= 1; A(p,q,s) = s - 1 for s <= 2.
VerificationReport verify_main_theorem(std::int64_t p, std::int64_t q, std::int64_t s, std::int64_t r,
                                       const EngineLimits& limits = {});

/// A(p,q,r) <= s under the same hypotheses, strictly when s >= 5.
VerificationReport verify_corollary(std::int64_t p, std::int64_t q, std::int64_t s, std::int64_t r,
                                    const EngineLimits& limits = {});

/// A(q, pq+-1, q(pq+-1)+-p) <= 2; sign is +1 or -1.
VerificationReport verify_iterated_bound(std::int64_t p, std::int64_t q, int sign, const EngineLimits& limits = {});

/// A(t) <= m - ceil(m/4) with m = min(p,q,r) (A with the s <= 2 convention).
VerificationReport verify_height_bound(const Triple& t, const EngineLimits& limits = {});

/// Lower approximation of M(s) = max_{p,q} A(p,q,s) over coprime pairs
/// 3 <= p < q <= p_max that are coprime to s.
struct BoundedM {
  std::int64_t s = 0;
  std::int64_t p_max = 0;
  std::int64_t value = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> attained_at;
  std::size_t pairs_examined = 0;
};

BoundedM bounded_M(std::int64_t s, std::int64_t p_max, unsigned workers = 1);

// --- lemma validators ------------------------------------------------------

enum class LemmaId { lemma2, lemma3, lemma4, lemma5, lemma6, lemma7, lemma9, lemma10, lemma11, eq2_4, eq2_5, eq2_6 };

inline constexpr LemmaId kAllLemmas[] = {LemmaId::lemma2, LemmaId::lemma3, LemmaId::lemma4,  LemmaId::lemma5,
                                         LemmaId::lemma6, LemmaId::lemma7, LemmaId::lemma9,  LemmaId::lemma10,
                                         LemmaId::lemma11, LemmaId::eq2_4, LemmaId::eq2_5, LemmaId::eq2_6};

std::string_view lemma_name(LemmaId id);
/// Throws UnknownLemma.
LemmaId parse_lemma_id(std::string_view name);

/// Whether the triple, read in its stored roles, satisfies the lemma's
/// standing hypothesis (r = pq + s with s >= 1 for lemmas 6-11, p < q for
/// lemma 7, a valid companion {p, q, s} for lemmas 9-11).
bool lemma_applies(LemmaId id, const Triple& t);

struct Sampling {
  /// nullopt walks the whole domain.
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 0;

  static Sampling exhaustive() { return {}; }
  static Sampling random(std::uint64_t n, std::uint64_t seed) { return {n, seed}; }
};

struct LemmaAux {
  /// Companion parameter with r = pq + s; derived from the triple when absent.
  std::optional<std::int64_t> s;
};

class LemmaWorkspace;

/// Checks one lemma on one triple (roles as stored). Throws UnknownLemma or
/// PreconditionViolated.
VerificationReport verify_lemma(LemmaId id, const Triple& t, const LemmaAux& aux, const Sampling& sampling,
                                const EngineLimits& limits = {});
VerificationReport verify_lemma(std::string_view id, const Triple& t, const LemmaAux& aux, const Sampling& sampling,
                                const EngineLimits& limits = {});

/// Tables shared by several lemma checks on one triple (chi, prefix counts,
/// coefficients, and the companion triple {p, q, s} when r = pq + s).
class LemmaWorkspace {
 public:
  LemmaWorkspace(const Triple& t, bool exhaustive, const EngineLimits& limits = {});
  ~LemmaWorkspace();
  LemmaWorkspace(const LemmaWorkspace&) = delete;
  LemmaWorkspace& operator=(const LemmaWorkspace&) = delete;

  VerificationReport verify(LemmaId id, const Sampling& sampling) const;

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

// --- sweeps ----------------------------------------------------------------

struct MainTheoremSweep {
  std::vector<VerificationReport> reports;
  std::size_t lower_attained = 0;  // A(p,q,r) == A(p,q,s)
  std::size_t upper_attained = 0;  // A(p,q,r) == A(p,q,s) + 1
};

/// verify_main_theorem over all admissible (p,q,s) with 3 <= p < q <= q_max,
/// 1 <= s < q and r = pq + s, pq - s. Reports are ordered by (p,q,r,s).
MainTheoremSweep sweep_main_theorem(std::int64_t q_max, unsigned workers = 1, const EngineLimits& limits = {});

/// verify_eq_1_5 and verify_eq_1_6 over 3 <= p < q <= q_max and all
/// admissible max(p,q) < r < s <= factor*pq with r = +-s (mod pq).
std::vector<VerificationReport> sweep_residue_identities(std::int64_t q_max, std::int64_t factor = 3,
                                                         unsigned workers = 1, const EngineLimits& limits = {});

}  // namespace iep
