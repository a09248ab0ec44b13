#include <algorithm>
#include <array>
#include <cstdlib>
#include <random>

#include "iep/arith.hpp"
#include "iep/error.hpp"
#include "iep/theorems.hpp"

namespace iep {

namespace {

using json = nlohmann::ordered_json;

struct LemmaName {
  LemmaId id;
  std::string_view name;
};

constexpr LemmaName kNames[] = {
    {LemmaId::lemma2, "lemma2"},   {LemmaId::lemma3, "lemma3"},   {LemmaId::lemma4, "lemma4"},
    {LemmaId::lemma5, "lemma5"},   {LemmaId::lemma6, "lemma6"},   {LemmaId::lemma7, "lemma7"},
    {LemmaId::lemma9, "lemma9"},   {LemmaId::lemma10, "lemma10"}, {LemmaId::lemma11, "lemma11"},
    {LemmaId::eq2_4, "eq2.4"},     {LemmaId::eq2_5, "eq2.5"},     {LemmaId::eq2_6, "eq2.6"},
};

bool needs_companion(LemmaId id) {
  return id == LemmaId::lemma6 || id == LemmaId::lemma7 || id == LemmaId::lemma9 || id == LemmaId::lemma10 ||
         id == LemmaId::lemma11;
}

bool uses_companion_chi(LemmaId id) { return id == LemmaId::lemma9 || id == LemmaId::lemma11; }

// Uniform integer in [lo, hi] from a 64-bit engine, by rejection. Kept
// independent of the standard distributions so sample streams are portable.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  std::int64_t operator()(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
    std::uint64_t x = 0;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

 private:
  std::mt19937_64 engine_;
};

struct Tally {
  std::uint64_t points = 0;
  std::uint64_t failures = 0;
  std::optional<json> witness;

  void record(bool ok, const auto& make_witness) {
    ++points;
    if (ok) return;
    ++failures;
    if (!witness) witness = make_witness();
  }
};

// Result of a counting kernel: how many points were checked, how many failed.
struct Count {
  std::uint64_t points = 0;
  std::uint64_t bad = 0;
};

// Number of n in [lo, hi) with pred(n). Byte-wide partial counts keep the
// loop vectorizable.
template <class Pred>
std::uint64_t count_where(std::int64_t lo, std::int64_t hi, const Pred& pred) {
  std::uint64_t total = 0;
  for (std::int64_t b = lo; b < hi; b += 255) {
    const std::int64_t e = std::min(b + 255, hi);
    std::uint8_t part = 0;
    for (std::int64_t n = b; n < e; ++n) part += pred(n);
    total += part;
  }
  return total;
}

// chi over [-pad, limit) plus prefix counts
// pre[n] = #{0 <= k <= n : chi(k) = 1}, 0 below zero, on the same range.
struct Tables {
  ChiTable chi;
  std::vector<std::int32_t> cells;
  std::int64_t pad;

  Tables(const Triple& t, std::int64_t limit, std::int64_t pad_, bool with_prefix)
      : chi(t, limit, pad_), pad(pad_) {
    if (!with_prefix) return;
    cells.assign(static_cast<std::size_t>(limit + pad), 0);
    const std::uint8_t* c = chi.origin();
    std::int32_t run = 0;
    for (std::int64_t n = 0; n < limit; ++n) {
      run += c[n];
      cells[static_cast<std::size_t>(n + pad)] = run;
    }
  }

  const std::uint8_t* chi0() const { return chi.origin(); }
  bool has_prefix() const { return !cells.empty(); }
  const std::int32_t* pre0() const { return cells.data() + pad; }
};

}  // namespace

struct LemmaWorkspace::Impl {
  Triple t;
  TripleContext ctx;
  bool exhaustive;
  std::int64_t p, q, r, pq, pqr;

  std::optional<Tables> tables;
  // Sampled mode keeps the coefficient vector; exhaustive mode a zero-padded
  // copy over [-pq, pqr).
  std::optional<CoefficientVector> coeffs;
  std::vector<std::int32_t> padded;

  // Companion {p, q, s} when r = pq + s with s >= 1.
  std::int64_t s = 0;
  std::int64_t bmax = 0;  // floor(pq / s)
  std::optional<TripleContext> comp;
  std::optional<Tables> comp_tables;

  Impl(const Triple& triple, bool exh, const EngineLimits& limits)
      : t(triple), ctx(triple), exhaustive(exh), p(triple.p), q(triple.q), r(triple.r) {
    if (!t.ternary()) throw PreconditionViolated("hypothesis failed: lemma validators need p, q, r >= 3");
    pq = p * q;
    pqr = ctx.pqr();
    if (r > pq) {
      s = r - pq;
      bmax = pq / s;
      if (is_valid(Triple{p, q, s})) comp.emplace(Triple{p, q, s});
    }
    if (exhaustive) {
      if (pqr > (std::int64_t{1} << 28)) throw PreconditionViolated("exhaustive lemma check needs pqr <= 2^28");
      // Prefix counts and the deep pad serve only the r > pq lemmas, which
      // reach kr + beta*pq - s with |k| < pq, |beta| <= floor(pq/s). The
      // other kernels look back at most qr.
      const std::int64_t pad = s > 0 ? std::max(pqr, (pq - 1) * r + bmax * pq + s + 1) : q * r + r;
      tables.emplace(t, pqr, pad, s > 0);
      if (comp) comp_tables.emplace(comp->triple(), comp->pqr(), comp->pqr() + pq + 2 * s, true);
      const auto v = coeffs_series(t, SeriesMode::full, limits);
      padded.assign(static_cast<std::size_t>(pq + pqr), 0);
      for (std::size_t m = 0; m < v.coeffs.size(); ++m) {
        const std::int64_t a = v.coeffs[m];
        if (a < INT32_MIN || a > INT32_MAX) throw OverflowDetected("coefficient beyond 32 bits in " + t.str());
        padded[m + static_cast<std::size_t>(pq)] = static_cast<std::int32_t>(a);
      }
    } else if (degree(t) <= limits.degree_cap) {
      coeffs = coeffs_series(t, SeriesMode::full, limits);
    }
  }

  // --- accessors shared by both modes ---

  int chi(std::int64_t n) const {
    if (n < 0) return 0;
    return tables ? tables->chi0()[n] : ctx.chi(n);
  }

  std::int64_t sigma(std::int64_t k, std::int64_t m) const {
    if (!tables || !tables->has_prefix()) return ctx.sigma(k, m);
    if (m >= pqr) throw DomainExceeded("sigma beyond pqr");
    auto pre = [&](std::int64_t n) -> std::int64_t { return n < 0 ? 0 : tables->pre0()[n]; };
    return pre(m) - pre(m - k);
  }

  int chi_c(std::int64_t n) const {
    if (n < 0) return 0;
    return comp_tables ? comp_tables->chi0()[n] : comp->chi(n);
  }

  std::int64_t sigma_c(std::int64_t k, std::int64_t m) const {
    if (!comp_tables) return comp->sigma(k, m);
    if (m >= comp->pqr()) throw DomainExceeded("companion sigma beyond pqs");
    auto pre = [&](std::int64_t n) -> std::int64_t { return n < 0 ? 0 : comp_tables->pre0()[n]; };
    return pre(m) - pre(m - k);
  }

  std::int64_t coeff(std::int64_t m) const {
    if (!padded.empty()) return m < 0 || m >= pqr ? 0 : padded[static_cast<std::size_t>(m + pq)];
    if (coeffs) return coeffs->at(m);
    return coefficient_at(t, m);
  }

  static std::int64_t component(const Representation& rep, Pivot pv) {
    return pv == Pivot::p ? rep.x : pv == Pivot::q ? rep.y : rep.z;
  }

  std::pair<std::int64_t, std::int64_t> pivot_parts(Pivot pv) const {
    const Triple rel = with_pivot(t, pv);
    return {rel.p * rel.q, rel.r};
  }

  // Runs the counting kernel; only when it reports a failure is the
  // point-by-point check repeated to collect the witness.
  void exhaustive_run(const auto& kernel, const auto& full_check, Tally& tally) const {
    const Count c = kernel();
    if (c.bad == 0) {
      tally.points += c.points;
      return;
    }
    full_check();
  }

  // --- Lemma 2 ---

  void lemma2(const Sampling& smp, Tally& tally) const {
    const std::array<std::pair<std::int64_t, std::int64_t>, 3> pairs{{{p, q}, {q, r}, {r, p}}};
    auto check = [&](std::int64_t a, std::int64_t b, std::int64_t n) {
      const int v = chi(n) - chi(n - a) - chi(n - b) + chi(n - a - b);
      tally.record(v >= -1 && v <= 1, [&] { return json{{"n", n}, {"a", a}, {"b", b}, {"value", v}}; });
    };
    if (exhaustive) {
      const std::uint8_t* c = tables->chi0();
      for (auto [a, b] : pairs) {
        exhaustive_run(
            [&] {
              // |v| = 2 needs chi(n) = chi(n-a-b) != chi(n-a) = chi(n-b)
              const std::uint64_t bad = count_where(0, pqr, [&](std::int64_t n) {
                return (c[n] == c[n - a - b]) & (c[n - a] == c[n - b]) & (c[n] != c[n - a]);
              });
              return Count{static_cast<std::uint64_t>(pqr), bad};
            },
            [&] {
              for (std::int64_t n = 0; n < pqr; ++n) check(a, b, n);
            },
            tally);
      }
      return;
    }
    Draw draw(smp.seed);
    for (std::uint64_t i = 0; i < *smp.samples; ++i) {
      const std::int64_t n = draw(0, pqr - 1);
      for (auto [a, b] : pairs) check(a, b, n);
    }
  }

  // --- Eqs (2.4)-(2.6), each with every element as pivot ---

  // Positions n in [0, pqr) with chi(n) != chi(n - ab), split by whether c
  // divides n. Shared by the three kernels of one pivot.
  struct ShiftChanges {
    std::int64_t off_multiples = 0;
    std::int64_t at_multiples = 0;
    std::int64_t rising_at_multiples = 0;  // chi(n) = 1, chi(n - ab) = 0
  };
  mutable std::array<std::optional<ShiftChanges>, 3> shift_cache;

  const ShiftChanges& shift_changes(Pivot pv) const {
    auto& slot = shift_cache[static_cast<std::size_t>(pv)];
    if (!slot) {
      const auto [ab, c] = pivot_parts(pv);
      const std::uint8_t* t0 = tables->chi0();
      const auto all = static_cast<std::int64_t>(count_where(0, pqr, [&](std::int64_t n) { return t0[n] != t0[n - ab]; }));
      ShiftChanges sc;
      for (std::int64_t n = 0; n < pqr; n += c) {
        sc.at_multiples += t0[n] != t0[n - ab];
        sc.rising_at_multiples += t0[n] == 1 && t0[n - ab] == 0;
      }
      sc.off_multiples = all - sc.at_multiples;
      slot = sc;
    }
    return *slot;
  }

  void eq2_4(const Sampling& smp, Tally& tally) const {
    for (Pivot pv : kAllPivots) {
      const auto [ab, c] = pivot_parts(pv);
      auto exempt = [&](std::int64_t n) {
        const Representation rep = ctx.decompose(n);
        return component(rep, pv) == 0 && rep.delta == 0;
      };
      auto check = [&](std::int64_t n) {
        const int now = chi(n), before = chi(n - ab);
        tally.record(now == before || exempt(n), [&] {
          return json{{"n", n}, {"pivot", c}, {"chi_n", now}, {"chi_n_minus_pq", before}};
        });
      };
      if (exhaustive) {
        exhaustive_run(
            [&] {
              // Every change must sit at an exempt n: z_n = 0 iff c | n, and
              // delta_n = 0 iff chi(n) = 1.
              const ShiftChanges& sc = shift_changes(pv);
              const std::int64_t bad = sc.off_multiples + sc.at_multiples - sc.rising_at_multiples;
              return Count{static_cast<std::uint64_t>(pqr), static_cast<std::uint64_t>(bad)};
            },
            [&] {
              for (std::int64_t n = 0; n < pqr; ++n) check(n);
            },
            tally);
      } else {
        Draw draw(smp.seed + static_cast<std::uint64_t>(pv));
        for (std::uint64_t i = 0; i < *smp.samples; ++i) check(draw(0, pqr - 1));
      }
    }
  }

  // chi(kc + t*ab) = chi(kc) for 0 <= t < c, |k| < ab, argument below pqr.
  void eq2_5(const Sampling& smp, Tally& tally) const {
    for (Pivot pv : kAllPivots) {
      const auto [ab, c] = pivot_parts(pv);
      auto check = [&](std::int64_t k, std::int64_t t_) {
        tally.record(chi(k * c + t_ * ab) == chi(k * c), [&] { return json{{"k", k}, {"t", t_}, {"pivot", c}}; });
      };
      if (exhaustive) {
        exhaustive_run(
            [&] {
              // Each point with t >= 1 compares n = kc + t*ab with n - ab.
              // Those n are exactly the ones in [0, pqr) off the multiples of
              // c (plus negative n, where both sides vanish).
              // Points: c per k <= 0, c - floor(kc/ab) per k > 0, and the
              // floors sum to (ab-1)(c-1)/2 since gcd(ab, c) = 1.
              Count cnt;
              cnt.points = static_cast<std::uint64_t>(ab * c + (ab - 1) * c - (ab - 1) * (c - 1) / 2);
              cnt.bad = static_cast<std::uint64_t>(shift_changes(pv).off_multiples);
              return cnt;
            },
            [&] {
              for (std::int64_t k = -ab + 1; k < ab; ++k) {
                for (std::int64_t t_ = 0; t_ < c && k * c + t_ * ab < pqr; ++t_) check(k, t_);
              }
            },
            tally);
      } else {
        Draw draw(smp.seed + static_cast<std::uint64_t>(pv));
        for (std::uint64_t i = 0; i < *smp.samples;) {
          const std::int64_t k = draw(-ab + 1, ab - 1), t_ = draw(0, c - 1);
          if (k * c + t_ * ab >= pqr) continue;
          check(k, t_);
          ++i;
        }
      }
    }
  }

  // chi(kc - t*ab) = 0 for 1 <= t <= c, 0 <= k < ab. Negative k and larger t
  // only reach negative arguments.
  void eq2_6(const Sampling& smp, Tally& tally) const {
    for (Pivot pv : kAllPivots) {
      const auto [ab, c] = pivot_parts(pv);
      auto check = [&](std::int64_t k, std::int64_t t_) {
        tally.record(chi(k * c - t_ * ab) == 0, [&] { return json{{"k", k}, {"t", t_}, {"pivot", c}}; });
      };
      if (exhaustive) {
        exhaustive_run(
            [&] {
              // kc - t*ab is never a multiple of c for 1 <= t < c, so with no
              // changes off the multiples each chain descends unchanged to a
              // negative argument, where chi vanishes.
              std::uint64_t bad = 0;
              if (shift_changes(pv).off_multiples != 0) {
                for (std::int64_t k = 0; k < ab; ++k) {
                  for (std::int64_t t_ = 1; t_ <= c; ++t_) bad += static_cast<std::uint64_t>(chi(k * c - t_ * ab));
                }
              }
              return Count{static_cast<std::uint64_t>(ab * c), bad};
            },
            [&] {
              for (std::int64_t k = 0; k < ab; ++k) {
                for (std::int64_t t_ = 1; t_ <= c; ++t_) check(k, t_);
              }
            },
            tally);
      } else {
        Draw draw(smp.seed + static_cast<std::uint64_t>(pv));
        for (std::uint64_t i = 0; i < *smp.samples; ++i) check(draw(0, ab - 1), draw(1, c));
      }
    }
  }

  // --- Lemma 3 ---

  // Some multiple n of r in (m-q-p, m-q] U (m-p, m] has chi(n) = 1 or
  // chi(n-r) = 1.
  bool lemma3_exception(std::int64_t m) const {
    auto scan = [&](std::int64_t lo, std::int64_t hi) {  // (lo, hi]
      std::int64_t n = (lo >= 0 ? lo / r : -((-lo + r - 1) / r)) * r;
      if (n <= lo) n += r;
      for (; n <= hi; n += r) {
        if (chi(n) == 1 || chi(n - r) == 1) return true;
      }
      return false;
    };
    return scan(m - q - p, m - q) || scan(m - p, m);
  }

  void lemma3(const Sampling& smp, Tally& tally) const {
    auto check = [&](std::int64_t m) {
      const std::int64_t a = coeff(m), b = coeff(m - pq);
      tally.record(a == b || lemma3_exception(m), [&] { return json{{"m", m}, {"a_m", a}, {"a_m_minus_pq", b}}; });
    };
    if (exhaustive) {
      const std::int32_t* a = padded.data() + pq;
      exhaustive_run(
          [&] {
            // Mark the exceptions from each qualifying multiple n = kr: m in
            // [n, n+p) or [n+q, n+q+p).
            const std::uint8_t* t0 = tables->chi0();
            std::vector<std::uint8_t> excepted(static_cast<std::size_t>(pqr), 0);
            for (std::int64_t n = 0; n < pqr; n += r) {
              if (!(t0[n] | t0[n - r])) continue;
              for (std::int64_t off : {std::int64_t{0}, q}) {
                const std::int64_t lo = n + off, hi = std::min(n + off + p, pqr);
                for (std::int64_t m = lo; m < hi; ++m) excepted[static_cast<std::size_t>(m)] = 1;
              }
            }
            const std::uint8_t* ex = excepted.data();
            std::int32_t bad = 0;
            for (std::int64_t m = 0; m < pqr; ++m) bad += (a[m] != a[m - pq]) & (ex[m] == 0);
            return Count{static_cast<std::uint64_t>(pqr), static_cast<std::uint64_t>(bad)};
          },
          [&] {
            for (std::int64_t m = 0; m < pqr; ++m) check(m);
          },
          tally);
      return;
    }
    Draw draw(smp.seed);
    for (std::uint64_t i = 0; i < *smp.samples; ++i) check(draw(0, pqr - 1));
  }

  // --- Lemma 4, every pivot ---

  void lemma4(const Sampling& smp, Tally& tally) const {
    for (Pivot pv : kAllPivots) {
      const FFunction f(t, pv);
      const std::int64_t ab = f.modulus(), c = f.pivot_value();
      auto check = [&](std::int64_t n) {
        const std::int64_t fn = f(n);
        const int predicted = fn <= n / c ? 1 : 0;
        tally.record(predicted == chi(n), [&] {
          return json{{"n", n}, {"pivot", c}, {"f", fn}, {"floor", n / c}, {"chi", chi(n)}};
        });
      };
      if (exhaustive) {
        // f depends only on n mod ab, and f(n) <= floor(n/c) iff n >= c*f(n).
        std::vector<std::int32_t> threshold(static_cast<std::size_t>(ab));
        for (std::int64_t rho = 0, res = 0; rho < ab; ++rho) {
          const std::int64_t fr = f.residue_in_semigroup(res) ? res : res + ab;
          threshold[static_cast<std::size_t>(rho)] = static_cast<std::int32_t>(c * fr);
          res += f.pivot_inverse();
          if (res >= ab) res -= ab;
        }
        const std::uint8_t* t0 = tables->chi0();
        const std::int32_t* th = threshold.data();
        exhaustive_run(
            [&] {
              std::uint64_t bad = 0;
              for (std::int64_t base = 0; base < pqr; base += ab) {
                const auto len = static_cast<std::int32_t>(std::min(ab, pqr - base));
                const auto b32 = static_cast<std::int32_t>(base);
                const std::uint8_t* row = t0 + base;
                std::int32_t row_bad = 0;
                for (std::int32_t i = 0; i < len; ++i) {
                  row_bad += static_cast<std::int32_t>(row[i]) != static_cast<std::int32_t>(b32 + i >= th[i]);
                }
                bad += static_cast<std::uint64_t>(row_bad);
              }
              return Count{static_cast<std::uint64_t>(pqr), bad};
            },
            [&] {
              for (std::int64_t n = 0; n < pqr; ++n) check(n);
            },
            tally);
      } else {
        Draw draw(smp.seed + static_cast<std::uint64_t>(pv));
        for (std::uint64_t i = 0; i < *smp.samples; ++i) check(draw(0, pqr - 1));
      }
    }
  }

  // --- Lemma 5 ---

  // f_r(n) = f_s(n') for s = r and n' = n (mod pq), with both sides read off
  // the full decompositions rather than the residue formula.
  void lemma5(const Sampling& smp, Tally& tally) const {
    const std::int64_t s0 = least_nonneg_residue(r, pq).value;
    const std::array<std::int64_t, 2> companions{s0, s0 + pq};
    std::vector<TripleContext> ctxs;
    for (auto sv : companions) ctxs.emplace_back(Triple{p, q, sv});
    auto f_of = [&](const TripleContext& cx, std::int64_t n) {
      const Representation rep = cx.decompose(n);
      return rep.x * q + rep.y * p;
    };
    auto check = [&](std::int64_t n, std::int64_t n2, std::size_t which) {
      const std::int64_t lhs = f_of(ctx, n), rhs = f_of(ctxs[which], n2);
      tally.record(lhs == rhs, [&] {
        return json{{"n", n}, {"n_prime", n2}, {"s", companions[which]}, {"f_r", lhs}, {"f_s", rhs}};
      });
    };
    if (exhaustive) {
      // n' runs over [0, pq) for s and [pq, 2pq) for s + pq.
      std::array<std::vector<std::int64_t>, 2> period;
      for (std::size_t w = 0; w < 2; ++w) {
        period[w].resize(static_cast<std::size_t>(pq));
        for (std::int64_t n2 = 0; n2 < pq; ++n2) {
          period[w][static_cast<std::size_t>(n2)] = f_of(ctxs[w], n2 + static_cast<std::int64_t>(w) * pq);
        }
      }
      exhaustive_run(
          [&] {
            // x_n, y_n step by fixed increments as n advances by one.
            const Representation d1 = ctx.decompose(1), d0 = ctx.decompose(0);
            const std::int64_t dx = (d1.x - d0.x + p) % p, dy = (d1.y - d0.y + q) % q;
            std::int64_t x = d0.x, y = d0.y, res = 0;
            // x_n is affine in n mod p and y_n in n mod q, so f_r has period
            // pq and one period covers every n in [0, pqr).
            std::uint64_t bad = 0;
            for (; res < pq; ++res) {
              const std::int64_t fr = x * q + y * p;
              bad += (fr != period[0][static_cast<std::size_t>(res)]) + (fr != period[1][static_cast<std::size_t>(res)]);
              x += dx;
              if (x >= p) x -= p;
              y += dy;
              if (y >= q) y -= q;
            }
            return Count{2 * static_cast<std::uint64_t>(pqr), bad * static_cast<std::uint64_t>(r)};
          },
          [&] {
            for (std::int64_t n = 0; n < pqr; ++n) {
              const std::int64_t res = n % pq;
              check(n, res, 0);
              check(n, res + pq, 1);
            }
          },
          tally);
      return;
    }
    Draw draw(smp.seed);
    for (std::uint64_t i = 0; i < *smp.samples; ++i) {
      const std::int64_t n = draw(-pqr, pqr - 1);
      const std::int64_t shift = draw(-r, r);
      const auto which = static_cast<std::size_t>(draw(0, 1));
      check(n, n + shift * pq, which);
    }
  }

  // --- Lemmas 6 and 7 ---

  std::int64_t sigma1(std::int64_t m) const {
    return sigma(s, m) - sigma(s, m - p) - sigma(s, m - q) + sigma(s, m - q - p);
  }

  std::int64_t sigma2(std::int64_t m) const {
    return sigma(p, m - s) - sigma(p, m - s - pq) - sigma(p, m - q - s) + sigma(p, m - q - s - pq);
  }

  void for_each_sampled_m(const Sampling& smp, const auto& check) const {
    Draw draw(smp.seed);
    for (std::uint64_t i = 0; i < *smp.samples; ++i) check(draw(0, pqr - 1));
  }

  void lemma6(const Sampling& smp, Tally& tally) const {
    auto check = [&](std::int64_t m) {
      const std::int64_t a = coeff(m), s1 = sigma1(m), s2 = sigma2(m);
      tally.record(a == s1 + s2, [&] { return json{{"m", m}, {"a_m", a}, {"sigma1", s1}, {"sigma2", s2}}; });
    };
    if (!exhaustive) {
      for_each_sampled_m(smp, check);
      return;
    }
    const std::int32_t* P = tables->pre0();
    const std::int32_t* a = padded.data() + pq;
    exhaustive_run(
        [&] {
          std::int32_t bad = 0;
          for (std::int64_t m = 0; m < pqr; ++m) {
            const std::int32_t s1 = (P[m] - P[m - s]) - (P[m - p] - P[m - p - s]) - (P[m - q] - P[m - q - s]) +
                                    (P[m - q - p] - P[m - q - p - s]);
            const std::int64_t u = m - s, v = m - q - s;
            const std::int32_t s2 = (P[u] - P[u - p]) - (P[u - pq] - P[u - pq - p]) - (P[v] - P[v - p]) +
                                    (P[v - pq] - P[v - pq - p]);
            bad += a[m] != s1 + s2;
          }
          return Count{static_cast<std::uint64_t>(pqr), static_cast<std::uint64_t>(bad)};
        },
        [&] {
          for (std::int64_t m = 0; m < pqr; ++m) check(m);
        },
        tally);
  }

  // Sigma_2 reduces to +chi(alpha r) on I'_2, -chi(alpha r) on I'_1 and 0
  // otherwise, with alpha = floor(m / r) the only candidate multiple.
  void lemma7(const Sampling& smp, Tally& tally) const {
    auto in = [](std::int64_t v, std::int64_t lo, std::int64_t hi) { return lo < v && v <= hi; };
    auto check = [&](std::int64_t m) {
      const std::int64_t alpha = m / r;
      int multiples = 0;
      for (std::int64_t a2 = alpha - 2; a2 <= alpha + 1; ++a2) {
        const std::int64_t v = a2 * r;
        multiples += in(v, m - s - q - p, m - s - q) || in(v, m - s - p, m - s);
      }
      const std::int64_t ar = alpha * r;
      std::int64_t correction = 0;
      int which = 0;
      if (in(ar, m - s - p, m - s)) {
        which = 2;
        correction = chi(ar);
      } else if (in(ar, m - s - q - p, m - s - q)) {
        which = 1;
        correction = -chi(ar);
      }
      const std::int64_t a = coeff(m), s1 = sigma1(m);
      const bool ok = multiples <= 1 && (multiples == 0 || which != 0) && a == s1 + correction;
      tally.record(ok, [&] {
        return json{{"m", m}, {"a_m", a}, {"sigma1", s1}, {"interval", which}, {"chi_alpha_r", chi(ar)},
                    {"multiples", multiples}};
      });
    };
    if (!exhaustive) {
      for_each_sampled_m(smp, check);
      return;
    }
    const std::int32_t* P = tables->pre0();
    const std::uint8_t* t0 = tables->chi0();
    const std::int32_t* a = padded.data() + pq;
    exhaustive_run(
        [&] {
          // r > s + q + p keeps (alpha - 1) r below both intervals.
          if (r <= s + q + p) return Count{0, 1};
          std::uint64_t bad = 0;
          for (std::int64_t base = 0; base < pqr; base += r) {
            const std::int32_t ca = t0[base];
            const std::int64_t len = std::min(r, pqr - base);
            const std::int32_t* ab = a + base;
            const std::int32_t* Pb = P + base;
            std::int32_t row_bad = 0;
            for (std::int64_t off = 0; off < len; ++off) {
              const std::int32_t s1 = (Pb[off] - Pb[off - s]) - (Pb[off - p] - Pb[off - p - s]) -
                                      (Pb[off - q] - Pb[off - q - s]) + (Pb[off - q - p] - Pb[off - q - p - s]);
              const std::int32_t corr = (off >= s && off < s + p)             ? ca
                                        : (off >= s + q && off < s + q + p) ? -ca
                                                                            : 0;
              row_bad += ab[off] != s1 + corr;
            }
            bad += static_cast<std::uint64_t>(row_bad);
          }
          return Count{static_cast<std::uint64_t>(pqr), bad};
        },
        [&] {
          for (std::int64_t m = 0; m < pqr; ++m) check(m);
        },
        tally);
  }

  // --- Lemmas 9-11, against the companion {p, q, s} ---

  void lemma9(const Sampling& smp, Tally& tally) const {
    auto check = [&](std::int64_t k, std::int64_t j) {
      const int lhs = chi(k * r + j), rhs = chi_c(k * s + j);
      tally.record(lhs == rhs, [&] { return json{{"k", k}, {"j", j}, {"chi", lhs}, {"chi_prime", rhs}}; });
    };
    if (exhaustive) {
      const std::uint8_t* t0 = tables->chi0();
      const std::uint8_t* c0 = comp_tables->chi0();
      exhaustive_run(
          [&] {
            std::uint64_t bad = 0;
            for (std::int64_t k = -pq + 1; k < pq; ++k) {
              const std::uint8_t* x = t0 + k * r;
              const std::uint8_t* y = c0 + k * s;
              std::int32_t row_bad = 0;
              for (std::int64_t j = -s + 1; j < s; ++j) row_bad += x[j] != y[j];
              bad += static_cast<std::uint64_t>(row_bad);
            }
            return Count{static_cast<std::uint64_t>((2 * pq - 1) * (2 * s - 1)), bad};
          },
          [&] {
            for (std::int64_t k = -pq + 1; k < pq; ++k) {
              for (std::int64_t j = -s + 1; j < s; ++j) check(k, j);
            }
          },
          tally);
      return;
    }
    Draw draw(smp.seed);
    for (std::uint64_t i = 0; i < *smp.samples; ++i) check(draw(-pq + 1, pq - 1), draw(-s + 1, s - 1));
  }

  void lemma10(const Sampling& smp, Tally& tally) const {
    auto check = [&](std::int64_t k, std::int64_t j, std::int64_t beta) {
      const int lhs = chi(k * r + j + beta * pq), rhs = chi(k * r + j);
      tally.record(lhs == rhs, [&] { return json{{"k", k}, {"j", j}, {"beta", beta}}; });
    };
    if (exhaustive) {
      const std::uint8_t* t0 = tables->chi0();
      exhaustive_run(
          [&] {
            Count cnt;
            for (std::int64_t k = -pq + 1; k < pq; ++k) {
              const std::uint8_t* y = t0 + k * r;
              for (std::int64_t beta = -bmax; beta <= bmax; ++beta) {
                const std::uint8_t* x = y + beta * pq;
                // j in (-s, s) minus 0, with k r + j + beta pq < pqr
                const std::int64_t hi = std::min(s, pqr - k * r - beta * pq);
                std::int32_t row_bad = 0;
                for (std::int64_t j = -s + 1; j < std::min<std::int64_t>(hi, 0); ++j) row_bad += x[j] != y[j];
                for (std::int64_t j = 1; j < hi; ++j) row_bad += x[j] != y[j];
                cnt.bad += static_cast<std::uint64_t>(row_bad);
                cnt.points += static_cast<std::uint64_t>(std::max<std::int64_t>(0, std::min<std::int64_t>(hi, 0) + s - 1) +
                                                         std::max<std::int64_t>(0, hi - 1));
              }
            }
            return cnt;
          },
          [&] {
            for (std::int64_t k = -pq + 1; k < pq; ++k) {
              for (std::int64_t j = -s + 1; j < s; ++j) {
                if (j == 0) continue;
                for (std::int64_t beta = -bmax; beta <= bmax && k * r + j + beta * pq < pqr; ++beta) check(k, j, beta);
              }
            }
          },
          tally);
      return;
    }
    if (s < 2) return;  // 0 < |j| < s is empty
    Draw draw(smp.seed);
    for (std::uint64_t i = 0; i < *smp.samples;) {
      const std::int64_t k = draw(-pq + 1, pq - 1), beta = draw(-bmax, bmax);
      std::int64_t j = draw(-s + 1, s - 2);
      if (j >= 0) ++j;
      if (k * r + j + beta * pq >= pqr) continue;
      check(k, j, beta);
      ++i;
    }
  }

  void lemma11(const Sampling& smp, Tally& tally) const {
    auto check = [&](std::int64_t k, std::int64_t g, std::int64_t beta) {
      const std::int64_t lhs = sigma(s, k * r + g + beta * pq) - chi(k * r + beta * pq);
      const std::int64_t mid = sigma_c(s, k * s + g) - chi_c(k * s);
      const std::int64_t rhs = sigma_c(s, k * s + g - pq);
      tally.record(lhs == mid && mid == rhs, [&] {
        return json{{"k", k}, {"gamma", g}, {"beta", beta}, {"lhs", lhs}, {"mid", mid}, {"rhs", rhs}};
      });
    };
    if (exhaustive) {
      const std::int32_t* P = tables->pre0();
      const std::uint8_t* t0 = tables->chi0();
      const std::int32_t* Pc = comp_tables->pre0();
      const std::uint8_t* c0 = comp_tables->chi0();
      exhaustive_run(
          [&] {
            Count cnt;
            for (std::int64_t k = -pq + 1; k < pq; ++k) {
              const std::int32_t* pc = Pc + k * s;
              const std::int32_t cc = c0[k * s];
              for (std::int64_t beta = -bmax; beta <= bmax; ++beta) {
                const std::int64_t b = k * r + beta * pq;
                const std::int64_t len = std::min(s, pqr - b);
                if (len <= 0) break;
                const std::int32_t* pb = P + b;
                const std::int32_t cb = t0[b];
                std::int32_t row_bad = 0;
                for (std::int64_t g = 0; g < len; ++g) {
                  const std::int32_t lhs = pb[g] - pb[g - s] - cb;
                  const std::int32_t mid = pc[g] - pc[g - s] - cc;
                  const std::int32_t rhs = pc[g - pq] - pc[g - pq - s];
                  row_bad += (lhs != mid) | (mid != rhs);
                }
                cnt.bad += static_cast<std::uint64_t>(row_bad);
                cnt.points += static_cast<std::uint64_t>(len);
              }
            }
            return cnt;
          },
          [&] {
            for (std::int64_t k = -pq + 1; k < pq; ++k) {
              for (std::int64_t g = 0; g < s; ++g) {
                for (std::int64_t beta = -bmax; beta <= bmax && k * r + g + beta * pq < pqr; ++beta) check(k, g, beta);
              }
            }
          },
          tally);
      return;
    }
    Draw draw(smp.seed);
    for (std::uint64_t i = 0; i < *smp.samples;) {
      const std::int64_t k = draw(-pq + 1, pq - 1), g = draw(0, s - 1), beta = draw(-bmax, bmax);
      if (k * r + g + beta * pq >= pqr) continue;
      check(k, g, beta);
      ++i;
    }
  }
};

std::string_view lemma_name(LemmaId id) {
  for (const auto& e : kNames) {
    if (e.id == id) return e.name;
  }
  return "?";
}

LemmaId parse_lemma_id(std::string_view name) {
  for (const auto& e : kNames) {
    if (e.name == name) return e.id;
  }
  throw UnknownLemma("unknown lemma id '" + std::string(name) + "'");
}

bool lemma_applies(LemmaId id, const Triple& t) {
  if (!is_valid(t) || !t.ternary()) return false;
  if (!needs_companion(id)) return true;
  const std::int64_t s = t.r - t.p * t.q;
  if (s < 1) return false;
  if (id == LemmaId::lemma7) return t.p < t.q;
  if (uses_companion_chi(id) || id == LemmaId::lemma10) return is_valid(Triple{t.p, t.q, s});
  return true;
}

LemmaWorkspace::LemmaWorkspace(const Triple& t, bool exhaustive, const EngineLimits& limits)
    : impl_(std::make_unique<Impl>(t, exhaustive, limits)) {}

LemmaWorkspace::~LemmaWorkspace() = default;

VerificationReport LemmaWorkspace::verify(LemmaId id, const Sampling& sampling) const {
  const Impl& w = *impl_;
  if (w.exhaustive != !sampling.samples.has_value()) {
    throw InvalidParameters("workspace mode does not match the requested sampling");
  }
  if (sampling.samples && *sampling.samples == 0) throw InvalidParameters("need at least one sample");
  if (!lemma_applies(id, w.t)) {
    throw PreconditionViolated("hypothesis of " + std::string(lemma_name(id)) + " fails for " + w.t.str() +
                               " (roles as given)");
  }

  VerificationReport rep;
  rep.check_id = std::string(lemma_name(id));
  rep.instance = {{"p", w.p}, {"q", w.q}, {"r", w.r}};
  if (needs_companion(id)) rep.instance.emplace_back("s", w.s);
  if (sampling.samples) rep.seed = sampling.seed;

  Tally tally;
  switch (id) {
    case LemmaId::lemma2: w.lemma2(sampling, tally); break;
    case LemmaId::lemma3: w.lemma3(sampling, tally); break;
    case LemmaId::lemma4: w.lemma4(sampling, tally); break;
    case LemmaId::lemma5: w.lemma5(sampling, tally); break;
    case LemmaId::lemma6: w.lemma6(sampling, tally); break;
    case LemmaId::lemma7: w.lemma7(sampling, tally); break;
    case LemmaId::lemma9: w.lemma9(sampling, tally); break;
    case LemmaId::lemma10: w.lemma10(sampling, tally); break;
    case LemmaId::lemma11: w.lemma11(sampling, tally); break;
    case LemmaId::eq2_4: w.eq2_4(sampling, tally); break;
    case LemmaId::eq2_5: w.eq2_5(sampling, tally); break;
    case LemmaId::eq2_6: w.eq2_6(sampling, tally); break;
  }

  rep.passed = tally.failures == 0;
  rep.witness = tally.witness;
  rep.values["mode"] = sampling.samples ? "sampled" : "exhaustive";
  rep.values["points"] = tally.points;
  rep.values["failures"] = tally.failures;
  rep.detail = std::to_string(tally.points) + " points, " + std::to_string(tally.failures) + " failures";
  return rep;
}

VerificationReport verify_lemma(LemmaId id, const Triple& t, const LemmaAux& aux, const Sampling& sampling,
                                const EngineLimits& limits) {
  if (aux.s && (*aux.s < 1 || t.r != t.p * t.q + *aux.s)) {
    throw PreconditionViolated("hypothesis failed: r = pq + s with s = " + std::to_string(*aux.s));
  }
  if (!lemma_applies(id, t)) {
    throw PreconditionViolated("hypothesis of " + std::string(lemma_name(id)) + " fails for " + t.str() +
                               " (roles as given)");
  }
  LemmaWorkspace ws(t, !sampling.samples.has_value(), limits);
  return ws.verify(id, sampling);
}

VerificationReport verify_lemma(std::string_view id, const Triple& t, const LemmaAux& aux, const Sampling& sampling,
                                const EngineLimits& limits) {
  return verify_lemma(parse_lemma_id(id), t, aux, sampling, limits);
}

}  // namespace iep
