#include "iep/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "iep/error.hpp"
#include "iep/height.hpp"
#include "iep/parallel.hpp"
#include "iep/poly.hpp"
#include "iep/reference.hpp"
#include "iep/search.hpp"
#include "iep/theorems.hpp"
#include "iep/version.hpp"

namespace iep::cli {

namespace {

using json = nlohmann::ordered_json;

std::int64_t parse_int(const std::string& text, const char* what) {
  std::int64_t v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw InvalidParameters(std::string("expected an integer for ") + what + ", got '" + text + "'");
  }
  return v;
}

std::vector<std::int64_t> parse_ints(const std::vector<std::string>& params, std::size_t count, const std::string& usage) {
  if (params.size() != count) throw InvalidParameters("expected " + usage);
  std::vector<std::int64_t> out;
  for (const auto& p : params) out.push_back(parse_int(p, "a parameter"));
  return out;
}

Triple canonical_triple(std::int64_t a, std::int64_t b, std::int64_t c) {
  const Triple t = Triple{a, b, c}.canonical();
  validate(t);
  return t;
}

// Output sink: stdout buffer or a file.
void emit(CommandOutcome& out, const std::string& path, const std::string& payload) {
  if (path.empty() || path == "-") {
    out.rendered += payload;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << payload;
  if (!f) throw PersistenceError("cannot write " + path);
}

struct CoeffsArgs {
  std::vector<std::int64_t> triple;
  std::string engine = "series";
  bool half = false;
  std::string format = "text";
  std::string out;
};

CommandOutcome cmd_coeffs(const CoeffsArgs& a, const EngineLimits& limits) {
  CommandOutcome out;
  const Triple t = canonical_triple(a.triple[0], a.triple[1], a.triple[2]);
  const CoeffFormat format = parse_coeff_format(a.format);
  const SeriesMode mode = a.half ? SeriesMode::half : SeriesMode::full;
  CoefficientVector v;
  if (a.engine == "series") {
    v = coeffs_series(t, mode, limits);
  } else if (a.engine == "chi") {
    v = coeffs_chi(t, limits);
  } else if (a.engine == "both") {
    v = coeffs_series(t, mode, limits);
    const CoefficientVector w = coeffs_chi(t, limits);
    for (std::size_t i = 0; i < v.coeffs.size(); ++i) {
      if (v.coeffs[i] != w.coeffs[i]) {
        out.exit_code = kCheckFailed;
        out.diagnostics = "engines disagree on Q" + t.str() + " at m=" + std::to_string(i) + ": series " +
                          std::to_string(v.coeffs[i]) + ", chi " + std::to_string(w.coeffs[i]);
        return out;
      }
    }
    out.diagnostics = "series and chi engines agree on all " + std::to_string(v.coeffs.size()) + " coefficients";
  } else {
    throw InvalidParameters("unknown engine '" + a.engine + "' (expected series, chi or both)");
  }
  std::ostringstream ss;
  write_coefficients(ss, v, format);
  emit(out, a.out, ss.str());
  return out;
}

CommandOutcome cmd_height(const std::vector<std::int64_t>& triple, bool as_json, const EngineLimits& limits) {
  CommandOutcome out;
  const Triple t = canonical_triple(triple[0], triple[1], triple[2]);
  const HeightRecord rec = height(t, limits);
  if (as_json) {
    out.rendered = to_json_line(rec) + "\n";
    return out;
  }
  std::ostringstream ss;
  ss << "A" << t.str() << " = " << rec.height << "\n"
     << "  min coefficient  " << rec.a_minus << "\n"
     << "  max coefficient  " << rec.a_plus << "\n"
     << "  max |a_m|        " << rec.literal_max << "\n"
     << "  flat             " << (rec.flat ? "yes" : "no") << "\n";
  out.rendered = ss.str();
  return out;
}

int sign_argument(const std::string& text) {
  if (text == "+" || text == "plus") return 1;
  if (text == "-" || text == "minus") return -1;
  const std::int64_t v = parse_int(text, "the sign");
  if (v == 1 || v == -1) return static_cast<int>(v);
  throw InvalidParameters("sign must be +1 or -1, got '" + text + "'");
}

struct VerifyArgs {
  std::string check;
  std::vector<std::string> params;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 0;
  std::string sign = "auto";
  std::optional<std::int64_t> s;
};

VerificationReport run_verify(const VerifyArgs& a, const EngineLimits& limits) {
  const auto& id = a.check;
  if (id == "eq1.5") {
    auto v = parse_ints(a.params, 4, "eq1.5 P Q R S");
    return verify_eq_1_5(v[0], v[1], v[2], v[3], limits);
  }
  if (id == "eq1.6") {
    auto v = parse_ints(a.params, 4, "eq1.6 P Q R S");
    SignRelation rel = SignRelation::automatic;
    if (a.sign == "same") {
      rel = SignRelation::same;
    } else if (a.sign == "opposite") {
      rel = SignRelation::opposite;
    } else if (a.sign != "auto") {
      throw InvalidParameters("--sign must be auto, same or opposite");
    }
    return verify_eq_1_6(v[0], v[1], v[2], v[3], rel, limits);
  }
  if (id == "main") {
    auto v = parse_ints(a.params, 4, "main P Q S R");
    return verify_main_theorem(v[0], v[1], v[2], v[3], limits);
  }
  if (id == "corollary") {
    auto v = parse_ints(a.params, 4, "corollary P Q S R");
    return verify_corollary(v[0], v[1], v[2], v[3], limits);
  }
  if (id == "iterated") {
    if (a.params.size() != 3) throw InvalidParameters("expected iterated P Q SIGN");
    return verify_iterated_bound(parse_int(a.params[0], "P"), parse_int(a.params[1], "Q"), sign_argument(a.params[2]), limits);
  }
  if (id == "eq1.11") {
    auto v = parse_ints(a.params, 3, "eq1.11 P Q R");
    return verify_height_bound(Triple{v[0], v[1], v[2]}, limits);
  }
  const LemmaId lemma = parse_lemma_id(id);
  auto v = parse_ints(a.params, 3, std::string(id) + " P Q R (roles as given)");
  const Triple t{v[0], v[1], v[2]};
  validate(t);
  const Sampling sampling = a.samples ? Sampling::random(*a.samples, a.seed) : Sampling::exhaustive();
  return verify_lemma(lemma, t, LemmaAux{a.s}, sampling, limits);
}

CommandOutcome cmd_verify(const VerifyArgs& a, const EngineLimits& limits) {
  CommandOutcome out;
  const VerificationReport rep = run_verify(a, limits);
  out.rendered = to_json_line(rep) + "\n";
  if (!rep.passed) {
    out.exit_code = kCheckFailed;
    out.diagnostics = rep.check_id + " failed: " + rep.detail;
  }
  return out;
}

struct SearchArgs {
  std::string kind;
  std::optional<std::int64_t> s;
  std::int64_t p_min = 3, q_min = 3, r_min = 3;
  std::optional<std::int64_t> p_max, q_max, r_max, max;
  std::string out;
  std::string resume;
  unsigned workers = default_workers();
  std::optional<std::size_t> stop_after;
  bool as_json = false;
};

std::string render_solutions(const SolutionList& list, TaskKind kind) {
  std::ostringstream ss;
  ss << (kind == TaskKind::eq13 ? "A(p,q,pq+s) = s" : "A(p,q,pq+s) = M(s) + 1") << " with s = " << list.s;
  if (list.m_hat) {
    ss << ", M(s) bounded by " << *list.m_hat << (list.conditional ? " (conditional on the bounded search)" : " (exact)");
  }
  ss << "\n  pairs examined: " << list.pairs_examined << "\n  solutions: " << list.solutions.size() << "\n";
  for (const auto& sol : list.solutions) {
    ss << "    (" << sol.p << ", " << sol.q << ")  r = " << sol.r << "  A = " << sol.height << "\n";
  }
  return ss.str();
}

CommandOutcome cmd_search(const SearchArgs& a, const EngineLimits& limits) {
  CommandOutcome out;
  const TaskKind kind = parse_task_kind(a.kind);
  const std::int64_t fallback = a.max.value_or(0);
  auto hi = [&](const std::optional<std::int64_t>& v, const char* name) {
    if (v) return *v;
    if (a.max) return fallback;
    throw InvalidParameters(std::string("search needs --") + name + "-max or --max");
  };
  const bool pairs = kind == TaskKind::eq13 || kind == TaskKind::eq14;
  if (a.workers == 0) throw InvalidParameters("--workers must be at least 1");

  const std::string target = !a.resume.empty() ? a.resume : a.out;
  if (target.empty()) {
    if (!pairs) throw InvalidParameters("search " + a.kind + " needs --out FILE or --resume FILE");
    if (!a.s) throw InvalidParameters("search " + a.kind + " needs --s");
    const std::int64_t p_max = hi(a.p_max, "p");
    SolutionList list = kind == TaskKind::eq13
                            ? find_eq13_solutions(*a.s, p_max, a.q_max.value_or(a.max.value_or(p_max)), a.workers, limits)
                            : find_eq14_solutions(*a.s, p_max, a.workers, limits);
    out.rendered = a.as_json ? to_json(list).dump() + "\n" : render_solutions(list, kind);
    return out;
  }

  SearchTask task;
  task.kind = kind;
  task.s = a.s;
  task.ranges.p = {a.p_min, hi(a.p_max, "p")};
  task.ranges.q = {a.q_min, hi(a.q_max, "q")};
  if (!pairs) task.ranges.r = {a.r_min, hi(a.r_max, "r")};
  SweepOptions opts;
  opts.out = target;
  opts.workers = a.workers;
  opts.resume = !a.resume.empty();
  opts.stop_after = a.stop_after;
  opts.limits = limits;
  const SweepSummary sum = sweep_heights(task, opts);
  json j;
  j["file"] = target;
  j["records"] = sum.total;
  j["resumed"] = sum.resumed;
  j["written"] = sum.written;
  j["errors"] = sum.errors;
  j["solutions"] = sum.solutions;
  j["complete"] = sum.complete;
  if (a.as_json) {
    out.rendered = j.dump() + "\n";
  } else {
    std::ostringstream ss;
    ss << target << ": " << sum.written << " written, " << sum.resumed << " resumed, " << sum.total << " in task";
    if (sum.errors) ss << ", " << sum.errors << " error records";
    if (pairs) ss << ", " << sum.solutions << " solutions";
    ss << (sum.complete ? "" : " (stopped early)") << "\n";
    out.rendered = ss.str();
  }
  return out;
}

CommandOutcome cmd_repro(bool as_json) {
  CommandOutcome out;
  struct Row {
    std::string check;
    std::string expected;
    std::string computed;
    bool pass;
    std::string_view quote;
  };
  std::vector<Row> rows;
  for (const auto& ref : kReferenceHeights) {
    const std::int64_t a = height(ref.triple).height;
    rows.push_back({"A" + ref.triple.str(), std::to_string(ref.height), std::to_string(a), a == ref.height, ref.quote});
  }
  for (const auto& ref : kReferenceFlat) {
    const bool flat = is_flat(ref.triple);
    rows.push_back({"flat Q" + ref.triple.str(), "yes", flat ? "yes" : "no", flat, ref.quote});
  }
  for (const auto& ref : kReferenceIdentity) {
    const CoefficientVector v = coeffs_series(ref.triple);
    const bool one = v.coeffs == std::vector<std::int64_t>{1};
    rows.push_back({"Q" + ref.triple.str(), "1", one ? "1" : "not 1", one, ref.quote});
  }

  const bool all = std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.pass; });
  if (as_json) {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back(json{{"check", r.check}, {"expected", r.expected}, {"computed", r.computed}, {"pass", r.pass},
                         {"quote", r.quote}});
    }
    out.rendered = json{{"checks", arr}, {"passed", all}}.dump() + "\n";
  } else {
    std::ostringstream ss;
    ss << std::left << std::setw(20) << "check" << std::setw(10) << "expected" << std::setw(10) << "computed"
       << std::setw(7) << "status" << "source\n";
    for (const auto& r : rows) {
      ss << std::setw(20) << r.check << std::setw(10) << r.expected << std::setw(10) << r.computed << std::setw(7)
         << (r.pass ? "ok" : "FAIL") << '"' << r.quote << "\"\n";
    }
    ss << rows.size() << " checks, " << std::count_if(rows.begin(), rows.end(), [](const Row& r) { return !r.pass; })
       << " failed\n";
    out.rendered = ss.str();
  }
  if (!all) {
    out.exit_code = kCheckFailed;
    out.diagnostics = "published values not reproduced";
  }
  return out;
}

int exit_code_for(const Error& e) {
  if (dynamic_cast<const DegreeCapExceeded*>(&e) != nullptr) return kResourceCap;
  if (dynamic_cast<const OverflowDetected*>(&e) != nullptr) return kResourceCap;
  return kUsage;
}

std::string one_line(std::string text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == ' ')) text.pop_back();
  for (auto& c : text) {
    if (c == '\n') c = ' ';
  }
  return text;
}

}  // namespace

CommandOutcome run(const std::vector<std::string>& args) {
  CLI::App app{"Ternary inclusion-exclusion polynomials: coefficients, heights, checks and searches", "iep"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  std::optional<std::int64_t> degree_cap;
  app.add_option("--degree-cap", degree_cap, "Largest polynomial degree to compute (default IEP_DEGREE_CAP or 2e7)")
      ->check(CLI::PositiveNumber);

  CoeffsArgs coeffs;
  auto* c = app.add_subcommand("coeffs", "Print the coefficients of Q_{p,q,r}");
  c->add_option("triple", coeffs.triple, "p q r")->required()->expected(3);
  c->add_option("--engine", coeffs.engine, "series, chi or both")->check(CLI::IsMember({"series", "chi", "both"}));
  c->add_flag("--half", coeffs.half, "Series engine computes the lower half and mirrors it");
  c->add_option("--format", coeffs.format, "text, csv, json or bin")->check(CLI::IsMember({"text", "csv", "json", "bin"}));
  c->add_option("--out", coeffs.out, "Output file (default stdout)");

  std::vector<std::int64_t> height_triple;
  bool height_json = false;
  auto* h = app.add_subcommand("height", "Height and coefficient range of Q_{p,q,r}");
  h->add_option("triple", height_triple, "p q r")->required()->expected(3);
  h->add_flag("--json", height_json, "One JSON object");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check one identity, bound or lemma on one instance");
  v->add_option("check", verify.check,
                "eq1.5, eq1.6, main, corollary, iterated, eq1.11, lemma2-7, lemma9-11, eq2.4-eq2.6")
      ->required();
  v->add_option("params", verify.params, "Instance parameters");
  v->add_option("--samples", verify.samples, "Random points instead of the whole domain");
  v->add_option("--seed", verify.seed, "Seed for --samples");
  v->add_option("--sign", verify.sign, "eq1.6 relation: auto, same or opposite");
  v->add_option("--s", verify.s, "Companion parameter with r = pq + s (lemmas 6-11)");

  SearchArgs search;
  auto* s = app.add_subcommand("search", "Parameter searches and persisted height sweeps");
  s->add_option("kind", search.kind, "height-sweep, eq13, eq14 or flat-hunt")->required();
  s->add_option("--s", search.s, "s for eq13 / eq14 (r = pq + s)");
  s->add_option("--p-min", search.p_min);
  s->add_option("--q-min", search.q_min);
  s->add_option("--r-min", search.r_min);
  s->add_option("--p-max", search.p_max);
  s->add_option("--q-max", search.q_max);
  s->add_option("--r-max", search.r_max);
  s->add_option("--max", search.max, "Upper bound for every range not given explicitly");
  auto* out_opt = s->add_option("--out", search.out, "Result file (JSON lines), started afresh");
  s->add_option("--resume", search.resume, "Result file to continue")->excludes(out_opt);
  s->add_option("--workers", search.workers, "Worker threads (default: hardware threads)");
  s->add_option("--stop-after", search.stop_after, "Stop after this many new records")->group("");
  s->add_flag("--json", search.as_json, "JSON output");

  bool repro_json = false;
  auto* r = app.add_subcommand("repro-paper", "Recompute every published height and flatness example");
  r->add_flag("--json", repro_json, "JSON output");

  CommandOutcome out;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out.rendered = app.help();
    return out;
  } catch (const CLI::CallForAllHelp&) {
    out.rendered = app.help("", CLI::AppFormatMode::All);
    return out;
  } catch (const CLI::CallForVersion&) {
    out.rendered = std::string(kVersion) + "\n";
    return out;
  } catch (const CLI::ParseError& e) {
    out.exit_code = kUsage;
    out.diagnostics = "usage: " + one_line(e.what());
    return out;
  }

  try {
    EngineLimits limits;
    if (degree_cap) limits.degree_cap = *degree_cap;
    if (c->parsed()) return cmd_coeffs(coeffs, limits);
    if (h->parsed()) return cmd_height(height_triple, height_json, limits);
    if (v->parsed()) return cmd_verify(verify, limits);
    if (s->parsed()) return cmd_search(search, limits);
    if (r->parsed()) return cmd_repro(repro_json);
  } catch (const Error& e) {
    out.exit_code = exit_code_for(e);
    out.diagnostics = one_line(e.what());
    return out;
  } catch (const std::exception& e) {
    out.exit_code = kUsage;
    out.diagnostics = one_line(e.what());
    return out;
  }
  out.exit_code = kUsage;
  out.diagnostics = "usage: no command given";
  return out;
}

}  // namespace iep::cli
