#pragma once

// Enumeration of canonical binomial specs, theory-vs-oracle cross-checking
// with JSONL persistence, and the line-item verification suite shared by the
// CLI and the integration tests.

#include <aglef/families.hpp>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <thread>
#include <unordered_map>

namespace aglef {

using Json = nlohmann::json;

// ---- sweep bounds --------------------------------------------------------

struct SweepBounds {
  int min_vars = 2;
  int max_vars = 4;
  int max_degree = 10;
  int max_gcd_degree = 1 << 20;    // effectively uncapped
  bool gcd_at_least_half = false;  // keep only deg g >= floor((d-1)/2)
  DecideMode mode = DecideMode::fast;
  std::uint64_t seed = kDefaultSeed;
  int jobs = 1;

  void validate() const {
    if (min_vars < 1) throw input_error("SweepBounds: min_vars must be >= 1");
    if (max_vars < min_vars)
      throw input_error("SweepBounds: max_vars below min_vars");
    if (max_degree < 1)
      throw input_error("SweepBounds: max_degree must be positive");
    if (max_gcd_degree < 0)
      throw input_error("SweepBounds: max_gcd_degree must be >= 0");
    if (jobs < 1) throw input_error("SweepBounds: jobs must be positive");
  }
};

// ---- canonical keys and per-spec seeds -------------------------------------

// "n3r2a6,2,0b2,1,3": the dedup key inside sweep files
inline std::string spec_key(const BinomialSpec& s) {
  std::string k = "n" + std::to_string(s.n) + "r" + std::to_string(s.r) + "a";
  for (int i = 0; i < s.n; ++i)
    k += (i ? "," : "") + std::to_string(s.a[i]);
  k += "b";
  for (int i = 0; i < s.n; ++i)
    k += (i ? "," : "") + std::to_string(s.b[i]);
  return k;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace detail

// stable across runs and thread schedules; recorded in every record
inline std::uint64_t spec_seed(const SweepBounds& b, const std::string& key) {
  return detail::splitmix64(b.seed ^ detail::fnv1a(key));
}

// ---- enumeration -----------------------------------------------------------

namespace detail {

// visit every length-`parts` vector of nonnegative ints summing to `total`
template <class Fn>
inline void visit_compositions(int total, int parts, Exponents& buf, int at,
                               const Fn& fn) {
  if (at + 1 == parts) {
    buf[at] = total;
    fn();
    return;
  }
  for (int v = 0; v <= total; ++v) {
    buf[at] = v;
    visit_compositions(total - v, parts, buf, at + 1, fn);
  }
}

}  // namespace detail

// All canonical specs (normalize fixed points, every variable used) with
// min_vars <= n <= max_vars and socle degree <= max_degree, in lexicographic
// (n, r, a, b) order. Raw side/gcd compositions are canonicalized by the
// same rules normalize applies: sides sorted by (b desc, a desc), b-free
// tail by a desc, and of the two side assignments the lexicographically
// larger (r, a, b) key is kept.
inline std::vector<BinomialSpec> enumerate_specs(const SweepBounds& bounds) {
  bounds.validate();
  std::vector<BinomialSpec> out;
  for (int n = std::max(2, bounds.min_vars); n <= bounds.max_vars; ++n) {
    std::set<std::vector<int>> seen;  // encoded (r, a..., b...)
    for (int nl = 1; nl < n; ++nl) {
      for (int nr = 1; nl + nr <= n; ++nr) {
        const int nt = n - nl - nr;
        Exponents lb(nl), rb(nr), av(n);
        std::vector<std::pair<int, int>> L(nl), R(nr);
        Exponents tail(nt);
        for (int s = 1; s <= bounds.max_degree; ++s) {
          if (s - nl < 0 || s - nr < 0) continue;
          const int amax =
              std::min(bounds.max_degree - s, bounds.max_gcd_degree);
          if (amax < nt) continue;
          detail::visit_compositions(s - nl, nl, lb, 0, [&] {
            detail::visit_compositions(s - nr, nr, rb, 0, [&] {
              for (int atot = nt; atot <= amax; ++atot) {
                if (bounds.gcd_at_least_half && atot < (atot + s - 1) / 2)
                  continue;
                detail::visit_compositions(atot - nt, n, av, 0, [&] {
                  for (int i = 0; i < nl; ++i) L[i] = {lb[i] + 1, av[i]};
                  for (int i = 0; i < nr; ++i) R[i] = {rb[i] + 1, av[nl + i]};
                  std::sort(L.rbegin(), L.rend());
                  std::sort(R.rbegin(), R.rend());
                  for (int i = 0; i < nt; ++i) tail[i] = av[nl + nr + i] + 1;
                  std::sort(tail.rbegin(), tail.rend());
                  auto encode = [&](const std::vector<std::pair<int, int>>& f,
                                    const std::vector<std::pair<int, int>>& g) {
                    std::vector<int> k;
                    k.reserve(1 + 2 * n);
                    k.push_back(static_cast<int>(f.size()));
                    for (auto& p : f) k.push_back(p.second);
                    for (auto& p : g) k.push_back(p.second);
                    for (int t : tail) k.push_back(t);
                    for (auto& p : f) k.push_back(p.first);
                    for (auto& p : g) k.push_back(p.first);
                    for (int i = 0; i < nt; ++i) k.push_back(0);
                    return k;
                  };
                  seen.insert(std::max(encode(L, R), encode(R, L)));
                });
              }
            });
          });
        }
      }
    }
    for (const auto& k : seen) {
      BinomialSpec sp;
      sp.n = n;
      sp.r = k[0];
      sp.a.assign(k.begin() + 1, k.begin() + 1 + n);
      sp.b.assign(k.begin() + 1 + n, k.begin() + 1 + 2 * n);
      out.push_back(std::move(sp));
    }
  }
  return out;
}

// ---- cross-checking ---------------------------------------------------------

struct CrossCheckRecord {
  BinomialSpec spec;
  std::string key;
  HVector hv;
  SpernerStats stats;
  ClassificationReport report;
  Verdict wlp, slp;
  bool agreement = true;  // no guarantee refuted by a certified verdict
  bool confirmed = true;  // every guarantee positively certified
  bool skipped = false;   // a capacity cap was hit; payload fields are empty
  std::string skip_reason;
  double millis = 0;
  std::uint64_t seed = 0;
};

// Runs the full invariant battery on one spec and compares every classified
// guarantee against the decision oracles. `agreement` may only drop on a
// certified refutation; `confirmed` additionally demands that each guarantee
// is positively certified (witness verified, CI series matched, flat bound
// within the computed flat).
inline CrossCheckRecord cross_check(const BinomialSpec& s,
                                    const SweepBounds& bounds) {
  s.validate();
  CrossCheckRecord rec;
  rec.spec = s;
  rec.key = spec_key(s);
  rec.seed = spec_seed(bounds, rec.key);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Poly F = s.generator();
    rec.hv = hilbert_function(F);
    rec.stats = sperner_stats(rec.hv);
    rec.report = classify(s);
    rec.wlp = decide_wlp(F, bounds.mode, rec.seed);
    rec.slp = decide_slp(F, bounds.mode, rec.seed);
    for (const Match& m : rec.report.matches) {
      bool ok = true, refuted = false;
      switch (m.guarantee) {
        case Guarantee::wlp:
          ok = rec.wlp.status == Status::holds && rec.wlp.certified;
          refuted = rec.wlp.status == Status::fails && rec.wlp.certified;
          break;
        case Guarantee::slp:
          ok = rec.slp.status == Status::holds && rec.slp.certified;
          refuted = (rec.slp.status == Status::fails && rec.slp.certified) ||
                    (rec.wlp.status == Status::fails && rec.wlp.certified);
          break;
        case Guarantee::ci:
          // a shape verify_ci_family1 rejects outright is a refuted claim
          try {
            ok = verify_ci_family1(s);
          } catch (const input_error&) {
            ok = false;
          }
          refuted = !ok;
          break;
        case Guarantee::ns:
          ok = m.ns_bound <= rec.stats.flat_length;
          refuted = !ok;
          break;
      }
      if (!m.witness.empty() && !is_wl_element(F, m.witness)) {
        ok = false;
        refuted = true;
      }
      rec.confirmed = rec.confirmed && ok;
      rec.agreement = rec.agreement && !refuted;
    }
  } catch (const capacity_error& e) {
    rec.skipped = true;
    rec.skip_reason = e.what();
  }
  rec.millis = std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - t0)
                   .count();
  return rec;
}

// ---- JSON views -------------------------------------------------------------

inline Json to_json(const LinearForm& ell) {
  Json a = Json::array();
  for (const Rat& c : ell) a.push_back(rat_to_string(c));
  return a;
}

inline Json to_json(const Verdict& v) {
  return Json{
      {"property", to_string(v.property)},
      {"status", to_string(v.status)},
      {"provenance", to_string(v.provenance)},
      {"certified", v.certified},
      {"theorem", v.theorem},
      {"witness", to_json(v.witness)},
      {"failing_degrees", v.failing_degrees},
      {"seed", v.seed},
      {"trials", v.trials},
      {"bound", v.bound},
      {"confidence", v.confidence},
      {"note", v.note},
  };
}

inline Json to_json(const Match& m) {
  return Json{
      {"theorem", m.theorem},
      {"guarantee", to_string(m.guarantee)},
      {"witness", to_json(m.witness)},
      {"ns_bound", m.ns_bound},
      {"note", m.note},
  };
}

inline Json to_json(const ClassificationReport& rep) {
  Json ms = Json::array();
  for (const Match& m : rep.matches) ms.push_back(to_json(m));
  return Json{{"overall", to_string(rep.overall)}, {"matches", std::move(ms)}};
}

inline Json to_json(const CrossCheckRecord& r) {
  Json j{
      {"key", r.key},     {"n", r.spec.n},
      {"r", r.spec.r},    {"a", r.spec.a},
      {"b", r.spec.b},    {"d", r.spec.degree()},
      {"seed", r.seed},   {"millis", r.millis},
      {"skipped", r.skipped},
  };
  if (r.skipped) {
    j["skip_reason"] = r.skip_reason;
    return j;
  }
  j["h"] = r.hv;
  j["sperner"] = r.stats.sperner;
  j["flat_length"] = r.stats.flat_length;
  j["flat_start"] = r.stats.flat_start;
  j["flat_end"] = r.stats.flat_end;
  j["classification"] = to_json(r.report);
  j["wlp"] = to_json(r.wlp);
  j["slp"] = to_json(r.slp);
  j["agreement"] = r.agreement;
  j["confirmed"] = r.confirmed;
  return j;
}

// ---- JSONL sweeps -----------------------------------------------------------

struct SweepSummary {
  long long total = 0;     // records covering the requested bounds
  long long computed = 0;  // computed by this run
  long long resumed = 0;   // reused from the existing file
  long long agreements = 0;
  long long confirmed = 0;
  long long covered = 0;  // at least one classification match
  long long unknown = 0;  // no match at all
  long long wlp_failures = 0;
  long long slp_failures = 0;
  long long skipped = 0;
};

inline Json to_json(const SweepSummary& s) {
  return Json{
      {"total", s.total},
      {"computed", s.computed},
      {"resumed", s.resumed},
      {"agreements", s.agreements},
      {"confirmed", s.confirmed},
      {"covered", s.covered},
      {"unknown", s.unknown},
      {"wlp_failures", s.wlp_failures},
      {"slp_failures", s.slp_failures},
      {"skipped", s.skipped},
  };
}

// every parseable line of a JSONL file; torn or foreign lines are dropped
inline std::vector<Json> read_jsonl(const std::string& path) {
  std::vector<Json> out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json j = Json::parse(line, nullptr, false);
    if (!j.is_discarded()) out.push_back(std::move(j));
  }
  return out;
}

namespace detail {

inline void tally(SweepSummary& sum, const Json& j) {
  sum.total++;
  if (j.value("skipped", false)) {
    sum.skipped++;
    return;
  }
  if (j.value("agreement", false)) sum.agreements++;
  if (j.value("confirmed", false)) sum.confirmed++;
  if (j.at("classification").at("matches").empty())
    sum.unknown++;
  else
    sum.covered++;
  if (j.at("wlp").at("status") == "FAILS") sum.wlp_failures++;
  if (j.at("slp").at("status") == "FAILS") sum.slp_failures++;
}

}  // namespace detail

// Cross-checks every spec in bounds, appending one JSON record per line to
// out_path. Specs whose key already sits in the file are not recomputed, so
// an interrupted sweep resumes where it stopped. Workers fan out across
// bounds.jobs threads; a single writer emits records in enumeration order,
// which keeps the file bytes reproducible for a fixed seed (timing fields
// aside).
inline SweepSummary run_sweep(const SweepBounds& bounds,
                              const std::string& out_path) {
  bounds.validate();
  const auto specs = enumerate_specs(bounds);
  std::unordered_map<std::string, Json> existing;
  for (auto& j : read_jsonl(out_path))
    if (j.contains("key") && j["key"].is_string()) {
      // key must leave j before the assignment moves j away
      std::string k = j["key"].get<std::string>();
      existing[std::move(k)] = std::move(j);
    }

  SweepSummary sum;
  std::vector<const BinomialSpec*> todo;
  for (const auto& s : specs) {
    auto it = existing.find(spec_key(s));
    if (it != existing.end()) {
      detail::tally(sum, it->second);
      sum.resumed++;
    } else {
      todo.push_back(&s);
    }
  }
  if (todo.empty()) return sum;

  std::ofstream out(out_path, std::ios::app);
  if (!out) throw input_error("run_sweep: cannot open " + out_path);
  std::vector<std::optional<Json>> slot(todo.size());
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= todo.size()) return;
      Json j;
      try {
        j = to_json(cross_check(*todo[i], bounds));
      } catch (const std::exception& e) {
        // cross_check absorbs capacity caps itself; anything else still
        // must not take down the pool, so record it as a skip
        j = Json{{"key", spec_key(*todo[i])},
                 {"skipped", true},
                 {"skip_reason", std::string("exception: ") + e.what()}};
      }
      {
        std::lock_guard<std::mutex> lk(mu);
        slot[i] = std::move(j);
      }
      cv.notify_all();
    }
  };
  const int width = static_cast<int>(std::min<std::size_t>(
      static_cast<std::size_t>(bounds.jobs), todo.size()));
  std::vector<std::thread> pool;
  pool.reserve(width);
  for (int w = 0; w < width; ++w) pool.emplace_back(worker);
  {
    std::unique_lock<std::mutex> lk(mu);
    for (std::size_t i = 0; i < todo.size(); ++i) {
      cv.wait(lk, [&] { return slot[i].has_value(); });
      Json j = std::move(*slot[i]);
      slot[i].reset();
      lk.unlock();
      out << j.dump() << '\n' << std::flush;
      detail::tally(sum, j);
      sum.computed++;
      lk.lock();
    }
  }
  for (auto& t : pool) t.join();
  return sum;
}

// ---- line-item verification suite -------------------------------------------

struct VerifyOptions {
  std::string scan_file;  // JSONL scratch for the failure-discovery scan;
                          // empty picks a file under the system temp dir
  int jobs = 1;
  std::uint64_t seed = kDefaultSeed;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double seconds = 0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  int failures() const {
    int f = 0;
    for (const auto& c : checks) f += !c.passed;
    return f;
  }
};

// The eight checks behind `verify`: exact reproduction of the worked
// example plus property sweeps for every classification theorem, the
// Hessian/oracle rank equivalence, both apolarity conventions, and a
// failure-discovery scan that must either produce a certified WLP failure
// or prove it scanned everything. One pass/fail line per check goes to
// `log` as it completes.
inline VerifyReport run_verification(std::ostream& log,
                                     const VerifyOptions& opts = {}) {
  VerifyReport rep;
  auto run = [&](const std::string& name, auto&& body) {
    CheckResult c;
    c.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.passed = body(c.detail);
    } catch (const std::exception& e) {
      c.passed = false;
      c.detail = std::string("exception: ") + e.what();
    }
    c.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", c.seconds);
    log << (c.passed ? "pass  " : "FAIL  ") << c.name << "  [" << buf << "]"
        << (c.detail.empty() ? "" : "  " + c.detail) << std::endl;
    rep.checks.push_back(std::move(c));
  };

  run("worked-example invariants", [&](std::string& detail) {
    const double budget_seconds = 5.0;  // pinned
    const auto t0 = std::chrono::steady_clock::now();
    const Poly F = parse_poly("X1^8*X2^3 - X1^6*X2^2*X3^3");
    bool ok = hilbert_function(F) ==
              HVector{1, 3, 6, 10, 12, 12, 12, 12, 10, 6, 3, 1};
    const auto st = sperner_stats(hilbert_function(F));
    ok = ok && st.sperner == 12 && st.flat_length == 4;
    const std::vector<Exponents> basis5{
        {5, 0, 0}, {4, 1, 0}, {4, 0, 1}, {3, 2, 0}, {3, 1, 1}, {3, 0, 2},
        {2, 2, 1}, {2, 1, 2}, {2, 0, 3}, {1, 2, 2}, {1, 1, 3}, {0, 2, 3}};
    ok = ok && graded_basis(F, 5) == basis5;
    const HessianMatrix H = hessian(F, 5);
    ok = ok && H.matrix.rows == 12 && H.matrix.cols == 12;
    const Poly det = symbolic_det(H.matrix);
    ok = ok && det.terms.size() == 1 &&
         det.terms.begin()->first == Exponents{12, 0, 0} &&
         det.terms.begin()->second != 0;
    ok = ok && evaluate(det, {Rat(1), Rat(0), Rat(0)}) != 0;
    ok = ok && is_wl_element(F, LinearForm{Rat(1), Rat(0), Rat(0)});
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    detail = "socle degree 11, flat of width 4, determinant support X1^12";
    return ok && sec < budget_seconds;
  });

  run("h-vector symmetry sweep", [&](std::string& detail) {
    const double budget_seconds = 600.0;  // pinned
    const auto t0 = std::chrono::steady_clock::now();
    SweepBounds b;
    b.min_vars = 2;
    b.max_vars = 4;
    b.max_degree = 10;
    const auto specs = enumerate_specs(b);
    long long bad = 0;
    for (const auto& s : specs) {
      const HVector h = hilbert_function(s.generator());
      const int d = s.degree();
      if (static_cast<int>(h.size()) != d + 1) {
        ++bad;
        continue;
      }
      for (int i = 0; i <= d; ++i)
        if (h[i] != h[d - i]) {
          ++bad;
          break;
        }
    }
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    detail = std::to_string(specs.size()) + " generators, " +
             std::to_string(bad) + " asymmetric";
    return bad == 0 && sec < budget_seconds;
  });

  run("monomial strong-Lefschetz baseline", [&](std::string& detail) {
    const double budget_seconds = 600.0;  // pinned
    const auto t0 = std::chrono::steady_clock::now();
    long long count = 0, bad = 0;
    for (int d = 1; d <= 8; ++d) {
      for (const auto& e : monomials_of_degree(4, d)) {
        ++count;
        if (!is_sl_element(Poly::monomial(e), LinearForm(4, Rat(1)))) ++bad;
      }
    }
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    detail = std::to_string(count) + " monomials, all-ones form, " +
             std::to_string(bad) + " failures";
    return bad == 0 && sec < budget_seconds;
  });

  run("hessian/multiplication rank agreement", [&](std::string& detail) {
    SweepBounds b;
    b.min_vars = 2;
    b.max_vars = 4;
    b.max_degree = 10;
    const auto pool = enumerate_specs(b);
    std::mt19937_64 rng(opts.seed ^ 0xC4C4C4C4ULL);
    int done = 0, bad = 0;
    while (done < 200) {
      const BinomialSpec& s = pool[rng() % pool.size()];
      const int d = s.degree();
      const int ss = static_cast<int>(rng() % d);
      const int tt = static_cast<int>(rng() % (d - ss));
      LinearForm ell(s.n);
      bool nonzero = false;
      for (auto& c : ell) {
        const int v = static_cast<int>(rng() % 19) - 9;
        c = Rat(v);
        nonzero = nonzero || v != 0;
      }
      if (!nonzero) continue;
      const Poly F = s.generator();
      const DualAlgebra A(F);
      const HessianMatrix H = mixed_hessian(F, ss, tt);
      const int hr = rank_certified(evaluate_matrix(H.matrix, ell));
      const int mr = mult_map_rank(A, ell, ss, d - ss - tt);
      if (hr != mr) ++bad;
      ++done;
    }
    detail = "200 sampled (generator, s, t, form) tuples, " +
             std::to_string(bad) + " mismatches";
    return bad == 0;
  });

  long long ci_total = 0, ci_good = 0;  // filled by the soundness sweep
  run("classification soundness sweep", [&](std::string& detail) {
    SweepBounds b;
    b.min_vars = 2;
    b.max_vars = 5;
    b.max_degree = 10;
    b.mode = DecideMode::fast;
    b.seed = opts.seed;
    const auto specs = enumerate_specs(b);
    long long covered = 0, disagree = 0, unconfirmed = 0, skipped = 0;
    std::string first_bad;
    for (const auto& s : specs) {
      const CrossCheckRecord rec = cross_check(s, b);
      if (rec.skipped) {
        ++skipped;
        if (first_bad.empty())
          first_bad = rec.key + " skipped: " + rec.skip_reason;
        continue;
      }
      if (!rec.report.matches.empty()) ++covered;
      if (!rec.agreement) {
        ++disagree;
        if (first_bad.empty()) first_bad = rec.key + " refuted";
      } else if (!rec.confirmed) {
        ++unconfirmed;
        if (first_bad.empty()) first_bad = rec.key + " unconfirmed";
      }
      for (const Match& m : rec.report.matches)
        if (m.guarantee == Guarantee::ci) {
          ++ci_total;
          ci_good += verify_ci_family1(s) ? 1 : 0;
        }
    }
    detail = std::to_string(specs.size()) + " specs, " +
             std::to_string(covered) + " covered, " +
             std::to_string(disagree) + " refuted, " +
             std::to_string(unconfirmed) + " unconfirmed, " +
             std::to_string(skipped) + " skipped" +
             (first_bad.empty() ? "" : "; first: " + first_bad);
    return disagree == 0 && unconfirmed == 0 && skipped == 0;
  });

  run("complete-intersection certificates", [&](std::string& detail) {
    detail = std::to_string(ci_good) + "/" + std::to_string(ci_total) +
             " pure-power instances verified";
    return ci_total > 0 && ci_good == ci_total;
  });

  run("action-convention invariance", [&](std::string& detail) {
    std::mt19937_64 rng(opts.seed ^ 0x77777777ULL);
    int done = 0, bad = 0;
    while (done < 100) {
      const int n = 2 + static_cast<int>(rng() % 3);
      const int d = 2 + static_cast<int>(rng() % 7);
      const auto monos = monomials_of_degree(n, d);
      Poly F(n);
      const int terms = 2 + static_cast<int>(rng() % 4);
      for (int i = 0; i < terms; ++i) {
        int c = static_cast<int>(rng() % 9) - 4;
        if (c == 0) c = 1;
        F += Poly::monomial(monos[rng() % monos.size()], Rat(c));
      }
      if (F.is_zero()) continue;
      for (int t = 0; t <= d; ++t)
        if (rank_certified(catalecticant(F, t, Action::differentiate)) !=
            rank_certified(catalecticant(F, t, Action::contract)))
          ++bad;
      ++done;
    }
    detail = "100 random generators, full degree range, " +
             std::to_string(bad) + " rank mismatches";
    return bad == 0;
  });

  run("failure discovery scan", [&](std::string& detail) {
    SweepBounds b;
    b.min_vars = 4;
    b.max_vars = 4;
    b.max_degree = 12;
    b.gcd_at_least_half = true;
    b.mode = DecideMode::certify;
    b.seed = opts.seed;
    b.jobs = opts.jobs;
    std::string path = opts.scan_file;
    if (path.empty())
      path = (std::filesystem::temp_directory_path() / "aglef-scan.jsonl")
                 .string();
    std::error_code ec;
    std::filesystem::remove(path, ec);
    const auto specs = enumerate_specs(b);
    const SweepSummary sum = run_sweep(b, path);
    long long certified_fails = 0, uncertified_fails = 0;
    std::string found;
    for (const auto& j : read_jsonl(path)) {
      if (j.value("skipped", false)) continue;
      if (j.at("wlp").at("status") != "FAILS") continue;
      if (j.at("wlp").at("certified").get<bool>()) {
        ++certified_fails;
        if (certified_fails <= 4)
          found += (found.empty() ? "" : " ") + j.at("key").get<std::string>();
      } else {
        ++uncertified_fails;
      }
    }
    const bool complete =
        sum.total == static_cast<long long>(specs.size());
    detail = "scanned " + std::to_string(sum.total) +
             " deep-gcd quartic-codimension specs (" +
             std::to_string(sum.skipped) + " skipped), " +
             std::to_string(certified_fails) + " certified WLP failures" +
             (found.empty() ? "" : ": " + found);
    if (!complete) return false;
    if (uncertified_fails != 0) return false;
    if (certified_fails >= 1) return true;
    return sum.wlp_failures == 0 && sum.skipped == 0;
  });

  return rep;
}

}  // namespace aglef
