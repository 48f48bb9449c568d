#pragma once

// Binomial normal form and the sufficient-condition classifiers: structural
// tests on the exponent data that guarantee WLP or SLP outright, the
// complete-intersection verification for the pure-power family, and the
// flat-transfer lemma for generators obtained by differentiation.

#include <aglef/lefschetz.hpp>

#include <future>
#include <optional>

namespace aglef {

// F = c * (m1 - m2) with m1 = g * prod_{i<=r} X_i^{b_i} and
// m2 = g * prod_{i>r} X_i^{b_i}; the gcd g carries the a-exponents.
// Variables with b_i = 0 may appear anywhere by the subset invariants, but
// normalize() produces the canonical layout: left support first, then right
// support, then the b-free tail.
struct BinomialSpec {
  int n = 0;    // ambient variable count
  int r = 0;    // split index: left factor lives on 1..r
  Exponents a;  // gcd exponents, length n
  Exponents b;  // binomial-factor exponents, length n

  int degree() const {
    int d = 0;
    for (int i = 0; i < n; ++i) d += a[i];
    for (int i = 0; i < r; ++i) d += b[i];
    return d;
  }
  int gcd_degree() const {
    int s = 0;
    for (int i = 0; i < n; ++i) s += a[i];
    return s;
  }
  // half the binomial-factor degree; equals both side sums by homogeneity
  int side_degree() const {
    int s = 0;
    for (int i = 0; i < r; ++i) s += b[i];
    return s;
  }
  int factor_support() const {
    int s = 0;
    for (int i = 0; i < n; ++i) s += b[i] > 0;
    return s;
  }
  Exponents left_exponents() const {
    Exponents e(a);
    for (int i = 0; i < r; ++i) e[i] += b[i];
    return e;
  }
  Exponents right_exponents() const {
    Exponents e(a);
    for (int i = r; i < n; ++i) e[i] += b[i];
    return e;
  }
  Poly generator() const {
    return Poly::monomial(left_exponents()) -
           Poly::monomial(right_exponents());
  }

  void validate() const {
    if (n < 2) throw input_error("BinomialSpec: need at least two variables");
    if (r < 1 || r > n - 1)
      throw input_error("BinomialSpec: split index out of range");
    if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
      throw input_error("BinomialSpec: exponent vectors must have length n");
    int left = 0, right = 0;
    for (int i = 0; i < n; ++i) {
      if (a[i] < 0 || b[i] < 0)
        throw input_error("BinomialSpec: negative exponent");
      (i < r ? left : right) += b[i];
    }
    if (left != right)
      throw input_error("BinomialSpec: factor sides have unequal degrees");
    if (left == 0)
      throw input_error("BinomialSpec: binomial factor is trivial");
  }

  bool operator==(const BinomialSpec& o) const {
    return n == o.n && r == o.r && a == o.a && b == o.b;
  }
};

struct NormalizeResult {
  BinomialSpec spec;
  std::vector<int> perm;  // perm[i] = original variable at spec position i
  Rat scale;              // input = scale * (m1 - m2) after permuting back
};

// F written in original coordinates from the exponent data and permutation
inline Poly reconstruct(const NormalizeResult& nr) {
  auto back = [&](const Exponents& e) {
    Exponents o(nr.spec.n, 0);
    for (int i = 0; i < nr.spec.n; ++i) o[nr.perm[i]] = e[i];
    return o;
  };
  Poly m1 = Poly::monomial(back(nr.spec.left_exponents()));
  Poly m2 = Poly::monomial(back(nr.spec.right_exponents()));
  return (m1 - m2) * nr.scale;
}

// Canonical form of a two-term generator. The gcd is factored out, the
// variables are permuted so the left-factor support comes first (sorted by
// decreasing b, then decreasing a, then original index), the right-factor
// support second, and b-free variables last; of the two side assignments
// the one with the lexicographically larger (r, a, b) key is kept.
inline NormalizeResult normalize(const Poly& F) {
  if (F.terms.size() != 2)
    throw input_error("normalize: generator must have exactly two terms");
  if (!F.is_homogeneous()) throw input_error("normalize: not homogeneous");
  auto it = F.terms.begin();
  const Exponents e1 = it->first;
  const Rat c1 = it->second;
  ++it;
  const Exponents e2 = it->first;
  const Rat c2 = it->second;
  if (c1 != -c2)
    throw input_error(
        "normalize: unsupported coefficients, expected c*(m1 - m2)");
  const int n = F.n;
  Exponents g(n), u(n), w(n);
  for (int i = 0; i < n; ++i) {
    g[i] = std::min(e1[i], e2[i]);
    u[i] = e1[i] - g[i];
    w[i] = e2[i] - g[i];
  }

  struct Candidate {
    BinomialSpec spec;
    std::vector<int> perm;
    Rat scale;
  };
  auto build = [&](const Exponents& left, const Exponents& right,
                   const Rat& scale) {
    Candidate c;
    std::vector<int> ls, rs, tail;
    for (int i = 0; i < n; ++i) {
      if (left[i] > 0) ls.push_back(i);
      else if (right[i] > 0) rs.push_back(i);
      else tail.push_back(i);
    }
    auto by_side = [&](const Exponents& side) {
      return [&](int x, int y) {
        if (side[x] != side[y]) return side[x] > side[y];
        if (g[x] != g[y]) return g[x] > g[y];
        return x < y;
      };
    };
    std::sort(ls.begin(), ls.end(), by_side(left));
    std::sort(rs.begin(), rs.end(), by_side(right));
    std::sort(tail.begin(), tail.end(), [&](int x, int y) {
      if (g[x] != g[y]) return g[x] > g[y];
      return x < y;
    });
    c.perm = ls;
    c.perm.insert(c.perm.end(), rs.begin(), rs.end());
    c.perm.insert(c.perm.end(), tail.begin(), tail.end());
    c.spec.n = n;
    c.spec.r = static_cast<int>(ls.size());
    c.spec.a.resize(n);
    c.spec.b.resize(n);
    for (int i = 0; i < n; ++i) {
      c.spec.a[i] = g[c.perm[i]];
      c.spec.b[i] = left[c.perm[i]] + right[c.perm[i]];
    }
    c.scale = scale;
    return c;
  };

  Candidate A = build(u, w, c1);
  Candidate B = build(w, u, -c1);
  auto key = [](const Candidate& c) {
    return std::make_tuple(c.spec.r, c.spec.a, c.spec.b);
  };
  // equal keys mean the orientations differ only by sign; keep the one
  // written with a positive scale so canonical generators are fixed points
  Candidate& win = key(B) > key(A)   ? B
                   : key(A) > key(B) ? A
                   : (A.scale > 0 ? A : B);
  win.spec.validate();
  return {win.spec, win.perm, win.scale};
}

// ---- classification matches --------------------------------------------------

enum class Guarantee { wlp, slp, ci, ns };  // ns: a flatness bound only

inline const char* to_string(Guarantee g) {
  switch (g) {
    case Guarantee::slp: return "SLP";
    case Guarantee::ci: return "CI";
    case Guarantee::ns: return "NS";
    default: return "WLP";
  }
}

struct Match {
  std::string theorem;  // stable id, e.g. "gcd-criterion", "family4i"
  Guarantee guarantee = Guarantee::wlp;
  LinearForm witness;   // nonempty only when the statement names a form
  int ns_bound = 0;     // lower bound on the number of maximal h-entries
  std::string note;
};

// WLP whenever the gcd degree stays below half the socle degree
inline std::optional<Match> check_gcd_criterion(const BinomialSpec& s) {
  s.validate();
  if (s.gcd_degree() < (s.degree() - 1) / 2) {
    Match m;
    m.theorem = "gcd-criterion";
    m.guarantee = Guarantee::wlp;
    m.note = "deg gcd = " + std::to_string(s.gcd_degree()) + " < " +
             std::to_string((s.degree() - 1) / 2);
    return m;
  }
  return std::nullopt;
}

// Dominant-variable tests. Which variable plays the distinguished role is a
// relabeling choice, so the hypothesis is quantified over all of them; the
// two factor sides have equal degree, making the side swap immaterial.
//   (i)  a_j >  (sum of the other a) + (one side's b-degree): WLP via x_j;
//   (ii) a_j >= the same sum, with x_j inside the factor but not alone on
//        its side: at least 3 + a_j - (rest of a) - (side degree) maximal
//        h-entries. When x_j's side of the factor is a pure power of x_j
//        the algebra is a complete intersection of quasi-box type whose
//        flat part is exactly margin+1, two short of this bound, so that
//        case is excluded.
inline std::vector<Match> check_family4(const BinomialSpec& s) {
  s.validate();
  std::vector<Match> out;
  int total_a = s.gcd_degree(), side = s.side_degree();
  int best_i = -1, best_ii = -1, bound = 0;
  for (int j = 0; j < s.n; ++j) {
    int margin = s.a[j] - (total_a - s.a[j]) - side;
    if (margin > 0 && (best_i < 0 || s.a[j] > s.a[best_i])) best_i = j;
    if (margin >= 0 && s.b[j] > 0 && s.b[j] < side && 3 + margin > bound) {
      best_ii = j;
      bound = 3 + margin;
    }
  }
  if (best_i >= 0) {
    Match m;
    m.theorem = "family4i";
    m.guarantee = Guarantee::wlp;
    m.witness.assign(s.n, Rat(0));
    m.witness[best_i] = 1;
    m.note = "dominant variable " + std::to_string(best_i + 1);
    out.push_back(std::move(m));
  }
  if (best_ii >= 0) {
    Match m;
    m.theorem = "family4ii";
    m.guarantee = Guarantee::ns;
    m.ns_bound = bound;
    m.note = "dominant variable " + std::to_string(best_ii + 1) +
             ", bound from its exponent margin";
    out.push_back(std::move(m));
  }
  return out;
}

namespace detail {

// positions of one factor side and the other, per orientation
inline void side_split(const BinomialSpec& s, bool swapped,
                       std::vector<int>& pure_side,
                       std::vector<int>& general_side) {
  pure_side.clear();
  general_side.clear();
  for (int i = 0; i < s.n; ++i) {
    if (s.b[i] == 0) continue;
    ((i < s.r) != swapped ? pure_side : general_side).push_back(i);
  }
}

}  // namespace detail

// gcd a pure power of the pure-power factor's own variable; the CI flag
// additionally needs the gcd exponent to reach the factor exponent minus one
inline std::vector<Match> check_family1(const BinomialSpec& s) {
  s.validate();
  std::vector<Match> out;
  for (bool swapped : {false, true}) {
    std::vector<int> ps, gs;
    detail::side_split(s, swapped, ps, gs);
    if (ps.size() != 1) continue;
    int L = ps[0];
    if (s.a[L] < 1) continue;
    bool concentrated = true;
    for (int i = 0; i < s.n && concentrated; ++i)
      if (i != L && s.a[i] != 0) concentrated = false;
    if (!concentrated) continue;
    Match m;
    m.theorem = "family1";
    m.guarantee = Guarantee::wlp;
    m.note = "pure power of variable " + std::to_string(L + 1) +
             " times a binomial led by it";
    out.push_back(std::move(m));
    if (s.a[L] >= s.b[L] - 1) {
      Match ci;
      ci.theorem = "family1-ci";
      ci.guarantee = Guarantee::ci;
      ci.note = "gcd exponent " + std::to_string(s.a[L]) +
                " >= " + std::to_string(s.b[L] - 1);
      out.push_back(std::move(ci));
    }
    break;  // the concentrated variable is unique
  }
  return out;
}

// gcd a pure power of a single variable away from the pure-power factor
inline std::optional<Match> check_family2(const BinomialSpec& s) {
  s.validate();
  for (bool swapped : {false, true}) {
    std::vector<int> ps, gs;
    detail::side_split(s, swapped, ps, gs);
    if (ps.size() != 1) continue;
    int L = ps[0];
    int carrier = -1;
    bool single = true;
    for (int i = 0; i < s.n && single; ++i) {
      if (s.a[i] == 0) continue;
      if (carrier >= 0) single = false;
      carrier = i;
    }
    if (!single || carrier < 0 || carrier == L) continue;
    Match m;
    m.theorem = "family2";
    m.guarantee = Guarantee::wlp;
    m.note = "gcd is a power of variable " + std::to_string(carrier + 1) +
             ", factor led by variable " + std::to_string(L + 1);
    return m;
  }
  return std::nullopt;
}

// binomial factor on at most three variables: SLP, regardless of the gcd
inline std::optional<Match> check_family3_5(const BinomialSpec& s) {
  s.validate();
  int supp = s.factor_support();
  if (supp > 3) return std::nullopt;
  Match m;
  m.guarantee = Guarantee::slp;
  if (supp <= 2) {
    m.theorem = "family3";
    m.note = "binomial factor on two variables";
  } else {
    m.theorem = "family5";
    m.note = "binomial factor on three variables";
  }
  return m;
}

// ---- complete-intersection verification --------------------------------------

struct CiEvidence {
  std::vector<int> generator_degrees;  // (a+1, then b_i+1 on the general side)
  bool annihilates = false;            // every generator kills F (contraction)
  bool series_match = false;           // CI Hilbert series == h-vector
  HVector ci_series;
  HVector hv;
};

// For F = X_L^a (X_L^b - M) with a >= b-1 the annihilator is the complete
// intersection J = (x_i^{b_i+1} over M's variables, x_L^{a+1} + x_L^{a-b+1}m)
// where m is the operator mirror of M. Checked without Groebner machinery:
// J ⊆ Ann(F) gives a surjection from R/J onto the algebra of F, R/J is
// Artinian with n generators (so they form a regular sequence and its
// Hilbert series is the CI series), and termwise equality of that series
// with the h-vector forces the surjection to be an isomorphism. Membership
// uses the contraction action, under which the mixed generator cancels
// exactly; factorial-weighted differentiation would break the cancellation.
inline bool verify_ci_family1(const BinomialSpec& s,
                              CiEvidence* evidence = nullptr) {
  s.validate();
  int L = -1;
  bool swapped_found = false;
  for (bool swapped : {false, true}) {
    std::vector<int> ps, gs;
    detail::side_split(s, swapped, ps, gs);
    if (ps.size() != 1 || s.a[ps[0]] < 1) continue;
    bool concentrated = true;
    for (int i = 0; i < s.n && concentrated; ++i)
      if (i != ps[0] && s.a[i] != 0) concentrated = false;
    if (!concentrated) continue;
    L = ps[0];
    swapped_found = swapped;
    break;
  }
  if (L < 0) throw input_error("verify_ci_family1: not a pure-power family");
  const int a = s.a[L], bl = s.b[L];
  if (a < bl - 1)
    throw input_error("verify_ci_family1: gcd exponent below factor-1");
  std::vector<int> general;
  {
    std::vector<int> ps;
    detail::side_split(s, swapped_found, ps, general);
  }
  for (int i = 0; i < s.n; ++i)
    if (i != L && s.a[i] == 0 && s.b[i] == 0)
      throw input_error("verify_ci_family1: unused variable in the ring");

  const Poly F = s.generator();
  CiEvidence ev;
  ev.generator_degrees.push_back(a + 1);
  ev.annihilates = true;
  for (int i : general) {
    ev.generator_degrees.push_back(s.b[i] + 1);
    Exponents e(s.n, 0);
    e[i] = s.b[i] + 1;
    if (!annihilator_membership(Poly::monomial(e), F, Action::contract))
      ev.annihilates = false;
  }
  {
    Exponents hi(s.n, 0), lo(s.n, 0);
    hi[L] = a + 1;
    lo[L] = a - bl + 1;
    for (int i : general) lo[i] = s.b[i];
    Poly mixed = Poly::monomial(hi) + Poly::monomial(lo);
    if (!annihilator_membership(mixed, F, Action::contract))
      ev.annihilates = false;
  }

  // coefficients of prod_i (1 + t + ... + t^{deg_i - 1})
  ev.ci_series = {1};
  for (int deg : ev.generator_degrees) {
    HVector next(ev.ci_series.size() + deg - 1, 0);
    for (size_t i = 0; i < ev.ci_series.size(); ++i)
      for (int j = 0; j < deg; ++j) next[i + j] += ev.ci_series[i];
    ev.ci_series = std::move(next);
  }
  ev.hv = hilbert_function(F);
  ev.series_match = ev.ci_series == ev.hv;

  bool ok = ev.annihilates && ev.series_match;
  if (evidence) *evidence = std::move(ev);
  return ok;
}

// ---- flat transfer ------------------------------------------------------------

// Differentiating a WLP generator whose h-vector is flat for longer than
// deg(p) + 1 degrees keeps WLP and loses at most deg(p) maximal entries
// (rounded through the even part).
inline std::optional<Match> flat_transfer(
    const Poly& G, const Poly& p, Action action = Action::differentiate) {
  require_homogeneous_nonzero(G, "flat_transfer");
  if (p.is_zero() || !p.is_homogeneous())
    throw input_error("flat_transfer: operator must be homogeneous, nonzero");
  Poly F = apply_action(p, G, action);
  if (F.is_zero())
    throw input_error("flat_transfer: operator annihilates the generator");
  const int dp = p.degree();
  auto stats = sperner_stats(hilbert_function(G));
  if (stats.flat_length < dp + 2) return std::nullopt;
  if (decide_wlp(G).status != Status::holds) return std::nullopt;
  Match m;
  m.theorem = "flat-transfer";
  m.guarantee = Guarantee::wlp;
  m.ns_bound = 2 * (stats.flat_length / 2) - dp;
  m.note = "source flat for " + std::to_string(stats.flat_length) +
           " degrees, operator degree " + std::to_string(dp);
  return m;
}

// ---- aggregation --------------------------------------------------------------

enum class Overall { unknown, wlp, slp };

inline const char* to_string(Overall o) {
  switch (o) {
    case Overall::slp: return "SLP";
    case Overall::wlp: return "WLP";
    default: return "UNKNOWN";
  }
}

struct ClassificationReport {
  BinomialSpec spec;
  std::vector<Match> matches;  // sorted by theorem id
  Overall overall = Overall::unknown;
};

// every checker, fanned out concurrently, merged in a fixed order
inline ClassificationReport classify(const BinomialSpec& s) {
  s.validate();
  ClassificationReport rep;
  rep.spec = s;
  auto f_gcd = std::async(std::launch::async,
                          [&] { return check_gcd_criterion(s); });
  auto f_f4 = std::async(std::launch::async, [&] { return check_family4(s); });
  auto f_f1 = std::async(std::launch::async, [&] { return check_family1(s); });
  auto f_f2 = std::async(std::launch::async, [&] { return check_family2(s); });
  auto f_f35 = std::async(std::launch::async,
                          [&] { return check_family3_5(s); });
  if (auto m = f_gcd.get()) rep.matches.push_back(std::move(*m));
  for (auto& m : f_f4.get()) rep.matches.push_back(std::move(m));
  for (auto& m : f_f1.get()) rep.matches.push_back(std::move(m));
  if (auto m = f_f2.get()) rep.matches.push_back(std::move(*m));
  if (auto m = f_f35.get()) rep.matches.push_back(std::move(*m));
  std::sort(rep.matches.begin(), rep.matches.end(),
            [](const Match& x, const Match& y) { return x.theorem < y.theorem; });
  for (auto& m : rep.matches) {
    if (m.guarantee == Guarantee::slp) rep.overall = Overall::slp;
    else if (m.guarantee == Guarantee::wlp && rep.overall != Overall::slp)
      rep.overall = Overall::wlp;
  }
  return rep;
}

}  // namespace aglef
