#pragma once

// Weak and strong Lefschetz deciders: the direct multiplication-map rank
// oracle, Hessian and mixed-Hessian matrices, and the randomized /
// certifying decision procedures built on both routes.

#include <aglef/apolarity.hpp>

namespace aglef {

using LinearForm = std::vector<Rat>;  // ell = a1*x1 + ... + an*xn

inline bool is_zero_form(const LinearForm& ell) {
  for (auto& c : ell) if (c != 0) return false;
  return true;
}

inline Poly form_to_poly(const LinearForm& ell) {
  return Poly::linear_form(ell);
}

// ---- multiplication maps ---------------------------------------------------

// rank of  x ell^k : A_s -> A_{s+k}  without choosing bases: the image is
// spanned by the classes of u*ell^k over monomials u of degree s, and the
// class of an operator p is faithfully encoded by the coefficient row of
// p∘F. One application of ell^k to F turns each row into a cheap monomial
// shift of G = ell^k ∘ F.
inline int mult_map_rank(const DualAlgebra& A, const Poly& ell_pow_k_applied,
                         int s) {
  const Poly& G = ell_pow_k_applied;  // degree d-k
  if (G.is_zero()) return 0;
  const int n = A.nvars();
  const int dg = G.degree();
  auto rows = monomials_of_degree(n, s);
  auto cols = monomials_of_degree(n, dg - s);
  std::map<Exponents, int> col_index;
  for (size_t j = 0; j < cols.size(); ++j)
    col_index[cols[j]] = static_cast<int>(j);
  RatMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    Poly r = diff_apply(Poly::monomial(rows[i]), G);
    for (auto& [e, c] : r.terms) m.entries[i][col_index.at(e)] = c;
  }
  return rank_certified(m);
}

inline int mult_map_rank(const DualAlgebra& A, const LinearForm& ell, int s,
                         int k) {
  if (s < 0 || k < 1 || s + k > A.socle_degree())
    throw input_error("mult_map_rank: degrees out of range");
  Poly G = diff_apply(form_to_poly(ell).pow(k), A.generator());
  return mult_map_rank(A, G, s);
}

// The matrix of  x ell^k : A_s -> A_{s+k}  in graded-basis coordinates:
// column j holds the coordinates of ell^k * u_j w.r.t. the degree-(s+k)
// basis, solved through the catalecticant pairing.
inline RatMatrix mult_map_matrix(const Poly& F, const LinearForm& ell, int s,
                                 int k) {
  require_homogeneous_nonzero(F, "mult_map_matrix");
  const int d = F.degree();
  if (s < 0 || k < 1 || s + k > d)
    throw input_error("mult_map_matrix: need 0 <= s and s+k <= deg F");
  const int n = F.n;
  auto dom = graded_basis(F, s);
  auto cod = graded_basis(F, s + k);

  auto cols = monomials_of_degree(n, d - s - k);
  std::map<Exponents, int> col_index;
  for (size_t j = 0; j < cols.size(); ++j)
    col_index[cols[j]] = static_cast<int>(j);
  auto row_of = [&](const Poly& op) {
    Poly r = diff_apply(op, F);
    std::vector<Rat> v(cols.size(), Rat(0));
    for (auto& [e, c] : r.terms) v[col_index.at(e)] = c;
    return v;
  };

  RatMatrix basis_rows(static_cast<int>(cod.size()),
                       static_cast<int>(cols.size()));
  for (size_t i = 0; i < cod.size(); ++i) {
    auto v = row_of(Poly::monomial(cod[i]));
    for (size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) basis_rows.entries[i][static_cast<int>(j)] = v[j];
  }

  Poly lk = form_to_poly(ell).pow(k);
  RatMatrix m(static_cast<int>(cod.size()), static_cast<int>(dom.size()));
  for (size_t j = 0; j < dom.size(); ++j) {
    auto v = row_of(lk * Poly::monomial(dom[j]));
    auto coords = solve_in_rowspace(basis_rows, v);
    if (!coords)
      throw std::logic_error("mult_map_matrix: image escaped the codomain");
    for (size_t i = 0; i < coords->size(); ++i)
      if ((*coords)[i] != 0) m.entries[i][static_cast<int>(j)] = (*coords)[i];
  }
  return m;
}

// ---- pointwise Lefschetz tests ---------------------------------------------

// Weak Lefschetz needs maximal rank only for the single middle map
// A_t -> A_{t+1} at t = floor((d-1)/2).
inline bool is_wl_element(const DualAlgebra& A, const LinearForm& ell) {
  if (is_zero_form(ell)) throw input_error("is_wl_element: zero linear form");
  const int d = A.socle_degree();
  if (d == 0) return true;
  const int t = (d - 1) / 2;
  int need = std::min(A.h(t), A.h(t + 1));
  return mult_map_rank(A, ell, t, 1) == need;
}

inline bool is_wl_element(const Poly& F, const LinearForm& ell) {
  return is_wl_element(DualAlgebra(F), ell);
}

// Strong Lefschetz: every square map x ell^(d-2t) : A_t -> A_{d-t} is
// invertible. Scanned from the middle outward; middle maps fail first in
// practice and are the cheapest to build.
inline bool is_sl_element(const DualAlgebra& A, const LinearForm& ell) {
  if (is_zero_form(ell)) throw input_error("is_sl_element: zero linear form");
  const int d = A.socle_degree();
  if (d == 0) return true;
  const Poly lp = form_to_poly(ell);
  for (int t = (d - 1) / 2; t >= 0; --t) {
    int k = d - 2 * t;
    Poly G = diff_apply(lp.pow(k), A.generator());
    if (mult_map_rank(A, G, t) != A.h(t)) return false;
  }
  return true;
}

inline bool is_sl_element(const Poly& F, const LinearForm& ell) {
  return is_sl_element(DualAlgebra(F), ell);
}

// ---- Hessians ---------------------------------------------------------------

struct HessianMatrix {
  int s = 0, t = 0;
  std::vector<Exponents> row_basis;  // degree t
  std::vector<Exponents> col_basis;  // degree s
  PolyMatrix matrix;                 // (i,j) = (w_i u_j)∘F, degree d-s-t
};

inline HessianMatrix mixed_hessian(const Poly& F, int s, int t) {
  require_homogeneous_nonzero(F, "mixed_hessian");
  const int d = F.degree();
  if (s < 0 || t < 0 || s + t > d)
    throw input_error("mixed_hessian: need s,t >= 0 and s+t <= deg F");
  HessianMatrix h;
  h.s = s;
  h.t = t;
  h.row_basis = graded_basis(F, t);
  h.col_basis = graded_basis(F, s);
  h.matrix = PolyMatrix(static_cast<int>(h.row_basis.size()),
                        static_cast<int>(h.col_basis.size()));
  for (size_t i = 0; i < h.row_basis.size(); ++i)
    for (size_t j = 0; j < h.col_basis.size(); ++j) {
      Exponents e(F.n);
      for (int v = 0; v < F.n; ++v) e[v] = h.row_basis[i][v] + h.col_basis[j][v];
      Poly entry = diff_apply(Poly::monomial(e), F);
      if (!entry.is_zero())
        h.matrix.entries[i][static_cast<int>(j)] = std::move(entry);
    }
  return h;
}

inline HessianMatrix hessian(const Poly& F, int t) {
  return mixed_hessian(F, t, t);
}

// ---- verdicts ---------------------------------------------------------------

enum class Property { wlp, slp };
enum class Status { holds, fails, unknown };
enum class Provenance {
  none,
  theorem,              // a classification theorem applies
  oracle_witness,       // exact multiplication-map rank at a witness form
  hessian_witness,      // exact evaluated-Hessian rank at a witness point
  symbolic_zero,        // symbolic determinant / generic rank is deficient
  interpolation_zero,   // deficient along a random line, enough points
  probabilistic_zero,   // all randomized trials deficient
};

struct Verdict {
  Property property = Property::wlp;
  Status status = Status::unknown;
  Provenance provenance = Provenance::none;
  bool certified = false;     // exact proof (symbolic or witness-verified)
  std::string theorem;        // when provenance == theorem
  LinearForm witness;         // when status == holds
  std::vector<int> failing_degrees;
  // randomized-certificate parameters
  std::uint64_t seed = 0;
  int trials = 0;
  long long bound = 0;
  double confidence = 0;
  std::string note;
};

inline const char* to_string(Property p) {
  return p == Property::wlp ? "WLP" : "SLP";
}
inline const char* to_string(Status s) {
  switch (s) {
    case Status::holds: return "HOLDS";
    case Status::fails: return "FAILS";
    default: return "UNKNOWN";
  }
}
inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::theorem: return "theorem";
    case Provenance::oracle_witness: return "oracle-witness";
    case Provenance::hessian_witness: return "hessian-witness";
    case Provenance::symbolic_zero: return "symbolic-zero";
    case Provenance::interpolation_zero: return "interpolation-zero";
    case Provenance::probabilistic_zero: return "probabilistic-zero";
    default: return "none";
  }
}

// ---- Hessian-route WLP ------------------------------------------------------

// The middle mixed Hessian: rows degree t = floor(d/2), columns degree
// s = d-t-1; its rank at a point a equals the rank of x ell_a on the
// middle map, so full rank <=> a's form is a weak Lefschetz element.
inline HessianMatrix middle_hessian(const Poly& F) {
  const int d = F.degree();
  const int t = d / 2;
  return mixed_hessian(F, d - t - 1, t);
}

inline Verdict wlp_by_hessian_at(const Poly& F, const LinearForm& point) {
  Verdict v;
  v.property = Property::wlp;
  require_homogeneous_nonzero(F, "wlp_by_hessian");
  if (F.degree() == 0) {
    v.status = Status::holds;
    v.provenance = Provenance::hessian_witness;
    v.certified = true;
    v.witness = point;
    return v;
  }
  HessianMatrix H = middle_hessian(F);
  int need = std::min(H.matrix.rows, H.matrix.cols);
  std::vector<Rat> pt(point.begin(), point.end());
  if (rank_certified(evaluate_matrix(H.matrix, pt)) == need) {
    v.status = Status::holds;
    v.provenance = Provenance::hessian_witness;
    v.certified = true;
    v.witness = point;
  } else {
    v.status = Status::unknown;
    v.note = "inconclusive at the supplied point";
  }
  return v;
}

inline Verdict wlp_by_hessian_random(const Poly& F,
                                     double confidence = kDefaultConfidence,
                                     std::uint64_t seed = kDefaultSeed) {
  Verdict v;
  v.property = Property::wlp;
  v.seed = seed;
  v.confidence = confidence;
  require_homogeneous_nonzero(F, "wlp_by_hessian");
  if (F.degree() == 0) {
    v.status = Status::holds;
    v.provenance = Provenance::hessian_witness;
    v.certified = true;
    v.witness.assign(std::max(F.n, 1), Rat(1));
    return v;
  }
  HessianMatrix H = middle_hessian(F);
  const int n = F.n;
  const int need = std::min(H.matrix.rows, H.matrix.cols);
  const int e = matrix_degree(H.matrix);

  auto full_at = [&](const std::vector<Rat>& pt) {
    return rank_certified(evaluate_matrix(H.matrix, pt)) == need;
  };
  auto hold_with = [&](std::vector<Rat> pt) {
    v.status = Status::holds;
    v.provenance = Provenance::hessian_witness;
    v.certified = true;
    v.witness.assign(pt.begin(), pt.end());
    return v;
  };

  for (int i = 0; i < n; ++i) {
    std::vector<Rat> unit(n, Rat(0));
    unit[i] = 1;
    if (full_at(unit)) return hold_with(unit);
  }
  std::vector<Rat> ones(n, Rat(1));
  if (full_at(ones)) return hold_with(ones);

  // maximal minors have degree <= need*e; Schwartz-Zippel over [-B,B]^n
  const long long db = static_cast<long long>(need) * std::max(e, 1);
  const long long b = db << 20;
  Rat ratio(db, 2 * b + 1), budget(confidence), acc(1);
  int k = 0;
  while (acc > budget) {
    acc *= ratio;
    ++k;
  }
  v.bound = b;
  v.trials = k;
  SplitMix64 rng(seed);
  for (int i = 0; i < k; ++i) {
    std::vector<Rat> pt(n);
    for (int j = 0; j < n; ++j) pt[j] = Rat(Int(rng.in_symmetric_range(b)));
    if (full_at(pt)) return hold_with(pt);
  }
  v.status = Status::fails;
  v.provenance = Provenance::probabilistic_zero;
  v.certified = false;
  v.failing_degrees = {(F.degree() - 1) / 2};
  v.note = "generic middle-Hessian rank deficient in all randomized trials";
  return v;
}

// ---- decision procedures ----------------------------------------------------

enum class DecideMode { fast, certify };

namespace detail {

// candidate forms in the documented order: coordinates, all-ones, then two
// small random forms, then box-B forms whose count carries the
// Schwartz-Zippel confidence budget
struct CandidateStream {
  int n;
  long long box;
  int phase = 0;
  int index = 0;
  SplitMix64 rng;
  CandidateStream(int nvars, long long b, std::uint64_t seed)
      : n(nvars), box(b), rng(seed) {}
  LinearForm next() {
    if (phase == 0) {
      LinearForm ell(n, Rat(0));
      ell[index] = 1;
      if (++index == n) { phase = 1; index = 0; }
      return ell;
    }
    if (phase == 1) {
      ++phase;
      return LinearForm(n, Rat(1));
    }
    long long b = phase == 2 && index < 2 ? 99 : box;
    if (phase == 2 && ++index >= 2) { phase = 3; }
    for (;;) {
      LinearForm ell(n);
      bool nz = false;
      for (int i = 0; i < n; ++i) {
        ell[i] = Rat(Int(rng.in_symmetric_range(b)));
        if (ell[i] != 0) nz = true;
      }
      if (nz) return ell;
    }
  }
};

inline int sz_trials(long long degree_bound, long long box, double confidence) {
  Rat ratio(degree_bound, 2 * box + 1), budget(confidence), acc(1);
  int k = 0;
  while (acc > budget) {
    acc *= ratio;
    ++k;
    if (k > 4096) break;
  }
  return k;
}

// rank of the square map x ell^(d-2t) : A_t -> A_{d-t} at a specific form
inline int sl_map_rank(const DualAlgebra& A, const Poly& ell_poly, int t) {
  Poly G = diff_apply(ell_poly.pow(A.socle_degree() - 2 * t), A.generator());
  return mult_map_rank(A, G, t);
}

}  // namespace detail

// FAST: exact rank checks at cheap candidate forms; a found witness is an
// exact HOLDS, exhausted trials give a probabilistic FAILS whose parameters
// are logged. CERTIFY: HOLDS as in FAST; FAILS is proven by exact generic
// rank over the function field (symbolic elimination), falling back to
// rank interpolation along a random line when dimensions exceed the
// symbolic cap.
inline Verdict decide_wlp(const Poly& F, DecideMode mode = DecideMode::fast,
                          std::uint64_t seed = kDefaultSeed,
                          double confidence = kDefaultConfidence) {
  Verdict v;
  v.property = Property::wlp;
  v.seed = seed;
  v.confidence = confidence;
  require_homogeneous_nonzero(F, "decide_wlp");
  DualAlgebra A(F);
  const int d = A.socle_degree();
  const int n = A.nvars();
  if (d == 0) {
    v.status = Status::holds;
    v.provenance = Provenance::oracle_witness;
    v.certified = true;
    v.witness.assign(std::max(n, 1), Rat(1));
    return v;
  }
  const int t = (d - 1) / 2;
  const int need = std::min(A.h(t), A.h(t + 1));

  const long long db = need;  // middle-map minors are degree <= need in a
  const long long box = std::max(db, 1LL) << 20;
  const int k = detail::sz_trials(db, box, confidence);
  v.bound = box;
  v.trials = k;

  detail::CandidateStream cand(n, box, seed);
  const int total = n + 1 + 2 + k;
  for (int i = 0; i < total; ++i) {
    LinearForm ell = cand.next();
    if (mult_map_rank(A, ell, t, 1) == need) {
      v.status = Status::holds;
      v.provenance = Provenance::oracle_witness;
      v.certified = true;
      v.witness = ell;
      return v;
    }
  }

  v.failing_degrees = {t};
  if (mode == DecideMode::fast) {
    v.status = Status::fails;
    v.provenance = Provenance::probabilistic_zero;
    v.certified = false;
    v.note = "middle map rank deficient at all candidate forms";
    return v;
  }

  // CERTIFY: generic rank of the middle mixed Hessian, h_{t+1} x h_t with
  // degree-1 entries; deficiency there is deficiency for every form.
  HessianMatrix H = middle_hessian(F);
  int generic = -1;
  try {
    generic = symbolic_rank(H.matrix);
    v.provenance = Provenance::symbolic_zero;
  } catch (const capacity_error&) {
    // rank along a random line a0 + s*a1: minor determinants restrict to
    // univariate polynomials of degree <= need, so need+1 distinct sample
    // points with deficient rank force deficiency along the whole line
    SplitMix64 rng(seed ^ 0x11ce5ca1e5ULL);
    std::vector<Rat> a0(n), a1(n);
    for (int i = 0; i < n; ++i) {
      a0[i] = Rat(Int(rng.in_symmetric_range(1 << 20)));
      a1[i] = Rat(Int(rng.in_symmetric_range(1 << 20)));
    }
    const int e = matrix_degree(H.matrix);
    const long long pts = static_cast<long long>(need) * std::max(e, 1) + 1;
    if (pts > 4096)
      throw capacity_error("decide_wlp: interpolation fallback too large");
    generic = 0;
    for (long long s = 0; s < pts; ++s) {
      std::vector<Rat> pt(n);
      for (int i = 0; i < n; ++i) pt[i] = a0[i] + Rat(s) * a1[i];
      generic = std::max(generic,
                         rank_certified(evaluate_matrix(H.matrix, pt)));
      if (generic == need) break;
    }
    v.provenance = Provenance::interpolation_zero;
    v.trials = static_cast<int>(pts);
  }

  if (generic < need) {
    v.status = Status::fails;
    v.certified = true;
    v.note = "generic middle-map rank " + std::to_string(generic) +
             " below required " + std::to_string(need);
    return v;
  }

  // generic rank is full, the earlier candidates were just unlucky: hunt a
  // concrete witness with fresh randomness until one verifies exactly
  SplitMix64 rng(seed ^ 0x5EED0FF5E7ULL);
  for (int i = 0; i < 256; ++i) {
    LinearForm ell(n);
    bool nz = false;
    for (int j = 0; j < n; ++j) {
      ell[j] = Rat(Int(rng.in_symmetric_range(box)));
      if (ell[j] != 0) nz = true;
    }
    if (!nz) continue;
    if (mult_map_rank(A, ell, t, 1) == need) {
      v.status = Status::holds;
      v.provenance = Provenance::oracle_witness;
      v.certified = true;
      v.witness = ell;
      v.failing_degrees.clear();
      return v;
    }
  }
  v.status = Status::unknown;
  v.note = "generic rank is full but no witness was found";
  return v;
}

// SLP failure at generic forms means some square Hessian determinant is
// identically zero; that degree is the certificate. When every determinant
// is provably nonzero a simultaneous witness exists and is found by
// sampling and verified exactly.
inline Verdict decide_slp(const Poly& F, DecideMode mode = DecideMode::fast,
                          std::uint64_t seed = kDefaultSeed,
                          double confidence = kDefaultConfidence) {
  Verdict v;
  v.property = Property::slp;
  v.seed = seed;
  v.confidence = confidence;
  require_homogeneous_nonzero(F, "decide_slp");
  DualAlgebra A(F);
  const int d = A.socle_degree();
  const int n = A.nvars();
  if (d == 0) {
    v.status = Status::holds;
    v.provenance = Provenance::oracle_witness;
    v.certified = true;
    v.witness.assign(std::max(n, 1), Rat(1));
    return v;
  }

  long long db = 1;  // max minor degree over the square maps
  for (int t = 0; t <= (d - 1) / 2; ++t)
    db = std::max(db, static_cast<long long>(A.h(t)) * (d - 2 * t));
  const long long box = db << 20;
  const int k = detail::sz_trials(db, box, confidence);
  v.bound = box;
  v.trials = k;

  auto first_failing_degree = [&](const LinearForm& ell) {
    const Poly lp = form_to_poly(ell);
    for (int t = (d - 1) / 2; t >= 0; --t)
      if (detail::sl_map_rank(A, lp, t) != A.h(t)) return t;
    return -1;
  };

  detail::CandidateStream cand(n, box, seed);
  const int total = n + 1 + 2 + k;
  std::vector<int> seen_failures;
  for (int i = 0; i < total; ++i) {
    LinearForm ell = cand.next();
    int bad = first_failing_degree(ell);
    if (bad < 0) {
      v.status = Status::holds;
      v.provenance = Provenance::oracle_witness;
      v.certified = true;
      v.witness = ell;
      return v;
    }
    if (seen_failures.empty() || seen_failures.back() != bad)
      seen_failures.push_back(bad);
  }

  std::sort(seen_failures.begin(), seen_failures.end());
  seen_failures.erase(std::unique(seen_failures.begin(), seen_failures.end()),
                      seen_failures.end());
  v.failing_degrees = seen_failures;
  if (mode == DecideMode::fast) {
    v.status = Status::fails;
    v.provenance = Provenance::probabilistic_zero;
    v.certified = false;
    v.note = "some square map rank deficient at all candidate forms";
    return v;
  }

  // CERTIFY: scan the square Hessians; an identically-zero determinant at
  // any degree certifies failure for every form.
  for (int t = (d - 1) / 2; t >= 0; --t) {
    HessianMatrix H = hessian(F, t);
    const int ht = H.matrix.rows;
    bool degenerate;
    Provenance how = Provenance::symbolic_zero;
    if (ht <= kSymbolicDetCap) {
      degenerate = symbolic_det(H.matrix).is_zero();
    } else {
      try {
        degenerate = symbolic_rank(H.matrix) < ht;
      } catch (const capacity_error&) {
        // deficiency along a random line, point count above the degree bound
        SplitMix64 rng(seed ^ 0x11ce5ca1e5ULL ^ t);
        std::vector<Rat> a0(n), a1(n);
        for (int i = 0; i < n; ++i) {
          a0[i] = Rat(Int(rng.in_symmetric_range(1 << 20)));
          a1[i] = Rat(Int(rng.in_symmetric_range(1 << 20)));
        }
        const int e = matrix_degree(H.matrix);
        const long long pts =
            static_cast<long long>(ht) * std::max(e, 1) + 1;
        if (pts > 4096)
          throw capacity_error("decide_slp: interpolation fallback too large");
        int best = 0;
        for (long long s = 0; s < pts && best < ht; ++s) {
          std::vector<Rat> pt(n);
          for (int i = 0; i < n; ++i) pt[i] = a0[i] + Rat(s) * a1[i];
          best = std::max(best, rank_certified(evaluate_matrix(H.matrix, pt)));
        }
        degenerate = best < ht;
        how = Provenance::interpolation_zero;
      }
    }
    if (degenerate) {
      v.status = Status::fails;
      v.provenance = how;
      v.certified = true;
      v.failing_degrees = {t};
      v.note = "square Hessian at degree " + std::to_string(t) +
               " is generically rank deficient";
      return v;
    }
  }

  // all determinants are nonzero: a generic form works, sample for one
  SplitMix64 rng(seed ^ 0x5EED0FF5E7ULL);
  for (int i = 0; i < 256; ++i) {
    LinearForm ell(n);
    bool nz = false;
    for (int j = 0; j < n; ++j) {
      ell[j] = Rat(Int(rng.in_symmetric_range(box)));
      if (ell[j] != 0) nz = true;
    }
    if (!nz) continue;
    if (first_failing_degree(ell) < 0) {
      v.status = Status::holds;
      v.provenance = Provenance::oracle_witness;
      v.certified = true;
      v.witness = ell;
      v.failing_degrees.clear();
      return v;
    }
  }
  v.status = Status::unknown;
  v.note = "all Hessian determinants are nonzero but no witness was found";
  return v;
}

}  // namespace aglef
