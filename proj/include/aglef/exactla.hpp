#pragma once

// Exact linear algebra over Q and over polynomial entries: sparse
// fraction-free elimination (rank, determinant), symbolic determinants,
// randomized nonvanishing tests with certificates, and a word-size
// modular accelerator whose positive answers are re-certified exactly.

#include <aglef/polyring.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace aglef {

// ---- entry-ring hooks ----------------------------------------------------

inline bool entry_is_zero(const Int& v) { return v == 0; }
inline bool entry_is_zero(const Rat& v) { return v == 0; }
inline bool entry_is_zero(const Poly& p) { return p.is_zero(); }

inline Int exact_div(const Int& a, const Int& b) {
  Int q, r;
  divide_qr(a, b, q, r);
  if (r != 0) throw std::logic_error("exact_div: inexact integer division");
  return q;
}

inline Rat exact_div(const Rat& a, const Rat& b) { return a / b; }

// long division in lex order; the quotient must be exact
inline Poly exact_div(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::logic_error("exact_div: zero divisor");
  a.check_same_ring(b);
  Poly rem = a, quot(a.n);
  const auto& [eb, cb] = *b.terms.rbegin();
  Exponents diff(a.n);
  while (!rem.is_zero()) {
    const auto& [er, cr] = *rem.terms.rbegin();
    for (int i = 0; i < a.n; ++i) {
      if (er[i] < eb[i])
        throw std::logic_error("exact_div: inexact polynomial division");
      diff[i] = er[i] - eb[i];
    }
    Poly t = Poly::monomial(diff, cr / cb);
    quot += t;
    rem -= t * b;
  }
  return quot;
}

// ---- sparse matrices -----------------------------------------------------

template <class T>
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<std::map<int, T>> entries;  // per-row: col -> nonzero value

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), entries(r) {
    if (r < 0 || c < 0) throw input_error("negative matrix dimension");
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& dense) {
    int r = static_cast<int>(dense.size());
    int c = r == 0 ? 0 : static_cast<int>(dense[0].size());
    Matrix m(r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(dense[i].size()) != c)
        throw input_error("ragged matrix rows");
      for (int j = 0; j < c; ++j)
        if (!entry_is_zero(dense[i][j])) m.entries[i][j] = dense[i][j];
    }
    return m;
  }

  T get(int r, int c) const {
    auto it = entries[r].find(c);
    return it == entries[r].end() ? T{} : it->second;
  }

  void set(int r, int c, T v) {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
      throw input_error("matrix index out of range");
    if (entry_is_zero(v)) entries[r].erase(c);
    else entries[r][c] = std::move(v);
  }

  Matrix transpose() const {
    Matrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (auto& [j, v] : entries[i]) t.entries[j][i] = v;
    return t;
  }

  Matrix submatrix(const std::vector<int>& rs, const std::vector<int>& cs) const {
    Matrix s(static_cast<int>(rs.size()), static_cast<int>(cs.size()));
    std::map<int, int> cpos;
    for (size_t j = 0; j < cs.size(); ++j) cpos[cs[j]] = static_cast<int>(j);
    for (size_t i = 0; i < rs.size(); ++i)
      for (auto& [j, v] : entries[rs[i]]) {
        auto it = cpos.find(j);
        if (it != cpos.end()) s.entries[i][it->second] = v;
      }
    return s;
  }

  long long nonzeros() const {
    long long k = 0;
    for (auto& r : entries) k += static_cast<long long>(r.size());
    return k;
  }
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;
using PolyMatrix = Matrix<Poly>;

// ---- fraction-free elimination -------------------------------------------

template <class T>
struct EliminationResult {
  int rank = 0;
  std::vector<std::pair<int, int>> pivots;  // (row, col) in selection order
  T last_pivot{};                           // valid when rank > 0
  int sign = 1;  // parity of the pivot row and column permutations
};

namespace detail {

inline int permutation_sign(std::vector<int> seq) {
  // counting inversions is fine at these sizes
  int inv = 0;
  for (size_t i = 0; i < seq.size(); ++i)
    for (size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

}  // namespace detail

// One-step fraction-free (Bareiss) elimination with Markowitz pivoting.
// Every division below is exact: after k steps each active entry is a
// (k+1)-minor of the input, and the previous pivot divides the two-term
// update by Sylvester's identity.
template <class T>
EliminationResult<T> eliminate(Matrix<T> a, const T& one) {
  EliminationResult<T> res;
  std::vector<char> row_done(a.rows, 0), col_done(a.cols, 0);
  T prev = one;

  for (;;) {
    // Markowitz: minimize (nnz(row)-1)*(nnz(col)-1), tie-break lowest (r,c)
    std::vector<int> rcount(a.rows, 0), ccount(a.cols, 0);
    for (int i = 0; i < a.rows; ++i) {
      if (row_done[i]) continue;
      for (auto& [j, v] : a.entries[i]) {
        if (col_done[j]) continue;
        ++rcount[i];
        ++ccount[j];
      }
    }
    long long best = -1;
    int pr = -1, pc = -1;
    for (int i = 0; i < a.rows; ++i) {
      if (row_done[i]) continue;
      for (auto& [j, v] : a.entries[i]) {
        if (col_done[j]) continue;
        long long cost =
            static_cast<long long>(rcount[i] - 1) * (ccount[j] - 1);
        if (best == -1 || cost < best ||
            (cost == best && std::make_pair(i, j) < std::make_pair(pr, pc))) {
          best = cost;
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == -1) break;  // no nonzero entry left in the active block

    const T pivot = a.entries[pr][pc];
    const bool first_step = res.pivots.empty();
    for (int i = 0; i < a.rows; ++i) {
      if (row_done[i] || i == pr) continue;
      std::map<int, T> fresh;
      auto it_l = a.entries[i].find(pc);
      const bool has_l = it_l != a.entries[i].end();
      const T lead = has_l ? it_l->second : T{};
      // union of this row's and the pivot row's active columns
      for (auto& [j, v] : a.entries[i]) {
        if (col_done[j] || j == pc) continue;
        T num = pivot * v;
        if (has_l) {
          auto it_p = a.entries[pr].find(j);
          if (it_p != a.entries[pr].end()) num = num - lead * it_p->second;
        }
        if (!entry_is_zero(num))
          fresh[j] = first_step ? std::move(num) : exact_div(num, prev);
      }
      if (has_l) {
        for (auto& [j, v] : a.entries[pr]) {
          if (col_done[j] || j == pc || a.entries[i].count(j)) continue;
          T num = -(lead * v);
          fresh[j] = first_step ? std::move(num) : exact_div(num, prev);
        }
      }
      a.entries[i] = std::move(fresh);
    }

    row_done[pr] = 1;
    col_done[pc] = 1;
    res.pivots.emplace_back(pr, pc);
    res.last_pivot = pivot;
    prev = pivot;
    ++res.rank;
  }

  std::vector<int> rs, cs;
  for (auto& [r, c] : res.pivots) {
    rs.push_back(r);
    cs.push_back(c);
  }
  res.sign = detail::permutation_sign(rs) * detail::permutation_sign(cs);
  return res;
}

inline int rank(const IntMatrix& m) { return eliminate(m, Int(1)).rank; }

// row-wise denominator clearing preserves rank and scales det predictably
inline IntMatrix scaled_to_integers(const RatMatrix& m, Rat* det_scale = nullptr) {
  IntMatrix z(m.rows, m.cols);
  Rat scale = 1;
  for (int i = 0; i < m.rows; ++i) {
    Int l = 1;
    for (auto& [j, v] : m.entries[i])
      l = lcm(l, Int(denominator(v)));
    for (auto& [j, v] : m.entries[i])
      z.entries[i][j] = Int(numerator(v)) * (l / Int(denominator(v)));
    if (!m.entries[i].empty()) scale *= Rat(l);
  }
  if (det_scale) *det_scale = scale;
  return z;
}

inline int rank(const RatMatrix& m) { return rank(scaled_to_integers(m)); }

inline Int det(const IntMatrix& m) {
  if (m.rows != m.cols) throw input_error("det: matrix is not square");
  if (m.rows == 0) return 1;
  auto res = eliminate(m, Int(1));
  if (res.rank < m.rows) return 0;
  return res.sign * res.last_pivot;
}

inline Rat det(const RatMatrix& m) {
  if (m.rows != m.cols) throw input_error("det: matrix is not square");
  Rat scale;
  IntMatrix z = scaled_to_integers(m, &scale);
  return Rat(det(z)) / scale;
}

// arity of the polynomial entries; 0 for a matrix with no entries
inline int matrix_arity(const PolyMatrix& m) {
  for (auto& row : m.entries)
    for (auto& [j, v] : row) return v.n;
  return 0;
}

// shared homogeneous degree of the nonzero entries (0 if there are none)
inline int matrix_degree(const PolyMatrix& m) {
  int e = -1;
  for (auto& row : m.entries)
    for (auto& [j, v] : row) {
      if (!v.is_homogeneous())
        throw input_error("polynomial matrix entry is not homogeneous");
      int d = v.degree();
      if (e == -1) e = d;
      else if (d != e)
        throw input_error("polynomial matrix entries have mixed degrees");
    }
  return e == -1 ? 0 : e;
}

inline RatMatrix evaluate_matrix(const PolyMatrix& m,
                                 const std::vector<Rat>& point) {
  RatMatrix r(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (auto& [j, v] : m.entries[i]) {
      Rat val = evaluate(v, point);
      if (val != 0) r.entries[i][j] = val;
    }
  return r;
}

inline constexpr int kSymbolicDetCap = 14;
inline constexpr int kSymbolicRankCap = 24;

inline Poly symbolic_det(const PolyMatrix& m, int cap = kSymbolicDetCap) {
  if (m.rows != m.cols) throw input_error("symbolic_det: matrix is not square");
  if (m.rows > cap)
    throw capacity_error(
        "symbolic_det: dimension " + std::to_string(m.rows) + " exceeds cap " +
        std::to_string(cap) + "; use the randomized nonvanishing test instead");
  int n = matrix_arity(m);
  if (m.rows == 0) return Poly::constant(n, 1);
  auto res = eliminate(m, Poly::constant(n, 1));
  if (res.rank < m.rows) return Poly::zero(n);
  return res.last_pivot * Rat(res.sign);
}

// generic (function-field) rank of a polynomial matrix
inline int symbolic_rank(const PolyMatrix& m, int cap = kSymbolicRankCap) {
  if (std::min(m.rows, m.cols) > cap)
    throw capacity_error("symbolic_rank: dimension exceeds cap " +
                         std::to_string(cap));
  int n = matrix_arity(m);
  return eliminate(m, Poly::constant(n, 1)).rank;
}

// ---- deterministic PRNG (stable across platforms) ------------------------

struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  // uniform on [0, m] by rejection
  std::uint64_t below(std::uint64_t m) {
    if (m == UINT64_MAX) return next();
    std::uint64_t span = m + 1, lim = UINT64_MAX - UINT64_MAX % span;
    for (;;) {
      std::uint64_t v = next();
      if (v < lim) return v % span;
    }
  }
  long long in_symmetric_range(long long b) {  // uniform on [-b, b]
    return static_cast<long long>(below(2 * static_cast<std::uint64_t>(b))) - b;
  }
};

inline constexpr std::uint64_t kDefaultSeed = 0x00C0FFEE00C0FFEEULL;
inline constexpr double kDefaultConfidence = 0x1p-80;

// ---- randomized nonvanishing of a symbolic determinant -------------------

struct DetCertificate {
  bool nonzero = false;
  bool certain = false;            // TRUE answers and degree-0 cases are exact
  std::vector<Int> witness;        // point with nonzero determinant
  long long bound = 0;             // sampling box half-width B
  int trials = 0;                  // Schwartz-Zippel sample count k
  std::uint64_t seed = 0;
  double confidence = 0;           // requested failure-probability bound
};

// Decides det(M) != 0 as a polynomial identity. A TRUE answer carries an
// integer witness point and is always correct; FALSE is wrong with
// probability at most `confidence`. Unit vectors and the all-ones point are
// tried first (sound on the TRUE side), then k uniform samples from [-B,B]^n
// with B >= dim*e*2^20 and (dim*e/(2B+1))^k <= confidence.
inline DetCertificate is_det_nonzero(const PolyMatrix& m,
                                     double confidence = kDefaultConfidence,
                                     std::uint64_t seed = kDefaultSeed) {
  if (m.rows != m.cols) throw input_error("is_det_nonzero: matrix not square");
  if (confidence <= 0 || confidence >= 1)
    throw input_error("is_det_nonzero: confidence must be in (0,1)");
  DetCertificate cert;
  cert.seed = seed;
  cert.confidence = confidence;

  const int dim = m.rows;
  const int e = matrix_degree(m);
  const int n = matrix_arity(m);
  if (dim == 0) {  // det of the empty matrix is 1
    cert.nonzero = true;
    cert.certain = true;
    return cert;
  }
  if (e == 0 || n == 0) {  // constant entries: decide exactly
    RatMatrix c = evaluate_matrix(m, std::vector<Rat>(n, Rat(0)));
    cert.nonzero = det(c) != 0;
    cert.certain = true;
    if (cert.nonzero) cert.witness.assign(n, Int(0));
    return cert;
  }

  auto try_point = [&](const std::vector<Int>& pt) {
    std::vector<Rat> q(pt.begin(), pt.end());
    if (det(evaluate_matrix(m, q)) != 0) {
      cert.nonzero = true;
      cert.certain = true;
      cert.witness = pt;
      return true;
    }
    return false;
  };

  // sound deterministic candidates first
  for (int i = 0; i < n; ++i) {
    std::vector<Int> unit(n, Int(0));
    unit[i] = 1;
    if (try_point(unit)) return cert;
  }
  if (try_point(std::vector<Int>(n, Int(1)))) return cert;

  const long long degree_bound = static_cast<long long>(dim) * e;
  const long long b = degree_bound << 20;
  cert.bound = b;
  Rat ratio(degree_bound, 2 * b + 1);
  Rat budget(confidence);
  Rat acc = 1;
  int k = 0;
  while (acc > budget) {
    acc *= ratio;
    ++k;
  }
  cert.trials = k;

  SplitMix64 rng(seed);
  for (int t = 0; t < k; ++t) {
    std::vector<Int> pt(n);
    for (int i = 0; i < n; ++i) pt[i] = Int(rng.in_symmetric_range(b));
    if (try_point(pt)) return cert;
  }
  cert.nonzero = false;
  cert.certain = false;  // wrong with probability <= confidence
  return cert;
}

// ---- modular accelerator --------------------------------------------------

inline constexpr std::uint64_t kModulus = (1ULL << 61) - 1;  // Mersenne prime

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t to_mod(const Int& v, std::uint64_t p) {
  Int r = v % Int(p);
  if (r < 0) r += Int(p);
  return static_cast<std::uint64_t>(r);
}

}  // namespace detail

struct ModularRank {
  bool usable = false;  // false when a denominator vanished mod p
  int rank = 0;
  std::vector<int> pivot_rows, pivot_cols;
};

// Gaussian elimination over F_p. rank mod p never exceeds the rank over Q,
// and a full-rank pivot minor certifies the exact rank from below.
inline ModularRank modular_rank(const RatMatrix& m, std::uint64_t p = kModulus) {
  ModularRank out;
  std::vector<std::map<int, std::uint64_t>> rows(m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (auto& [j, v] : m.entries[i]) {
      std::uint64_t den = detail::to_mod(Int(denominator(v)), p);
      if (den == 0) return out;  // unusable at this prime
      std::uint64_t num = detail::to_mod(Int(numerator(v)), p);
      if (num == 0) continue;
      rows[i][j] =
          detail::mulmod(num, detail::powmod(den, p - 2, p), p);
    }
  out.usable = true;

  std::vector<char> done(m.rows, 0);
  for (int col = 0; col < m.cols; ++col) {
    int pick = -1;
    size_t best = 0;
    for (int i = 0; i < m.rows; ++i) {
      if (done[i]) continue;
      auto it = rows[i].find(col);
      if (it == rows[i].end()) continue;
      if (pick == -1 || rows[i].size() < best) {
        pick = i;
        best = rows[i].size();
      }
    }
    if (pick == -1) continue;
    done[pick] = 1;
    out.pivot_rows.push_back(pick);
    out.pivot_cols.push_back(col);
    ++out.rank;
    std::uint64_t inv = detail::powmod(rows[pick][col], p - 2, p);
    for (int i = 0; i < m.rows; ++i) {
      if (done[i] && i != pick) continue;
      if (i == pick) continue;
      auto it = rows[i].find(col);
      if (it == rows[i].end()) continue;
      std::uint64_t f = detail::mulmod(it->second, inv, p);
      rows[i].erase(it);
      for (auto& [j, v] : rows[pick]) {
        if (j == col) continue;
        std::uint64_t sub = detail::mulmod(f, v, p);
        auto jt = rows[i].find(j);
        if (jt == rows[i].end()) {
          if (sub) rows[i][j] = p - sub;
        } else {
          jt->second = (jt->second + p - sub) % p;
          if (jt->second == 0) rows[i].erase(jt);
        }
      }
    }
  }
  return out;
}

// Exact rank with a modular fast path: when the matrix is full rank mod p,
// exact elimination of the p-chosen pivot minor certifies the answer;
// otherwise fall back to exact elimination of the whole matrix.
inline int rank_certified(const RatMatrix& m) {
  auto hint = modular_rank(m);
  if (hint.usable && hint.rank == std::min(m.rows, m.cols)) {
    RatMatrix minor = m.submatrix(hint.pivot_rows, hint.pivot_cols);
    if (rank(minor) == hint.rank) return hint.rank;
  }
  return rank(m);
}

// ---- express a row in the row space of a full-row-rank matrix ------------

// Finds x with x*B = v, i.e. coordinates of v w.r.t. the rows of B.
// Returns nullopt when v is outside the row space.
inline std::optional<std::vector<Rat>> solve_in_rowspace(
    const RatMatrix& basis, const std::vector<Rat>& v) {
  if (static_cast<int>(v.size()) != basis.cols)
    throw input_error("solve_in_rowspace: length mismatch");
  const int h = basis.rows;
  // augmented rows: (row of B | unit tracker)
  std::vector<std::map<int, Rat>> rows(h);
  std::vector<std::vector<Rat>> track(h, std::vector<Rat>(h, Rat(0)));
  for (int i = 0; i < h; ++i) {
    rows[i] = basis.entries[i];
    track[i][i] = 1;
  }
  std::map<int, Rat> target;
  for (int j = 0; j < basis.cols; ++j)
    if (v[j] != 0) target[j] = v[j];
  std::vector<Rat> coeff(h, Rat(0));

  std::vector<char> done(h, 0);
  for (int col = 0; col < basis.cols; ++col) {
    int pick = -1;
    for (int i = 0; i < h; ++i)
      if (!done[i] && rows[i].count(col)) { pick = i; break; }
    if (pick == -1) continue;
    done[pick] = 1;
    Rat piv = rows[pick][col];
    // clear the column from the other basis rows
    for (int i = 0; i < h; ++i) {
      if (i == pick) continue;
      auto it = rows[i].find(col);
      if (it == rows[i].end()) continue;
      Rat f = it->second / piv;
      rows[i].erase(it);
      for (auto& [j, w] : rows[pick]) {
        if (j == col) continue;
        Rat nv = rows[i].count(j) ? Rat(rows[i][j] - f * w) : Rat(-f * w);
        if (nv == 0) rows[i].erase(j);
        else rows[i][j] = nv;
      }
      for (int t = 0; t < h; ++t) track[i][t] -= f * track[pick][t];
    }
    // and from the target
    auto it = target.find(col);
    if (it != target.end()) {
      Rat f = it->second / piv;
      target.erase(it);
      for (auto& [j, w] : rows[pick]) {
        if (j == col) continue;
        Rat nv = target.count(j) ? Rat(target[j] - f * w) : Rat(-f * w);
        if (nv == 0) target.erase(j);
        else target[j] = nv;
      }
      for (int t = 0; t < h; ++t) coeff[t] += f * track[pick][t];
    }
  }
  if (!target.empty()) return std::nullopt;
  return coeff;
}

}  // namespace aglef
