#pragma once

// Inverse-system computations for a homogeneous dual generator F:
// catalecticant matrices, the h-vector, per-degree monomial bases of the
// quotient algebra, Sperner statistics, and annihilator membership.

#include <aglef/exactla.hpp>

namespace aglef {

enum class Action { differentiate, contract };

inline Poly apply_action(const Poly& op, const Poly& f, Action a) {
  return a == Action::differentiate ? diff_apply(op, f) : contract_apply(op, f);
}

using HVector = std::vector<int>;

struct SpernerStats {
  int sperner = 0;      // largest h-vector entry
  int flat_length = 0;  // how many degrees attain it
  int flat_start = 0;   // first such degree
  int flat_end = 0;     // last such degree
  bool has_flat() const { return flat_length >= 3; }
};

inline void require_homogeneous_nonzero(const Poly& f, const char* who) {
  if (f.is_zero())
    throw input_error(std::string(who) + ": zero polynomial");
  if (!f.is_homogeneous())
    throw input_error(std::string(who) + ": polynomial is not homogeneous");
}

// Rows are monomials_of_degree(n,t), columns monomials_of_degree(n,d-t);
// the (u,w) entry is the coefficient of X^w in u∘F. For a binomial F every
// row has at most two nonzero entries, and the sparse carrier keeps that.
inline RatMatrix catalecticant(const Poly& F, int t,
                               Action action = Action::differentiate) {
  require_homogeneous_nonzero(F, "catalecticant");
  const int d = F.degree();
  if (t < 0 || t > d)
    throw input_error("catalecticant: degree " + std::to_string(t) +
                      " outside 0.." + std::to_string(d));
  auto rows = monomials_of_degree(F.n, t);
  auto cols = monomials_of_degree(F.n, d - t);
  std::map<Exponents, int> col_index;
  for (size_t j = 0; j < cols.size(); ++j)
    col_index[cols[j]] = static_cast<int>(j);
  RatMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    Poly r = apply_action(Poly::monomial(rows[i]), F, action);
    for (auto& [e, c] : r.terms) m.entries[i][col_index.at(e)] = c;
  }
  return m;
}

// h_t = rank(catalecticant(F,t)); the result is checked against the
// Gorenstein invariants (ends 1, symmetric, positive) as an engine guard.
inline HVector hilbert_function(const Poly& F) {
  require_homogeneous_nonzero(F, "hilbert_function");
  const int d = F.degree();
  HVector h(d + 1);
  for (int t = 0; t <= d; ++t) h[t] = rank(catalecticant(F, t));
  for (int t = 0; t <= d; ++t) {
    if (h[t] < 1 || h[t] != h[d - t] || h[0] != 1)
      throw std::logic_error("hilbert_function: invariant violated");
  }
  return h;
}

// Monomials of degree t whose catalecticant rows are independent, found by
// a greedy scan from the revlex-smallest monomial upward; the returned list
// is in the descending display order used everywhere else. This choice
// reproduces the construction the downstream classification relies on: ties
// between proportional rows resolve toward later variables.
inline std::vector<Exponents> graded_basis(const Poly& F, int t) {
  require_homogeneous_nonzero(F, "graded_basis");
  const int d = F.degree();
  if (t < 0 || t > d)
    throw input_error("graded_basis: degree out of range");
  auto monos = monomials_of_degree(F.n, t);
  auto cols = monomials_of_degree(F.n, d - t);
  std::map<Exponents, int> col_index;
  for (size_t j = 0; j < cols.size(); ++j)
    col_index[cols[j]] = static_cast<int>(j);

  // incremental row reduction; pivot on the lowest column of each kept row
  std::vector<std::map<int, Rat>> reduced;
  std::vector<Exponents> kept;
  for (auto it = monos.rbegin(); it != monos.rend(); ++it) {
    Poly r = diff_apply(Poly::monomial(*it), F);
    std::map<int, Rat> row;
    for (auto& [e, c] : r.terms) row[col_index.at(e)] = c;
    for (auto& piv : reduced) {
      if (row.empty()) break;
      int pc = piv.begin()->first;
      auto hit = row.find(pc);
      if (hit == row.end()) continue;
      Rat f = hit->second / piv.begin()->second;
      row.erase(hit);
      for (auto jt = std::next(piv.begin()); jt != piv.end(); ++jt) {
        auto [at, fresh] = row.emplace(jt->first, Rat(0));
        at->second -= f * jt->second;
        if (at->second == 0) row.erase(at);
      }
    }
    if (!row.empty()) {
      reduced.push_back(std::move(row));
      kept.push_back(*it);
    }
  }
  std::reverse(kept.begin(), kept.end());
  return kept;
}

inline SpernerStats sperner_stats(const HVector& h) {
  if (h.empty()) throw input_error("sperner_stats: empty h-vector");
  SpernerStats s;
  s.sperner = *std::max_element(h.begin(), h.end());
  for (int i = 0; i < static_cast<int>(h.size()); ++i) {
    if (h[i] != s.sperner) continue;
    if (s.flat_length == 0) s.flat_start = i;
    s.flat_end = i;
    ++s.flat_length;
  }
  return s;
}

inline bool annihilator_membership(const Poly& p, const Poly& F,
                                   Action action = Action::differentiate) {
  return apply_action(p, F, action).is_zero();
}

// Memoizing view of one algebra: h-vector and graded bases are computed on
// first use and reused across the many rank questions a Lefschetz decision
// asks. Not safe for concurrent use of a single instance.
class DualAlgebra {
 public:
  explicit DualAlgebra(Poly f) : f_(std::move(f)) {
    require_homogeneous_nonzero(f_, "DualAlgebra");
    d_ = f_.degree();
  }

  const Poly& generator() const { return f_; }
  int nvars() const { return f_.n; }
  int socle_degree() const { return d_; }

  const HVector& hvector() const {
    if (h_.empty()) h_ = hilbert_function(f_);
    return h_;
  }

  int h(int t) const {
    if (t < 0 || t > d_) return 0;
    return hvector()[t];
  }

  const std::vector<Exponents>& basis(int t) const {
    auto it = bases_.find(t);
    if (it == bases_.end())
      it = bases_.emplace(t, graded_basis(f_, t)).first;
    return it->second;
  }

  SpernerStats sperner() const { return sperner_stats(hvector()); }

 private:
  Poly f_;
  int d_ = 0;
  mutable HVector h_;
  mutable std::map<int, std::vector<Exponents>> bases_;
};

}  // namespace aglef
