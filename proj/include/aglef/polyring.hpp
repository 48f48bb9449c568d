#pragma once

// Sparse multivariate polynomials over exact rationals, plus the two
// apolarity actions (differentiation and contraction) of one polynomial
// ring on another.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace aglef {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// malformed user-facing input (parse errors, bad dimensions)
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a computation exceeded a hard size cap and was refused, not botched
struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) {
  int s = 0;
  for (int v : e) s += v;
  return s;
}

// All monomials of total degree t in n variables, lexicographically
// descending with variable 1 most significant: (n=3,t=2) starts at
// x1^2 and ends at x3^2.
inline std::vector<Exponents> monomials_of_degree(int n, int t) {
  if (n < 0 || t < 0) throw input_error("monomials_of_degree: negative argument");
  std::vector<Exponents> out;
  if (n == 0) {
    if (t == 0) out.push_back({});
    return out;
  }
  Exponents cur(n, 0);
  // descend on the first variable, recurse on the tail
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == n - 1) {
      cur[pos] = rem;
      out.push_back(cur);
      return;
    }
    for (int e = rem; e >= 0; --e) {
      cur[pos] = e;
      self(self, pos + 1, rem - e);
    }
  };
  rec(rec, 0, t);
  return out;
}

inline Int binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  Int r = 1;
  for (long i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

// falling factorial b*(b-1)*...*(b-a+1)
inline Int falling(int b, int a) {
  Int r = 1;
  for (int j = 0; j < a; ++j) r *= (b - j);
  return r;
}

inline Int factorial(int k) { return falling(k, k); }

struct Poly {
  int n = 0;
  // keys ascending lex; display order is the reverse
  std::map<Exponents, Rat> terms;

  Poly() = default;
  explicit Poly(int nvars) : n(nvars) {}

  static Poly zero(int nvars) { return Poly(nvars); }

  static Poly constant(int nvars, const Rat& c) {
    Poly p(nvars);
    if (c != 0) p.terms[Exponents(nvars, 0)] = c;
    return p;
  }

  static Poly monomial(Exponents e, const Rat& c = 1) {
    Poly p(static_cast<int>(e.size()));
    if (c != 0) p.terms[std::move(e)] = c;
    return p;
  }

  // the i-th variable (1-based), as a linear monomial
  static Poly variable(int nvars, int i) {
    if (i < 1 || i > nvars) throw input_error("variable index out of range");
    Exponents e(nvars, 0);
    e[i - 1] = 1;
    return monomial(std::move(e));
  }

  static Poly linear_form(const std::vector<Rat>& coeffs) {
    Poly p(static_cast<int>(coeffs.size()));
    for (size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] == 0) continue;
      Exponents e(coeffs.size(), 0);
      e[i] = 1;
      p.terms[std::move(e)] = coeffs[i];
    }
    return p;
  }

  bool is_zero() const { return terms.empty(); }

  // -1 for the zero polynomial
  int degree() const {
    int d = -1;
    for (auto& [e, c] : terms) d = std::max(d, total_degree(e));
    return d;
  }

  bool is_homogeneous() const {
    int d = -1;
    for (auto& [e, c] : terms) {
      int t = total_degree(e);
      if (d == -1) d = t;
      else if (t != d) return false;
    }
    return true;
  }

  Rat coeff(const Exponents& e) const {
    auto it = terms.find(e);
    return it == terms.end() ? Rat(0) : it->second;
  }

  Rat constant_coeff() const { return coeff(Exponents(n, 0)); }

  void add_term(const Exponents& e, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    check_same_ring(o);
    for (auto& [e, c] : o.terms) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_same_ring(o);
    for (auto& [e, c] : o.terms) add_term(e, -c);
    return *this;
  }
  Poly& operator*=(const Rat& s) {
    if (s == 0) { terms.clear(); return *this; }
    for (auto& [e, c] : terms) c *= s;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
  friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
  friend Poly operator*(const Rat& s, Poly a) { a *= s; return a; }
  friend Poly operator*(Poly a, const Rat& s) { a *= s; return a; }
  friend Poly operator-(Poly a) { a *= Rat(-1); return a; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_same_ring(b);
    Poly r(a.n);
    Exponents e(a.n);
    for (auto& [ea, ca] : a.terms)
      for (auto& [eb, cb] : b.terms) {
        for (int i = 0; i < a.n; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  Poly pow(int k) const {
    if (k < 0) throw input_error("pow: negative exponent");
    Poly r = constant(n, 1);
    for (int i = 0; i < k; ++i) r = r * (*this);
    return r;
  }

  bool operator==(const Poly& o) const { return n == o.n && terms == o.terms; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  void check_same_ring(const Poly& o) const {
    if (n != o.n) throw input_error("polynomial arity mismatch");
  }
};

// diff action of a monomial x^al on a monomial X^be:
//   prod_i be_i!/(be_i-al_i)! * X^(be-al)  when be >= al, else 0.
// Extended bilinearly below.
inline Poly diff_apply(const Poly& op, const Poly& f) {
  op.check_same_ring(f);
  Poly r(f.n);
  Exponents e(f.n);
  for (auto& [al, c] : op.terms)
    for (auto& [be, b] : f.terms) {
      Int scale = 1;
      bool ok = true;
      for (int i = 0; i < f.n; ++i) {
        if (be[i] < al[i]) { ok = false; break; }
        e[i] = be[i] - al[i];
        scale *= falling(be[i], al[i]);
      }
      if (ok) r.add_term(e, c * b * Rat(scale));
    }
  return r;
}

// contraction: the factorial-free shift x^al o X^be = X^(be-al) when be >= al
inline Poly contract_apply(const Poly& op, const Poly& f) {
  op.check_same_ring(f);
  Poly r(f.n);
  Exponents e(f.n);
  for (auto& [al, c] : op.terms)
    for (auto& [be, b] : f.terms) {
      bool ok = true;
      for (int i = 0; i < f.n; ++i) {
        if (be[i] < al[i]) { ok = false; break; }
        e[i] = be[i] - al[i];
      }
      if (ok) r.add_term(e, c * b);
    }
  return r;
}

// X^ga -> ga! * X^ga; intertwines the two actions:
// contract_apply(m, tau(G)) == tau(diff_apply(m, G))
inline Poly tau_scale(const Poly& f) {
  Poly r(f.n);
  for (auto& [e, c] : f.terms) {
    Int s = 1;
    for (int v : e) s *= factorial(v);
    r.terms[e] = c * Rat(s);
  }
  return r;
}

// substitute X_i -> point[i]; point must have size n
inline Rat evaluate(const Poly& f, const std::vector<Rat>& point) {
  if (static_cast<int>(point.size()) != f.n)
    throw input_error("evaluate: point dimension mismatch");
  Rat acc = 0;
  for (auto& [e, c] : f.terms) {
    Rat t = c;
    for (int i = 0; i < f.n; ++i)
      for (int j = 0; j < e[i]; ++j) t *= point[i];
    acc += t;
  }
  return acc;
}

// ---- text form ----------------------------------------------------------
// term syntax: [rational][*] X<i>[^e] * ...   joined by + / -
// "^1" and a unit coefficient may be omitted; a bare rational is a constant.

namespace detail {

inline void skip_ws(const std::string& s, size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

inline Int parse_uint(const std::string& s, size_t& i, const char* what) {
  skip_ws(s, i);
  size_t start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == start) throw input_error(std::string("expected ") + what +
                                    " at position " + std::to_string(start));
  return Int(s.substr(start, i - start));
}

}  // namespace detail

// nvars == -1 infers the arity from the largest variable index used
inline Poly parse_poly(const std::string& s, int nvars = -1) {
  using detail::parse_uint;
  using detail::skip_ws;

  struct RawTerm {
    Rat coeff;
    std::map<int, int> exps;  // 1-based variable -> exponent
  };
  std::vector<RawTerm> raw;
  int max_index = 0;

  size_t i = 0;
  skip_ws(s, i);
  if (i == s.size()) throw input_error("empty polynomial");
  bool first = true;
  while (i < s.size()) {
    Rat sign = 1;
    skip_ws(s, i);
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    } else if (!first) {
      throw input_error("expected '+' or '-' at position " + std::to_string(i));
    }
    first = false;
    skip_ws(s, i);

    RawTerm term;
    term.coeff = sign;
    bool saw_factor = false;

    // optional leading rational
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      Int num = parse_uint(s, i, "number");
      Int den = 1;
      skip_ws(s, i);
      if (i < s.size() && s[i] == '/') {
        ++i;
        den = parse_uint(s, i, "denominator");
        if (den == 0) throw input_error("zero denominator");
      }
      term.coeff *= Rat(num, den);
      saw_factor = true;
      skip_ws(s, i);
      if (i < s.size() && s[i] == '*') {
        ++i;
        skip_ws(s, i);
      } else if (i < s.size() && (s[i] == 'X' || s[i] == 'x')) {
        throw input_error("missing '*' before variable at position " +
                          std::to_string(i));
      }
    }

    // variable factors
    while (i < s.size() && (s[i] == 'X' || s[i] == 'x')) {
      ++i;
      Int idx_big = parse_uint(s, i, "variable index");
      int idx = static_cast<int>(idx_big);
      if (idx < 1) throw input_error("variable index must be >= 1");
      int exp = 1;
      skip_ws(s, i);
      if (i < s.size() && s[i] == '^') {
        ++i;
        exp = static_cast<int>(parse_uint(s, i, "exponent"));
      }
      term.exps[idx] += exp;
      max_index = std::max(max_index, idx);
      saw_factor = true;
      skip_ws(s, i);
      if (i < s.size() && s[i] == '*') {
        ++i;
        skip_ws(s, i);
        if (i == s.size() || (s[i] != 'X' && s[i] != 'x'))
          throw input_error("dangling '*' at position " + std::to_string(i));
      } else {
        break;  // factors are joined by '*', never by juxtaposition
      }
    }

    if (!saw_factor)
      throw input_error("expected a term at position " + std::to_string(i));
    raw.push_back(std::move(term));
    skip_ws(s, i);
  }

  int n = nvars == -1 ? max_index : nvars;
  if (max_index > n)
    throw input_error("variable index " + std::to_string(max_index) +
                      " exceeds declared arity " + std::to_string(n));
  Poly p(n);
  for (auto& t : raw) {
    Exponents e(n, 0);
    for (auto& [idx, exp] : t.exps) e[idx - 1] = exp;
    p.add_term(e, t.coeff);
  }
  return p;
}

inline std::string rat_to_string(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

inline std::string to_string(const Poly& p, const char* letter = "X") {
  if (p.terms.empty()) return "0";
  std::string out;
  // descending lex, the display convention everywhere in this library
  for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
    const auto& [e, c] = *it;
    Rat a = c;
    if (out.empty()) {
      if (a < 0) { out += "-"; a = -a; }
    } else {
      out += a < 0 ? " - " : " + ";
      if (a < 0) a = -a;
    }
    std::string mono;
    for (int i = 0; i < p.n; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += letter + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += rat_to_string(a);
    } else {
      if (a != 1) out += rat_to_string(a) + "*";
      out += mono;
    }
  }
  return out;
}

}  // namespace aglef
