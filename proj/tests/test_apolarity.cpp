#include <catch2/catch_amalgamated.hpp>

#include <aglef/apolarity.hpp>

#include <random>

using namespace aglef;

namespace {

const char* kBigExample = "X1^8*X2^3 - X1^6*X2^2*X3^3";

Poly random_homog_f(std::mt19937& rng, int n, int d, int nterms) {
  std::uniform_int_distribution<int> coef(-6, 6);
  auto monos = monomials_of_degree(n, d);
  std::uniform_int_distribution<size_t> pick(0, monos.size() - 1);
  Poly p(n);
  while (p.is_zero())
    for (int t = 0; t < nterms; ++t) p.add_term(monos[pick(rng)], coef(rng));
  return p;
}

}  // namespace

TEST_CASE("catalecticant of tiny generators") {
  auto m = catalecticant(parse_poly("X1^2"), 1);
  REQUIRE(m.rows == 1);
  REQUIRE(m.cols == 1);
  REQUIRE(m.get(0, 0) == 2);

  auto p = catalecticant(parse_poly("X1*X2"), 1);
  REQUIRE(p.rows == 2);
  REQUIRE(p.cols == 2);
  REQUIRE(p.get(0, 1) == 1);
  REQUIRE(p.get(1, 0) == 1);
  REQUIRE(p.get(0, 0) == 0);
  REQUIRE(rank(p) == 2);
}

TEST_CASE("degree-5 catalecticant of the big worked generator") {
  Poly F = parse_poly(kBigExample);
  auto m = catalecticant(F, 5);
  REQUIRE(m.rows == 21);
  REQUIRE(m.cols == 28);
  REQUIRE(rank(m) == 12);
  // binomial generator: every row has at most two nonzero entries
  for (auto& row : m.entries) REQUIRE(row.size() <= 2);
}

TEST_CASE("catalecticant rejects out-of-range degrees and bad input") {
  Poly F = parse_poly("X1^2");
  REQUIRE_THROWS_AS(catalecticant(F, 3), input_error);
  REQUIRE_THROWS_AS(catalecticant(F, -1), input_error);
  REQUIRE_THROWS_AS(catalecticant(Poly::zero(2), 0), input_error);
  REQUIRE_THROWS_AS(catalecticant(parse_poly("X1 + X1^2"), 1), input_error);
}

TEST_CASE("h-vector of a power of one variable is all ones") {
  REQUIRE(hilbert_function(parse_poly("X1^4")) == HVector{1, 1, 1, 1, 1});
  REQUIRE(hilbert_function(parse_poly("5*X1^2")) == HVector{1, 1, 1});
}

TEST_CASE("h-vector of the big worked generator") {
  REQUIRE(hilbert_function(parse_poly(kBigExample)) ==
          HVector{1, 3, 6, 10, 12, 12, 12, 12, 10, 6, 3, 1});
}

TEST_CASE("h-vector of a two-variable cubic binomial") {
  REQUIRE(hilbert_function(parse_poly("X1^3 - X2^3")) == HVector{1, 2, 2, 1});
}

TEST_CASE("graded basis of tiny generators") {
  REQUIRE(graded_basis(parse_poly("X1*X2"), 1) ==
          std::vector<Exponents>{{1, 0}, {0, 1}});
  REQUIRE(graded_basis(parse_poly("X1^3 - X2^3"), 1) ==
          std::vector<Exponents>{{1, 0}, {0, 1}});
}

TEST_CASE("degree-5 graded basis of the big worked generator") {
  std::vector<Exponents> expected{
      {5, 0, 0}, {4, 1, 0}, {4, 0, 1}, {3, 2, 0}, {3, 1, 1}, {3, 0, 2},
      {2, 2, 1}, {2, 1, 2}, {2, 0, 3}, {1, 2, 2}, {1, 1, 3}, {0, 2, 3}};
  REQUIRE(graded_basis(parse_poly(kBigExample), 5) == expected);
}

TEST_CASE("sperner statistics") {
  auto s = sperner_stats({1, 3, 6, 10, 12, 12, 12, 12, 10, 6, 3, 1});
  REQUIRE(s.sperner == 12);
  REQUIRE(s.flat_length == 4);
  REQUIRE(s.flat_start == 4);
  REQUIRE(s.flat_end == 7);
  REQUIRE(s.has_flat());

  auto t = sperner_stats({1, 1, 1});
  REQUIRE(t.sperner == 1);
  REQUIRE(t.flat_length == 3);
  REQUIRE(t.has_flat());

  auto u = sperner_stats({1, 2, 2, 1});
  REQUIRE(u.sperner == 2);
  REQUIRE(u.flat_length == 2);
  REQUIRE_FALSE(u.has_flat());
}

TEST_CASE("annihilator membership") {
  REQUIRE(annihilator_membership(parse_poly("x3", 3), parse_poly("X1*X2", 3)));
  REQUIRE(annihilator_membership(parse_poly("x1^5", 1), parse_poly("X1^4")));
  REQUIRE_FALSE(
      annihilator_membership(parse_poly("x1^4", 1), parse_poly("X1^4")));
  // pure-power generator check on a gcd-times-binomial instance
  REQUIRE(annihilator_membership(parse_poly("x2^3", 3),
                                 parse_poly("X1^4 - X1*X2^2*X3")));
}

TEST_CASE("catalecticant duality: complementary degrees have equal rank") {
  std::mt19937 rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    Poly F = random_homog_f(rng, 3, 4 + rep % 3, 3);
    int d = F.degree();
    for (int t = 0; t <= d; ++t) {
      REQUIRE(rank(catalecticant(F, t)) == rank(catalecticant(F, d - t)));
    }
  }
}

TEST_CASE("catalecticant transpose identity with factorial scaling") {
  // cat_t(u,w) * w! == cat_{d-t}(w,u) * u!
  std::mt19937 rng(22);
  Poly F = random_homog_f(rng, 3, 5, 4);
  int d = F.degree();
  for (int t = 0; t <= d; ++t) {
    auto a = catalecticant(F, t);
    auto b = catalecticant(F, d - t);
    auto rows = monomials_of_degree(3, t);
    auto cols = monomials_of_degree(3, d - t);
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j) {
        Int wf = 1, uf = 1;
        for (int v : cols[j]) wf *= factorial(v);
        for (int v : rows[i]) uf *= factorial(v);
        REQUIRE(a.get(i, j) * Rat(wf) == b.get(j, i) * Rat(uf));
      }
  }
}

TEST_CASE("differentiation and contraction catalecticants have equal ranks") {
  std::mt19937 rng(33);
  for (int rep = 0; rep < 10; ++rep) {
    Poly F = random_homog_f(rng, 3, 4 + rep % 4, 2);
    int d = F.degree();
    for (int t = 0; t <= d; ++t)
      REQUIRE(rank(catalecticant(F, t, Action::differentiate)) ==
              rank(catalecticant(F, t, Action::contract)));
  }
}

TEST_CASE("graded basis size equals the h-vector entry in every degree") {
  std::mt19937 rng(44);
  for (int rep = 0; rep < 8; ++rep) {
    Poly F = random_homog_f(rng, 3, 4 + rep % 3, 3);
    auto h = hilbert_function(F);
    for (int t = 0; t <= F.degree(); ++t)
      REQUIRE(graded_basis(F, t).size() == static_cast<size_t>(h[t]));
  }
}

TEST_CASE("h-vector entries respect the ambient monomial-count bound") {
  std::mt19937 rng(55);
  for (int rep = 0; rep < 8; ++rep) {
    int n = 2 + rep % 3;
    Poly F = random_homog_f(rng, n, 5, 2);
    auto h = hilbert_function(F);
    for (int t = 0; t <= F.degree(); ++t) {
      Int bound = binomial(t + n - 1, n - 1);
      REQUIRE(Int(h[t]) <= bound);
      // equality exactly when no operator of degree t annihilates F
      bool full = Int(h[t]) == bound;
      auto cat = catalecticant(F, t);
      REQUIRE(full == (rank(cat) == cat.rows));
    }
  }
}

TEST_CASE("algebra view caches and matches the free functions") {
  DualAlgebra A(parse_poly(kBigExample));
  REQUIRE(A.socle_degree() == 11);
  REQUIRE(A.nvars() == 3);
  REQUIRE(A.hvector() == hilbert_function(A.generator()));
  REQUIRE(A.h(5) == 12);
  REQUIRE(A.h(-1) == 0);
  REQUIRE(A.h(12) == 0);
  REQUIRE(A.basis(5) == graded_basis(A.generator(), 5));
  REQUIRE(A.sperner().sperner == 12);
}
