#include <catch2/catch_amalgamated.hpp>

#include <aglef/families.hpp>

#include <random>

using namespace aglef;

namespace {

const char* kBigExample = "X1^8*X2^3 - X1^6*X2^2*X3^3";

BinomialSpec mk(int n, int r, Exponents a, Exponents b) {
  BinomialSpec s;
  s.n = n;
  s.r = r;
  s.a = std::move(a);
  s.b = std::move(b);
  return s;
}

bool has_match(const ClassificationReport& rep, const std::string& id) {
  for (auto& m : rep.matches)
    if (m.theorem == id) return true;
  return false;
}

const Match& get_match(const ClassificationReport& rep, const std::string& id) {
  for (auto& m : rep.matches)
    if (m.theorem == id) return m;
  throw std::logic_error("missing match " + id);
}

}  // namespace

TEST_CASE("normalize: worked example with a two-variable gcd") {
  auto nr = normalize(parse_poly(kBigExample));
  REQUIRE(nr.spec == mk(3, 2, {6, 2, 0}, {2, 1, 3}));
  REQUIRE(nr.spec.degree() == 11);
  REQUIRE(nr.spec.gcd_degree() == 8);
  REQUIRE(nr.perm == std::vector<int>{0, 1, 2});
  REQUIRE(nr.scale == Rat(1));
  REQUIRE(reconstruct(nr) == parse_poly(kBigExample));
}

TEST_CASE("normalize: plain two-variable binomial") {
  auto nr = normalize(parse_poly("X1^3 - X2^3"));
  REQUIRE(nr.spec == mk(2, 1, {0, 0}, {3, 3}));
  REQUIRE(reconstruct(nr) == parse_poly("X1^3 - X2^3"));
}

TEST_CASE("normalize: permutation pulls the gcd variable forward") {
  Poly F = parse_poly("X2^2*X1 - X3*X4*X2");
  auto nr = normalize(F);
  REQUIRE(nr.spec == mk(4, 2, {1, 0, 0, 0}, {1, 1, 1, 1}));
  REQUIRE(nr.perm == std::vector<int>{1, 0, 2, 3});
  REQUIRE(nr.scale == Rat(1));
  REQUIRE(reconstruct(nr) == F);
}

TEST_CASE("normalize: scaled input reports the scale separately") {
  Poly F = parse_poly("3*X1^3 - 3*X2^3");
  auto nr = normalize(F);
  REQUIRE(nr.spec == mk(2, 1, {0, 0}, {3, 3}));
  REQUIRE(reconstruct(nr) == F);
}

TEST_CASE("normalize: rejects what the normal form cannot carry") {
  REQUIRE_THROWS_AS(normalize(parse_poly("X1^3", 2)), input_error);
  REQUIRE_THROWS_AS(normalize(parse_poly("X1^3 - X2^3 + X3^3")), input_error);
  REQUIRE_THROWS_AS(normalize(parse_poly("X1^2 - X2")), input_error);
  REQUIRE_THROWS_AS(normalize(parse_poly("X1^3 + X2^3")), input_error);
  REQUIRE_THROWS_AS(normalize(parse_poly("2*X1^3 - 3*X2^3")), input_error);
}

TEST_CASE("normalize: random binomials round-trip exactly") {
  std::mt19937 rng(97531);
  std::uniform_int_distribution<int> nv(2, 5), dg(2, 6), pick(0, 3);
  const Rat scales[4] = {Rat(1), Rat(-1), Rat(5, 2), Rat(-3)};
  for (int rep = 0; rep < 200; ++rep) {
    int n = nv(rng), d = dg(rng);
    auto random_expo = [&] {
      Exponents e(n, 0);
      std::uniform_int_distribution<int> v(0, n - 1);
      for (int i = 0; i < d; ++i) ++e[v(rng)];
      return e;
    };
    Exponents e1 = random_expo(), e2 = random_expo();
    if (e1 == e2) continue;
    Poly F = (Poly::monomial(e1) - Poly::monomial(e2)) * scales[pick(rng)];
    auto nr = normalize(F);
    nr.spec.validate();
    REQUIRE(reconstruct(nr) == F);
    // canonical generators re-normalize to themselves
    auto again = normalize(nr.spec.generator());
    REQUIRE(again.spec == nr.spec);
    REQUIRE(again.scale == Rat(1));
    for (int i = 0; i < n; ++i) REQUIRE(again.perm[i] == i);
  }
}

TEST_CASE("BinomialSpec validation") {
  REQUIRE_THROWS_AS(mk(2, 0, {0, 0}, {3, 3}).validate(), input_error);
  REQUIRE_THROWS_AS(mk(2, 1, {0, 0}, {3, 2}).validate(), input_error);
  REQUIRE_THROWS_AS(mk(2, 1, {-1, 0}, {3, 3}).validate(), input_error);
  REQUIRE_THROWS_AS(mk(2, 1, {1, 1}, {0, 0}).validate(), input_error);
  REQUIRE_NOTHROW(mk(3, 1, {0, 0, 4}, {2, 2, 0}).validate());
}

TEST_CASE("gcd criterion: strict half-degree threshold") {
  REQUIRE(check_gcd_criterion(mk(4, 2, {0, 0, 0, 0}, {2, 1, 1, 2})));
  // the worked example: gcd degree 8 >= 5
  REQUIRE_FALSE(check_gcd_criterion(mk(3, 2, {6, 2, 0}, {2, 1, 3})));
  // boundary: gcd degree exactly floor((d-1)/2)
  REQUIRE_FALSE(check_gcd_criterion(mk(2, 1, {2, 0}, {3, 3})));
}

TEST_CASE("dominant-variable criterion, part (i)") {
  auto ms = check_family4(mk(3, 2, {6, 2, 0}, {2, 1, 3}));
  REQUIRE(ms.size() == 2);
  REQUIRE(ms[0].theorem == "family4i");
  REQUIRE(ms[0].witness == LinearForm{Rat(1), Rat(0), Rat(0)});
  // the named witness really is a weak Lefschetz element
  REQUIRE(is_wl_element(parse_poly(kBigExample), ms[0].witness));
  REQUIRE(ms[1].theorem == "family4ii");
  REQUIRE(ms[1].ns_bound == 4);

  auto ms2 = check_family4(mk(3, 2, {5, 0, 0}, {2, 1, 3}));
  REQUIRE(!ms2.empty());
  REQUIRE(ms2[0].theorem == "family4i");
}

TEST_CASE("dominant-variable criterion, part (ii) boundary") {
  auto spec = mk(3, 2, {5, 2, 0}, {2, 1, 3});
  auto ms = check_family4(spec);
  REQUIRE(ms.size() == 1);
  REQUIRE(ms[0].theorem == "family4ii");
  REQUIRE(ms[0].ns_bound == 3);
  REQUIRE(ms[0].guarantee == Guarantee::ns);
  Poly F = spec.generator();
  REQUIRE(hilbert_function(F) ==
          HVector{1, 3, 6, 10, 12, 12, 12, 10, 6, 3, 1});
  auto stats = sperner_stats(hilbert_function(F));
  REQUIRE(stats.flat_length >= ms[0].ns_bound);
  REQUIRE(stats.flat_length == 3);
}

TEST_CASE("pure-power families: gcd on the lead variable") {
  // X1^4 * (X1^3 - X2^2*X3), gcd exponent 4 >= 3-1
  auto nr = normalize(parse_poly("X1^7 - X1^4*X2^2*X3"));
  auto ms = check_family1(nr.spec);
  REQUIRE(ms.size() == 2);
  REQUIRE(ms[0].theorem == "family1");
  REQUIRE(ms[1].theorem == "family1-ci");

  CiEvidence ev;
  REQUIRE(verify_ci_family1(nr.spec, &ev));
  REQUIRE(ev.generator_degrees == std::vector<int>{5, 3, 2});
  REQUIRE(ev.annihilates);
  REQUIRE(ev.series_match);
  REQUIRE(ev.hv == HVector{1, 3, 5, 6, 6, 5, 3, 1});

  // gcd exponent 1 < 2: WLP-only, complete intersection not claimed
  auto nr2 = normalize(parse_poly("X1^4 - X1*X2^2*X3"));
  auto ms2 = check_family1(nr2.spec);
  REQUIRE(ms2.size() == 1);
  REQUIRE(ms2[0].theorem == "family1");
  REQUIRE_THROWS_AS(verify_ci_family1(nr2.spec), input_error);
  REQUIRE(hilbert_function(nr2.spec.generator()) == HVector{1, 3, 5, 3, 1});
  REQUIRE(is_wl_element(nr2.spec.generator(),
                        LinearForm{Rat(1), Rat(0), Rat(0)}));

  // not a pure-power family at all
  REQUIRE_THROWS_AS(verify_ci_family1(mk(3, 2, {6, 2, 0}, {2, 1, 3})),
                    input_error);
}

TEST_CASE("pure-power families: gcd on a different variable") {
  // X2^4 * (X1^3 - X2*X3*X4)
  auto nr = normalize(parse_poly("X1^3*X2^4 - X2^5*X3*X4"));
  REQUIRE(nr.spec == mk(4, 3, {4, 0, 0, 0}, {1, 1, 1, 3}));
  REQUIRE(check_family2(nr.spec));
  REQUIRE_FALSE(check_family2(mk(3, 2, {6, 2, 0}, {2, 1, 3})));
  REQUIRE(hilbert_function(nr.spec.generator()) ==
          HVector{1, 4, 6, 6, 6, 6, 4, 1});
}

TEST_CASE("small binomial-factor support gives SLP") {
  auto m3 = check_family3_5(normalize(parse_poly("X1^5*X2*X3 - X1^2*X2^4*X3")).spec);
  REQUIRE(m3);
  REQUIRE(m3->theorem == "family3");
  REQUIRE(m3->guarantee == Guarantee::slp);

  auto m5 = check_family3_5(normalize(parse_poly("X1^2*X2*X4^2 - X3^3*X4^2")).spec);
  REQUIRE(m5);
  REQUIRE(m5->theorem == "family5");

  REQUIRE_FALSE(check_family3_5(mk(4, 2, {0, 0, 0, 0}, {1, 1, 1, 1})));
}

TEST_CASE("flat transfer through differentiation") {
  Poly G = parse_poly(kBigExample);

  auto trivial = flat_transfer(G, Poly::constant(3, 1));
  REQUIRE(trivial);
  REQUIRE(trivial->ns_bound == 4);
  REQUIRE(sperner_stats(hilbert_function(G)).flat_length == 4);

  auto x1 = flat_transfer(G, Poly::variable(3, 1));
  REQUIRE(x1);
  REQUIRE(x1->ns_bound == 3);
  Poly F = diff_apply(Poly::variable(3, 1), G);
  REQUIRE(x1->ns_bound <= sperner_stats(hilbert_function(F)).flat_length);

  // flat part too short for a degree-1 operator
  REQUIRE_FALSE(flat_transfer(parse_poly("X1^3*X2^2"), Poly::variable(2, 1)));

  REQUIRE_THROWS_AS(
      flat_transfer(parse_poly("X1*X2*X3"), parse_poly("x1^2", 3)),
      input_error);
  REQUIRE_THROWS_AS(flat_transfer(G, parse_poly("x1 + 1", 3)), input_error);
}

TEST_CASE("classify: worked example is SLP through the three-variable family") {
  auto rep = classify(normalize(parse_poly(kBigExample)).spec);
  REQUIRE(has_match(rep, "family4i"));
  REQUIRE(has_match(rep, "family4ii"));
  REQUIRE(has_match(rep, "family5"));
  REQUIRE(rep.matches.size() == 3);
  REQUIRE(rep.overall == Overall::slp);
  REQUIRE(get_match(rep, "family4ii").ns_bound == 4);
  // matches arrive sorted by theorem id and the order is reproducible
  auto rep2 = classify(rep.spec);
  REQUIRE(rep2.matches.size() == rep.matches.size());
  for (size_t i = 0; i < rep.matches.size(); ++i)
    REQUIRE(rep2.matches[i].theorem == rep.matches[i].theorem);
}

TEST_CASE("classify: two-variable factor is SLP, quartic spread is unknown") {
  auto rep = classify(normalize(parse_poly("X1^4*X2*X3 - X1^2*X2^3*X3")).spec);
  REQUIRE(has_match(rep, "family3"));
  REQUIRE(rep.overall == Overall::slp);

  auto hard = classify(mk(4, 2, {1, 0, 1, 0}, {2, 1, 2, 1}));
  REQUIRE(hard.matches.empty());
  REQUIRE(hard.overall == Overall::unknown);
}

TEST_CASE("dominant-gcd flat bound is sound on a three-variable sweep") {
  // Exhaust all specs with three variables, gcd exponents <= 3 and factor
  // side degree <= 3. Wherever the flat-length bound fires it must stay
  // weakly below the true flat length, and named witnesses must verify.
  int fired = 0, wl_checked = 0;
  for (int r = 1; r <= 2; ++r)
    for (int a1 = 0; a1 <= 3; ++a1)
      for (int a2 = 0; a2 <= 3; ++a2)
        for (int a3 = 0; a3 <= 3; ++a3)
          for (int s = 1; s <= 3; ++s)
            for (int b2 = 0; b2 <= s; ++b2) {
              Exponents b = r == 1 ? Exponents{s, b2, s - b2}
                                   : Exponents{b2, s - b2, s};
              auto spec = mk(3, r, {a1, a2, a3}, b);
              if (spec.degree() > 14) continue;
              auto ms = check_family4(spec);
              if (ms.empty()) continue;
              Poly F = spec.generator();
              int flat = -1;
              for (auto& m : ms) {
                if (m.theorem == "family4ii") {
                  if (flat < 0)
                    flat = sperner_stats(hilbert_function(F)).flat_length;
                  INFO("spec r=" << r << " a=(" << a1 << "," << a2 << ","
                                 << a3 << ") b=(" << b[0] << "," << b[1]
                                 << "," << b[2] << ")");
                  REQUIRE(m.ns_bound <= flat);
                  ++fired;
                } else if (m.theorem == "family4i" && wl_checked < 25) {
                  REQUIRE(is_wl_element(F, m.witness));
                  ++wl_checked;
                }
              }
            }
  REQUIRE(fired >= 10);
  REQUIRE(wl_checked >= 10);
}

TEST_CASE("classified guarantees agree with the decision procedures") {
  std::vector<BinomialSpec> specs{
      normalize(parse_poly(kBigExample)).spec,
      normalize(parse_poly("X1^7 - X1^4*X2^2*X3")).spec,
      normalize(parse_poly("X1^4 - X1*X2^2*X3")).spec,
      normalize(parse_poly("X1^3*X2^4 - X2^5*X3*X4")).spec,
      normalize(parse_poly("X1^4*X2*X3 - X1^2*X2^3*X3")).spec,
      mk(4, 2, {0, 0, 0, 0}, {2, 1, 1, 2}),
      mk(3, 2, {5, 2, 0}, {2, 1, 3}),
  };
  for (auto& s : specs) {
    auto rep = classify(s);
    Poly F = s.generator();
    if (rep.overall == Overall::slp)
      REQUIRE(decide_slp(F).status == Status::holds);
    else if (rep.overall == Overall::wlp)
      REQUIRE(decide_wlp(F).status == Status::holds);
    for (auto& m : rep.matches) {
      if (!m.witness.empty()) REQUIRE(is_wl_element(F, m.witness));
      if (m.ns_bound > 0)
        REQUIRE(m.ns_bound <=
                sperner_stats(hilbert_function(F)).flat_length);
    }
  }
}
