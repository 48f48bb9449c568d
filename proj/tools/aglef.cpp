// Command-line front end. Every subcommand takes a generator F as a
// polynomial expression in X1..Xn (two terms for the classification and
// search paths, anything homogeneous elsewhere).
//
// Exit codes: 0 ok, 2 bad input, 3 capacity cap hit, 4 verification failure.

#include <aglef/aglef.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace aglef;

namespace {

LinearForm parse_form(const std::string& csv) {
  LinearForm out;
  std::string tok;
  std::stringstream ss(csv);
  while (std::getline(ss, tok, ',')) {
    try {
      out.emplace_back(tok);
    } catch (const std::exception&) {
      throw input_error("cannot read '" + tok + "' as a rational");
    }
  }
  if (out.empty()) throw input_error("empty coefficient list");
  return out;
}

std::string form_to_string(const LinearForm& ell) {
  std::string s = "(";
  for (std::size_t i = 0; i < ell.size(); ++i)
    s += (i ? "," : "") + rat_to_string(ell[i]);
  return s + ")";
}

std::string join(const HVector& h) {
  std::string s = "(";
  for (std::size_t i = 0; i < h.size(); ++i)
    s += (i ? "," : "") + std::to_string(h[i]);
  return s + ")";
}

void print_verdict(const Verdict& v, bool json) {
  if (json) {
    std::cout << to_json(v).dump(2) << "\n";
    return;
  }
  std::cout << to_string(v.property) << " " << to_string(v.status)
            << (v.certified ? " (certified" : " (probabilistic")
            << ", provenance " << to_string(v.provenance) << ")\n";
  if (!v.witness.empty())
    std::cout << "  witness form " << form_to_string(v.witness) << "\n";
  if (!v.failing_degrees.empty()) {
    std::cout << "  failing degrees";
    for (int t : v.failing_degrees) std::cout << " " << t;
    std::cout << "\n";
  }
  if (!v.theorem.empty()) std::cout << "  theorem " << v.theorem << "\n";
  if (!v.note.empty()) std::cout << "  " << v.note << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Graded invariants, Lefschetz properties and classification for "
      "algebras defined by a binomial dual generator"};
  app.require_subcommand(1);

  std::string poly_arg, ell_arg, eval_arg, out_path, scan_file;
  bool certify = false, as_json = false, symbolic = false;
  std::uint64_t seed = kDefaultSeed;
  int deg_t = -1, deg_s = -1;
  SweepBounds bounds;

  auto* hilb = app.add_subcommand("hilbert", "h-vector and flat statistics");
  hilb->add_option("F", poly_arg, "dual generator")->required();
  hilb->add_flag("--json", as_json, "machine-readable output");

  auto* basis = app.add_subcommand("basis", "monomial basis of one degree");
  basis->add_option("F", poly_arg, "dual generator")->required();
  basis->add_option("--degree", deg_t, "degree t")->required();

  auto* hess = app.add_subcommand(
      "hessian", "mixed Hessian: rows in degree t, columns in degree s");
  hess->add_option("F", poly_arg, "dual generator")->required();
  hess->add_option("--t", deg_t, "row degree")->required();
  hess->add_option("--s", deg_s, "column degree (default t)");
  hess->add_flag("--symbolic", symbolic, "print the symbolic determinant");
  hess->add_option("--eval", eval_arg,
                   "evaluate at a point a1,..,an and print the exact rank");

  auto* wlp = app.add_subcommand("wlp", "weak Lefschetz decision");
  auto* slp = app.add_subcommand("slp", "strong Lefschetz decision");
  for (auto* c : {wlp, slp}) {
    c->add_option("F", poly_arg, "dual generator")->required();
    c->add_flag("--certify", certify, "insist on an exact certificate");
    c->add_option("--seed", seed, "candidate-stream seed");
    c->add_option("--ell", ell_arg, "test one form a1,..,an instead");
    c->add_flag("--json", as_json, "machine-readable output");
  }

  auto* cls = app.add_subcommand(
      "classify", "match the generator against the sufficient conditions");
  cls->add_option("F", poly_arg, "binomial dual generator")->required();
  cls->add_flag("--json", as_json, "machine-readable output");

  auto* search = app.add_subcommand(
      "search", "cross-check every canonical generator inside the bounds");
  search->add_option("--out", out_path, "JSONL output (resumable)")
      ->required();
  search->add_option("--min-vars", bounds.min_vars, "smallest ambient n");
  search->add_option("--max-vars", bounds.max_vars, "largest ambient n");
  search->add_option("--max-degree", bounds.max_degree, "largest socle degree");
  search->add_option("--max-gcd", bounds.max_gcd_degree, "largest gcd degree");
  search->add_flag("--gcd-half", bounds.gcd_at_least_half,
                   "keep only deg gcd >= floor((d-1)/2)");
  search->add_flag("--certify", certify, "exact certificates for failures");
  search->add_option("--seed", bounds.seed, "sweep seed");
  search->add_option("--jobs", bounds.jobs, "worker threads");

  auto* verify = app.add_subcommand(
      "verify", "run the full acceptance battery and report line by line");
  verify->add_option("--scan-file", scan_file,
                     "where the discovery scan keeps its records");
  verify->add_option("--jobs", bounds.jobs, "worker threads for the scan");
  verify->add_option("--seed", seed, "seed for the randomized checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*hilb) {
      const Poly F = parse_poly(poly_arg);
      const HVector h = hilbert_function(F);
      const SpernerStats st = sperner_stats(h);
      if (as_json) {
        std::cout << Json{{"h", h},
                          {"sperner", st.sperner},
                          {"flat_length", st.flat_length},
                          {"flat_start", st.flat_start},
                          {"flat_end", st.flat_end}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << "h = " << join(h) << "\n"
                  << "sperner " << st.sperner << ", flat length "
                  << st.flat_length << " (degrees " << st.flat_start << ".."
                  << st.flat_end << ")\n";
      }
    } else if (*basis) {
      const Poly F = parse_poly(poly_arg);
      for (const Exponents& e : graded_basis(F, deg_t))
        std::cout << to_string(Poly::monomial(e)) << "\n";
    } else if (*hess) {
      const Poly F = parse_poly(poly_arg);
      if (deg_s < 0) deg_s = deg_t;
      const HessianMatrix H = mixed_hessian(F, deg_s, deg_t);
      std::cout << H.matrix.rows << "x" << H.matrix.cols
                << " matrix, entries of degree "
                << F.degree() - deg_s - deg_t << "\n";
      if (symbolic) {
        const Poly det = symbolic_det(H.matrix);
        std::cout << "det = " << (det.is_zero() ? "0" : to_string(det))
                  << "\n";
      }
      if (!eval_arg.empty()) {
        const LinearForm pt = parse_form(eval_arg);
        const int rk = rank_certified(evaluate_matrix(H.matrix, pt));
        std::cout << "rank at " << form_to_string(pt) << " = " << rk
                  << " (full is " << std::min(H.matrix.rows, H.matrix.cols)
                  << ")\n";
      }
    } else if (*wlp || *slp) {
      const Poly F = parse_poly(poly_arg);
      if (!ell_arg.empty()) {
        const LinearForm ell = parse_form(ell_arg);
        const bool ok =
            *wlp ? is_wl_element(F, ell) : is_sl_element(F, ell);
        std::cout << form_to_string(ell) << " is "
                  << (ok ? "a " : "not a ") << (*wlp ? "weak" : "strong")
                  << " Lefschetz element\n";
      } else {
        const DecideMode mode =
            certify ? DecideMode::certify : DecideMode::fast;
        print_verdict(*wlp ? decide_wlp(F, mode, seed)
                           : decide_slp(F, mode, seed),
                      as_json);
      }
    } else if (*cls) {
      const NormalizeResult nr = normalize(parse_poly(poly_arg));
      const ClassificationReport rep = classify(nr.spec);
      if (as_json) {
        Json j = to_json(rep);
        j["key"] = spec_key(nr.spec);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "canonical form " << spec_key(nr.spec) << "\n";
        if (rep.matches.empty())
          std::cout << "no sufficient condition applies\n";
        for (const Match& m : rep.matches) {
          std::cout << m.theorem << " guarantees " << to_string(m.guarantee);
          if (m.guarantee == Guarantee::ns)
            std::cout << " >= " << m.ns_bound;
          if (!m.witness.empty())
            std::cout << " via " << form_to_string(m.witness);
          std::cout << "\n";
          if (!m.note.empty()) std::cout << "  " << m.note << "\n";
        }
        std::cout << "overall: " << to_string(rep.overall) << "\n";
      }
    } else if (*search) {
      bounds.mode = certify ? DecideMode::certify : DecideMode::fast;
      const SweepSummary sum = run_sweep(bounds, out_path);
      std::cout << to_json(sum).dump(2) << "\n";
    } else if (*verify) {
      VerifyOptions opts;
      opts.scan_file = scan_file;
      opts.jobs = bounds.jobs;
      opts.seed = seed;
      const VerifyReport rep = run_verification(std::cout, opts);
      if (rep.failures() > 0) {
        std::cerr << rep.failures() << " check(s) failed\n";
        return 4;
      }
      std::cout << "all " << rep.checks.size() << " checks passed\n";
    }
  } catch (const capacity_error& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return 3;
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
