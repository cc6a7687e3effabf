#include <hyperaut/diffmethod.hpp>
#include <hyperaut/forms.hpp>
#include <hyperaut/json_io.hpp>
#include <hyperaut/numbertheory.hpp>
#include <hyperaut/symmetry.hpp>
#include <hyperaut/torelli.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <thread>

namespace {

using namespace hyperaut;

void emit(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

std::string render_set(const std::vector<std::uint64_t>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(xs[i]);
  }
  return s + "}";
}

int run_analyze(const std::string& path, bool json) {
  Form f = load_form_file(path);
  Sparsity sp = sparsity(f);
  auto vs = vars(f);
  int dr = diff_rank(f);
  std::vector<int> per_var(static_cast<std::size_t>(f.num_vars()));
  for (int i = 0; i < f.num_vars(); ++i) {
    std::vector<Int> e(static_cast<std::size_t>(f.num_vars()), 0);
    e[static_cast<std::size_t>(i)] = 1;
    per_var[static_cast<std::size_t>(i)] = diff_rank_directional(f, e);
  }
  PosetReport poset = le_relation(f);
  AutConstraint constraint = classify(f);
  if (json) {
    Json out;
    out["form"] = to_json(f);
    out["rendered"] = render(f);
    out["sparsity"] = to_json(sp);
    out["vars"] = vs;
    out["diff_rank"] = dr;
    out["per_variable_drank"] = per_var;
    out["poset"] = to_json(poset);
    out["constraint"] = to_json(constraint);
    emit(out);
    return 0;
  }
  std::cout << "form: " << render(f) << "\n";
  std::cout << "num_vars = " << f.num_vars() << ", degree = " << f.degree() << "\n";
  if (sp.infinite) std::cout << "sparsity = infinite\n";
  else std::cout << "sparsity = " << sp.value << "\n";
  std::cout << "vars = {";
  for (std::size_t i = 0; i < vs.size(); ++i)
    std::cout << (i ? ", " : "") << "x" << vs[i];
  std::cout << "}\n";
  std::cout << "drank(F) = " << dr << "\n";
  std::cout << "drank(dF/dx_i) =";
  for (int r : per_var) std::cout << " " << r;
  std::cout << "\n";
  std::cout << "relation <=_F:";
  if (poset.relation.empty()) std::cout << " (empty)";
  for (auto [i, j] : poset.relation)
    std::cout << " x" << i << "<=x" << j;
  std::cout << "\n";
  std::cout << "is_poset = " << (poset.is_poset ? "true" : "false")
            << ", trivial = " << (poset.is_trivial ? "true" : "false") << "\n";
  if (poset.witness)
    std::cout << "antisymmetry violated by (x" << poset.witness->first << ", x"
              << poset.witness->second << ")\n";
  std::cout << "constraint: " << to_string(constraint.kind);
  if (constraint.reason) std::cout << ": " << to_string(*constraint.reason);
  std::cout << "\n";
  if (constraint.decomposition) {
    std::cout << "simple decomposition:";
    for (const auto& b : constraint.decomposition->blocks) {
      std::cout << (b.kind == SimpleBlock::Kind::klein ? " K" : " T")
                << b.variables.size();
    }
    std::cout << "\n";
  }
  return 0;
}

Family parse_family(const std::string& name) {
  if (name == "fermat") return Family::fermat;
  if (name == "delsarte") return Family::delsarte;
  if (name == "klein") return Family::klein;
  throw CLI::ValidationError("family must be fermat, delsarte or klein");
}

int run_family(const std::string& name, int n, int d, bool verify, bool json,
               std::uint64_t seed) {
  Family family = parse_family(name);
  Form f = family_form(family, n, d);
  GroupDescriptor group = family_aut_group(family, n, d);
  Json out;
  out["family"] = name;
  out["n"] = n;
  out["d"] = d;
  out["form"] = render(f);
  if (family == Family::klein) out["klein_m"] = klein_m(n, d).get_str();
  out["group"] = to_json(group);
  std::optional<KleinGeneratorCheck> kcheck;
  std::optional<DiagonalGroup> diag;
  std::optional<DirectionScanReport> scan;
  if (verify) {
    diag = diagonal_automorphisms(f);
    out["diagonal"] = to_json(*diag);
    bool gens_ok = true;
    for (const auto& g : diag->generator_matrices())
      gens_ok = gens_ok && invariance_check(f, g).has_value();
    out["diagonal_generators_fix_form"] = gens_ok;
    if (family == Family::klein) {
      kcheck = verify_klein_generators(n, d);
      out["klein_generators"] = to_json(*kcheck);
      if (d == 3 && n >= 4) {
        scan = klein_cubic_direction_scan(n, 500, seed);
        Json js;
        js["passed"] = scan->passed;
        js["coordinate_checked"] = scan->coordinate_checked;
        js["random_checked"] = scan->random_checked;
        out["direction_scan"] = std::move(js);
      }
    }
  }
  if (json) {
    emit(out);
  } else {
    std::cout << name << " n=" << n << " d=" << d << "\n";
    std::cout << "form: " << render(f) << "\n";
    if (family == Family::klein)
      std::cout << "m = " << klein_m(n, d).get_str() << "\n";
    std::cout << "Aut(X) = " << group.describe() << "\n";
    if (diag) {
      std::cout << "diagonal subgroup: order " << diag->order.get_str()
                << ", invariant factors (";
      for (std::size_t i = 0; i < diag->invariant_factors.size(); ++i)
        std::cout << (i ? ", " : "") << diag->invariant_factors[i].get_str();
      std::cout << ")\n";
    }
    if (kcheck)
      std::cout << "klein generator check: "
                << (kcheck->passed() ? "passed" : "FAILED") << "\n";
    if (scan)
      std::cout << "direction scan: " << (scan->passed ? "passed" : "FAILED")
                << "\n";
  }
  bool verified_ok = !verify || ((!kcheck || kcheck->passed()) &&
                                 (!scan || scan->passed));
  return verified_ok ? 0 : 1;
}

int run_diag_aut(const std::string& path, bool json) {
  Form f = load_form_file(path);
  try {
    DiagonalGroup g = diagonal_automorphisms(f);
    if (json) {
      emit(to_json(g));
    } else {
      std::cout << "diagonal projective stabilizer: order " << g.order.get_str()
                << "\n";
      std::cout << "invariant factors:";
      if (g.invariant_factors.empty()) std::cout << " (trivial)";
      for (const auto& v : g.invariant_factors) std::cout << " " << v.get_str();
      std::cout << "\n";
      std::cout << "phase modulus: " << g.modulus.get_str() << "\n";
      for (const auto& phases : g.generators) {
        std::cout << "generator:";
        for (const auto& p : phases) std::cout << " " << p.get_str();
        std::cout << "\n";
      }
    }
    return 0;
  } catch (const InfiniteStabilizerError& e) {
    if (json) {
      Json out;
      out["error"] = "infinite_stabilizer";
      out["rank_defect"] = e.rank_defect;
      emit(out);
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
  }
}

int run_wagstaff(int n_max, int d_max, bool json) {
  auto results = wagstaff_scan(n_max, d_max);
  if (json) emit(wagstaff_scan_json(n_max, d_max, results));
  else std::cout << render_wagstaff_table(results);
  return 0;
}

int run_torelli(int n, int d, std::uint64_t budget, int threads, bool json) {
  TorelliOptions opts;
  opts.budget = budget;
  opts.threads = threads;
  TorelliVerdict v = torelli_check(n, d, opts);
  if (json) {
    emit(to_json(v));
    return v.exit_code();
  }
  std::cout << "torelli check n=" << n << " d=" << d << "\n";
  if (v.status != TorelliVerdict::Status::ok) {
    std::cout << (v.status == TorelliVerdict::Status::budget_exceeded
                      ? "budget exceeded: "
                      : "not of Wagstaff type: ")
              << v.gate_message << "\n";
    return v.exit_code();
  }
  std::cout << "p = " << v.p->get_str() << " ("
            << to_string(v.p_primality) << ")\n";
  if (v.excluded_case)
    std::cout << "note: (3,3) is excluded from the conjecture's hypothesis\n";
  std::cout << "tuples enumerated: " << v.tuples_needed.get_str() << " in "
            << v.enumerate_seconds << "s\n";
  const auto& ex = *v.extremality;
  std::cout << "spectrum: total " << ex.total_count << " of expected "
            << ex.rank_expected << ", zero hits " << ex.zero_hits
            << ", multiplicity-one union "
            << (ex.distinct_union ? "yes" : "NO") << ", extremal "
            << (ex.extremal ? "yes" : "NO") << "\n";
  const auto& inv = *v.invariants;
  std::cout << "invariants: partition " << (inv.partition ? "ok" : "FAIL")
            << ", hodge symmetry " << (inv.hodge_symmetry ? "ok" : "FAIL")
            << ", shift invariance " << (inv.shift_invariance ? "ok" : "FAIL")
            << ", ord(1-d) = n+2 " << (inv.order_n_plus_2 ? "ok" : "FAIL")
            << "\n";
  for (const auto& s : v.spectra) {
    if (!s.residues.empty() && s.residues.size() <= 64)
      std::cout << "S_" << s.q << " (sum " << s.target_sum
                << ") = " << render_set(s.residues) << "\n";
    else
      std::cout << "S_" << s.q << " (sum " << s.target_sum << "): " << s.count
                << " residues\n";
  }
  std::cout << "stabilizer = " << render_set(v.stab->stabilizer) << " ("
            << v.stabilizer_seconds << "s)\n";
  std::cout << "<1-d> = " << render_set(v.stab->expected) << "\n";
  std::cout << "condition holds: " << (v.condition_holds ? "yes" : "NO") << "\n";
  return v.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact analysis of hypersurface automorphisms: differential "
               "method, diagonal groups, Wagstaff census, modular stabilizers"};
  app.require_subcommand(1);

  std::string form_path;
  std::uint64_t seed = 0;

  auto* analyze = app.add_subcommand("analyze",
                                     "sparsity, variables, differential ranks, "
                                     "poset and automorphism constraint of a form");
  analyze->add_option("form-file", form_path, "form file")->required();
  bool analyze_json = false;
  analyze->add_flag("--json", analyze_json, "JSON output");

  auto* family = app.add_subcommand("family",
                                    "closed-form automorphism group of a "
                                    "classical family member");
  std::string family_name;
  int fam_n = 0, fam_d = 0;
  bool fam_verify = false, fam_json = false;
  family->add_option("family", family_name, "fermat | delsarte | klein")->required();
  family->add_option("n", fam_n, "dimension")->required();
  family->add_option("d", fam_d, "degree")->required();
  family->add_flag("--verify", fam_verify, "cross-check generators and diagonal group");
  family->add_flag("--json", fam_json, "JSON output");
  family->add_option("--seed", seed, "seed for the cubic direction scan");

  auto* diag = app.add_subcommand("diag-aut",
                                  "diagonal projective automorphism group of a form");
  std::string diag_path;
  bool diag_json = false;
  diag->add_option("form-file", diag_path, "form file")->required();
  diag->add_flag("--json", diag_json, "JSON output");

  auto* wagstaff = app.add_subcommand("wagstaff", "Wagstaff-type census");
  auto* scan = wagstaff->add_subcommand("scan", "census over n <= n-max, d <= d-max");
  int n_max = 0, d_max = 0;
  bool wag_json = false;
  scan->add_option("n-max", n_max, "largest dimension")->required();
  scan->add_option("d-max", d_max, "largest degree")->required();
  scan->add_flag("--json", wag_json, "JSON output");
  wagstaff->require_subcommand(1);

  auto* torelli = app.add_subcommand("torelli", "modular stabilizer condition");
  auto* check = torelli->add_subcommand("check", "run the full pipeline for (n, d)");
  int tor_n = 0, tor_d = 0;
  std::uint64_t budget = 200'000'000;
  std::string parallelism = "1";
  bool tor_json = false;
  check->add_option("n", tor_n, "dimension")->required();
  check->add_option("d", tor_d, "degree")->required();
  check->add_option("--budget", budget, "tuple budget (default 2e8)");
  check->add_option("--parallelism", parallelism, "worker count or 'auto'");
  check->add_flag("--json", tor_json, "JSON output");
  torelli->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return run_analyze(form_path, analyze_json);
    if (*family) return run_family(family_name, fam_n, fam_d, fam_verify, fam_json, seed);
    if (*diag) return run_diag_aut(diag_path, diag_json);
    if (*scan) return run_wagstaff(n_max, d_max, wag_json);
    if (*check) {
      int threads = 1;
      if (parallelism == "auto") {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads < 1) threads = 1;
      } else {
        try {
          threads = std::stoi(parallelism);
        } catch (const std::exception&) {
          std::cerr << "error: --parallelism must be an integer or 'auto'\n";
          return 1;
        }
        if (threads < 1) threads = 1;
      }
      return run_torelli(tor_n, tor_d, budget, threads, tor_json);
    }
  } catch (const SyntaxError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const NotHomogeneousError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ZeroFormError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const OutOfTableRangeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (*analyze || *diag) return 2;
    return 1;
  }
  return 0;
}
