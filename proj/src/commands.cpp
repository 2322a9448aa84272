#include "numrad/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include "numrad/ensembles.hpp"
#include "numrad/functional.hpp"
#include "numrad/inequalities.hpp"
#include "numrad/io.hpp"
#include "numrad/kernels.hpp"
#include "numrad/quantities.hpp"
#include "numrad/sweep.hpp"

namespace numrad {

namespace {

using nlohmann::json;

double max_entry_error(const CMatrix& a, const CMatrix& expected) {
  return max_abs_entry(a - expected);
}

void finish(ReproCheck& c) {
  c.pass = c.strict_greater ? c.value > c.expected : std::abs(c.value - c.expected) <= c.tol;
}

unsigned default_threads() {
  if (const char* env = std::getenv("NUMRAD_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void print_report(std::ostream& out, const BoundReport& r) {
  out << r.id << ' ' << to_string(r.sign) << ' ';
  if (!r.applicable) {
    out << "not-applicable: " << r.reason;
  } else {
    out << (r.holds ? "holds" : "VIOLATED") << " lhs=" << format_double(*r.lhs)
        << " rhs=" << format_double(*r.rhs) << " slack=" << format_double(*r.slack);
  }
  out << " digest=" << r.inputs_digest << '\n';
  for (const LinkReport& l : r.links)
    out << "    " << (l.holds ? "ok  " : "FAIL") << ' ' << l.label << ": " << format_double(l.lhs)
        << " <= " << format_double(l.rhs) << '\n';
  for (const auto& [k, v] : r.details) out << "    " << k << " = " << format_double(v) << '\n';
}

void print_implication(std::ostream& out, const ImplicationReport& r) {
  out << r.id << ' ' << to_string(r.sign) << " hypothesis=" << (r.hypothesis_holds ? "yes" : "no")
      << " conclusion=" << (r.conclusion_holds ? "yes" : "no")
      << (r.consistent() ? " consistent" : " INCONSISTENT") << " digest=" << r.inputs_digest
      << '\n';
  for (const auto& [k, v] : r.details) out << "    " << k << " = " << format_double(v) << '\n';
}

struct GlobalOptions {
  double tol_cmp = default_settings().tol_cmp;
  std::size_t grid = default_settings().grid;
  double refine_tol = default_settings().refine_tol;
  std::string kernel;

  Settings settings() const {
    Settings s;
    s.tol_cmp = tol_cmp;
    s.grid = grid;
    s.refine_tol = refine_tol;
    return s;
  }
};

// ---- repro -----------------------------------------------------------------

struct ReproOptions {
  bool json = false;
  std::string fault;
};

int cmd_repro(const ReproOptions& o, const Settings& s, std::ostream& out) {
  const std::vector<ReproCheck> checks = repro_checks(s, o.fault);
  const bool all_pass =
      std::all_of(checks.begin(), checks.end(), [](const ReproCheck& c) { return c.pass; });
  if (o.json) {
    json jc = json::array();
    for (const ReproCheck& c : checks)
      jc.push_back({{"example", c.example},
                    {"quantity", c.quantity},
                    {"value", c.value},
                    {"expected", c.expected},
                    {"tol", c.tol},
                    {"comparison", c.strict_greater ? "greater" : "abs"},
                    {"pass", c.pass}});
    json reports = json::array();
    for (const char* name : {"example2x2", "example3x3"}) {
      const std::vector<CMatrix> in{worked_example(name)};
      for (const char* id : {"I-MAIN", "I-KIT03", "I-MAIN-DOM", "I-EQV"})
        reports.push_back(report_to_json(evaluate(id, in, Sign::none, s)));
    }
    out << json{{"pass", all_pass}, {"checks", std::move(jc)}, {"reports", std::move(reports)}}
               .dump(2)
        << '\n';
  } else {
    for (const ReproCheck& c : checks) {
      out << (c.pass ? "PASS " : "FAIL ") << c.example << ' ' << c.quantity
          << " value=" << format_double(c.value);
      if (c.strict_greater)
        out << " required > " << format_double(c.expected);
      else
        out << " expected=" << format_double(c.expected) << " tol=" << format_double(c.tol);
      out << '\n';
    }
    out << (all_pass ? "repro: PASS" : "repro: FAIL") << '\n';
  }
  return all_pass ? kExitPass : kExitViolation;
}

// ---- check -----------------------------------------------------------------

struct CheckOptions {
  std::vector<std::string> files;
  std::string inequality = "all";
  std::string sign = "both";
  double s = 0.5;
  bool json = false;
};

int cmd_check(const CheckOptions& o, const Settings& settings, std::ostream& out,
              std::ostream& err) {
  std::vector<CMatrix> inputs;
  for (const std::string& f : o.files) inputs.push_back(read_matrix_file(f));

  std::vector<Sign> signs;
  if (o.sign == "both") {
    signs = {Sign::plus, Sign::minus};
  } else if (auto sg = parse_sign(o.sign); sg && *sg != Sign::none) {
    signs = {*sg};
  } else {
    err << "check: --sign must be +, - or both\n";
    return kExitUsage;
  }
  EvalParams params;
  params.s = o.s;

  const bool is_implication = o.inequality.rfind("IMP-", 0) == 0;
  if (is_implication) {
    const auto& list = implication_list();
    const auto it = std::find_if(list.begin(), list.end(),
                                 [&](const ImplicationEntry& e) { return e.id == o.inequality; });
    if (it == list.end()) throw UnknownInequality(o.inequality);
    std::vector<ImplicationReport> reps;
    if (it->signed_variants) {
      for (Sign sg : signs) reps.push_back(check_implication(it->id, inputs, sg, settings));
    } else {
      reps.push_back(check_implication(it->id, inputs, Sign::none, settings));
    }
    bool ok = true;
    json arr = json::array();
    for (const auto& r : reps) {
      ok = ok && r.consistent();
      if (o.json)
        arr.push_back(implication_to_json(r));
      else
        print_implication(out, r);
    }
    if (o.json) out << arr.dump(2) << '\n';
    return ok ? kExitPass : kExitViolation;
  }

  std::vector<const CatalogEntry*> entries;
  if (o.inequality == "all") {
    for (const CatalogEntry& e : catalog_list())
      if (e.arity == inputs.size()) entries.push_back(&e);
    if (entries.empty()) {
      err << "check: no catalog entry takes " << inputs.size() << " input matrices\n";
      return kExitUsage;
    }
  } else {
    for (const std::string& id : split_list(o.inequality)) {
      const CatalogEntry* e = find_entry(id);
      if (!e) throw UnknownInequality(id);
      if (e->arity != inputs.size()) throw ArityMismatch(e->id, e->arity, inputs.size());
      entries.push_back(e);
    }
    if (entries.empty()) throw std::invalid_argument("check: empty --inequality list");
  }

  bool ok = true;
  json arr = json::array();
  for (const CatalogEntry* e : entries) {
    std::vector<Sign> use = e->signed_variants ? signs : std::vector<Sign>{Sign::none};
    for (Sign sg : use) {
      const BoundReport r = evaluate(e->id, inputs, sg, settings, params);
      if (r.applicable && !r.holds) ok = false;
      if (o.json)
        arr.push_back(report_to_json(r));
      else
        print_report(out, r);
    }
  }
  if (o.json) out << arr.dump(2) << '\n';
  return ok ? kExitPass : kExitViolation;
}

// ---- sweep -----------------------------------------------------------------

struct SweepOptions {
  std::string family;
  std::size_t n = 4;
  std::uint64_t trials = 100;
  std::uint64_t seed = 42;
  std::string entries;
  std::string out_path;
  unsigned threads = 0;
  std::vector<std::string> params;
  double s = 0.5;
};

int cmd_sweep(const SweepOptions& o, const Settings& settings, std::ostream& out,
              std::ostream& err) {
  SweepConfig cfg;
  const auto fam = parse_family(o.family);
  if (!fam) {
    err << "sweep: unknown family '" << o.family << "'\n";
    return kExitUsage;
  }
  cfg.spec.family = *fam;
  cfg.spec.n = o.n;
  cfg.spec.seed = o.seed;
  for (const std::string& kv : o.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      err << "sweep: --param expects key=value, got '" << kv << "'\n";
      return kExitUsage;
    }
    try {
      cfg.spec.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      err << "sweep: bad number in --param '" << kv << "'\n";
      return kExitUsage;
    }
  }
  cfg.trials = o.trials;
  cfg.entries = split_list(o.entries);
  cfg.threads = o.threads == 0 ? default_threads() : o.threads;
  cfg.settings = settings;
  cfg.params.s = o.s;

  const SweepResult res = run_sweep(cfg);

  if (!o.out_path.empty()) {
    const std::filesystem::path p(o.out_path);
    const std::string ext = p.extension().string();
    if (ext == ".csv") {
      write_text_file(p, sweep_to_csv(res));
    } else if (ext == ".json") {
      write_text_file(p, sweep_to_json(res));
    } else {
      err << "sweep: --out must end in .json or .csv\n";
      return kExitUsage;
    }
  }

  out << "family=" << to_string(cfg.spec.family) << " n=" << cfg.spec.n
      << " seed=" << cfg.spec.seed << " trials=" << cfg.trials << '\n';
  for (const SweepSummary& s : res.summaries) {
    out << std::left << std::setw(14) << s.key << " applicable=" << s.applicable << '/'
        << s.trials << " violations=" << s.violations
        << " slack[min,mean,max]=" << format_double(s.min_slack) << ','
        << format_double(s.mean_slack) << ',' << format_double(s.max_slack) << '\n';
    for (const auto& [other, frac] : s.tighter_than)
      out << "    tighter_than " << other << " = " << format_double(frac) << '\n';
  }
  out << "violations=" << res.violations() << '\n';
  return res.violations() == 0 ? kExitPass : kExitViolation;
}

// ---- list ------------------------------------------------------------------

int cmd_list(bool as_json, std::ostream& out) {
  if (as_json) {
    json arr = json::array();
    for (const CatalogEntry& e : catalog_list()) arr.push_back(catalog_entry_to_json(e));
    json imps = json::array();
    for (const ImplicationEntry& e : implication_list())
      imps.push_back({{"id", e.id}, {"arity", e.arity}, {"signed", e.signed_variants},
                      {"statement", e.statement}});
    out << json{{"inequalities", std::move(arr)}, {"implications", std::move(imps)}}.dump(2)
        << '\n';
    return kExitPass;
  }
  out << std::left << std::setw(12) << "id" << std::setw(7) << "arity" << std::setw(7) << "signs"
      << std::setw(12) << "inputs" << "formula  [precondition]\n";
  for (const CatalogEntry& e : catalog_list()) {
    std::string names;
    for (const std::string& nm : e.inputs) names += (names.empty() ? "" : ",") + nm;
    out << std::left << std::setw(12) << e.id << std::setw(7) << e.arity << std::setw(7)
        << (e.signed_variants ? "+,-" : "-") << std::setw(12) << names << e.formula;
    if (e.precondition != "none") out << "  [" << e.precondition << "]";
    out << '\n';
  }
  for (const ImplicationEntry& e : implication_list())
    out << std::left << std::setw(12) << e.id << std::setw(7) << e.arity << std::setw(7)
        << (e.signed_variants ? "+,-" : "-") << std::setw(12) << "" << e.statement << '\n';
  return kExitPass;
}

}  // namespace

std::vector<ReproCheck> repro_checks(const Settings& s, const std::string& fault) {
  std::vector<ReproCheck> checks;
  auto add = [&](const std::string& example, const std::string& quantity, double value,
                 double expected, double tol, bool greater = false) {
    ReproCheck c{example, quantity, value, expected, tol, greater, false};
    if (fault == example + ":" + quantity) c.expected += 1.0;
    finish(c);
    checks.push_back(std::move(c));
  };

  {
    const CMatrix a = worked_example("example2x2");
    const AbsParts p = abs_parts(a);
    const double r = spectral_radius_psd_product(p.abs_a, p.abs_a_star);
    const double norm_a2 = op_norm(a * a);
    const double w = numerical_radius(a, s).value;
    const std::vector<CMatrix> in{a};
    const BoundReport main = evaluate("I-MAIN", in, Sign::none, s);
    const BoundReport kit = evaluate("I-KIT03", in, Sign::none, s);
    // ||A|| = (5 + sqrt 13) / 2, the top eigenvalue of |A| = [[1,1],[1,4]].
    const double norm_a = 0.5 * (5.0 + std::sqrt(13.0));
    const double norm_a2_exact = std::sqrt(59.0 + 10.0 * std::sqrt(34.0));
    add("example2x2", "abs_A_max_entry_error",
        max_entry_error(p.abs_a, CMatrix::from_rows({{1, 1}, {1, 4}})), 0.0, 1e-9);
    add("example2x2", "abs_A_star_max_entry_error",
        max_entry_error(p.abs_a_star, CMatrix::from_rows({{4, 1}, {1, 1}})), 0.0, 1e-9);
    add("example2x2", "r_abs_product", r, 9.0, 1e-9);
    add("example2x2", "norm_A2", norm_a2, norm_a2_exact, 1e-9);
    add("example2x2", "w", w, 3.5, 1e-6);
    add("example2x2", "rhs_I-MAIN", *main.rhs, 0.5 * (norm_a + 3.0), 1e-6);
    add("example2x2", "rhs_I-KIT03", *kit.rhs, 0.5 * (norm_a + std::sqrt(norm_a2_exact)), 1e-6);
    add("example2x2", "rhs_I-KIT03_minus_rhs_I-MAIN", *kit.rhs - *main.rhs, 0.0, 0.0, true);
  }
  {
    const CMatrix a = worked_example("example3x3");
    const AbsParts p = abs_parts(a);
    const double w = numerical_radius(a, s).value;
    const double nrm = op_norm(a);
    const double n2 = op_norm(a * a);
    const double kit = 0.5 * (nrm + std::sqrt(n2));
    add("example3x3", "w", w, 1.5, 1e-9);
    add("example3x3", "norm_A", nrm, 3.0, 1e-9);
    add("example3x3", "half_norm_A", 0.5 * nrm, 1.5, 1e-9);
    add("example3x3", "r_abs_product", spectral_radius_psd_product(p.abs_a, p.abs_a_star), 1.0,
        1e-9);
    add("example3x3", "norm_A2", n2, 1.0, 1e-9);
    add("example3x3", "kit03_bound", kit, 2.0, 1e-9);
    add("example3x3", "kit03_bound_minus_w", kit - w, 0.0, 0.0, true);
  }
  return checks;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical radius toolkit and inequality checker", "numrad"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--tol-cmp", g.tol_cmp, "Comparison tolerance (relative, floor 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--grid", g.grid, "Angle grid size for w and c")->check(CLI::Range(4, 1 << 22));
  app.add_option("--refine-tol", g.refine_tol, "Angle refinement bracket width")
      ->check(CLI::PositiveNumber);
  app.add_option("--kernel", g.kernel, "Kernel variant: scalar, avx2 or auto")
      ->check(CLI::IsMember({"scalar", "avx2", "auto"}));

  ReproOptions ro;
  CLI::App* repro = app.add_subcommand("repro", "Reproduce the worked examples");
  repro->add_flag("--json", ro.json, "Emit JSON");
  repro->add_option("--inject-fault", ro.fault,
                    "Test mode: shift the expectation of example:quantity");

  CheckOptions co;
  CLI::App* check = app.add_subcommand("check", "Evaluate catalog entries on matrix files");
  check->add_option("files", co.files, "Matrix JSON files")->required();
  check->add_option("--inequality,-i", co.inequality, "Entry ids (comma-separated), one implication id, or all");
  check->add_option("--sign", co.sign, "+, - or both (signed entries)");
  check->add_option("--s", co.s, "Exponent s of I-GEN-FG")->check(CLI::Range(0.0, 1.0));
  check->add_flag("--json", co.json, "Emit JSON");

  SweepOptions so;
  CLI::App* sweep = app.add_subcommand("sweep", "Run entries over a random ensemble");
  sweep->add_option("--family", so.family, "Ensemble family")->required();
  sweep->add_option("--n", so.n, "Dimension")->check(CLI::PositiveNumber);
  sweep->add_option("--trials", so.trials, "Number of trials");
  sweep->add_option("--seed", so.seed, "Seed");
  sweep->add_option("--entries", so.entries, "Comma-separated entry ids (default: all that apply)");
  sweep->add_option("--out", so.out_path, "Write per-trial reports to .json or .csv");
  sweep->add_option("--threads", so.threads, "Worker threads (default $NUMRAD_THREADS or 1)");
  sweep->add_option("--param", so.params, "Family parameter key=value");
  sweep->add_option("--s", so.s, "Exponent s of I-GEN-FG")->check(CLI::Range(0.0, 1.0));

  bool list_json = false;
  CLI::App* list = app.add_subcommand("list", "Print the catalog");
  list->add_flag("--json", list_json, "Emit JSON");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (!g.kernel.empty() && !kernels::select(g.kernel)) {
      err << "error: kernel '" << g.kernel << "' is not available on this machine\n";
      return kExitUsage;
    }
    const Settings settings = g.settings();
    if (repro->parsed()) return cmd_repro(ro, settings, out);
    if (check->parsed()) return cmd_check(co, settings, out, err);
    if (sweep->parsed()) return cmd_sweep(so, settings, out, err);
    if (list->parsed()) return cmd_list(list_json, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitViolation;
  }
  return kExitUsage;
}

}  // namespace numrad
