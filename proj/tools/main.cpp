// hazard: analyze Boolean functions for hazards, synthesize hazard-free
// formulas, and run exact communication-game searches from the shell.
//
// Exit codes: 0 ok, 2 usage, 3 bad input, 4 budget exceeded, 5 internal.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hazard/errors.hpp"
#include "hazard/experiments.hpp"
#include "hazard/formula.hpp"
#include "hazard/implicants.hpp"
#include "hazard/kw.hpp"

using nlohmann::json;
using namespace hazard;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_input = 3;
constexpr int exit_budget = 4;
constexpr int exit_internal = 5;

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// All file outputs go through a temp-file rename so an aborted run never
// leaves a truncated artifact behind.
void write_atomic(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    return;
  }
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw input_error("cannot write " + tmp);
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

TruthTable load_table(const std::string& path) {
  try {
    return TruthTable::parse(read_file(path));
  } catch (const input_error&) {
    throw;
  } catch (const std::exception& e) {
    throw input_error(std::string("bad truth table in ") + path + ": " + e.what());
  }
}

Formula load_formula(const std::string& path) {
  try {
    return Formula::parse_sexpr(read_file(path));
  } catch (const input_error&) {
    throw;
  } catch (const std::exception& e) {
    throw input_error(std::string("bad formula in ") + path + ": " + e.what());
  }
}

json witness_list(const std::vector<TritWord>& ws) {
  json arr = json::array();
  for (const auto& w : ws) arr.push_back(w.str());
  return arr;
}

json hazard_report_json(const HazardReport& rep) {
  json j;
  j["arity"] = rep.arity;
  j["hazard_free"] = rep.hazard_free;
  j["witnesses"] = witness_list(rep.witnesses);
  j["inputs_checked"] = rep.inputs_checked;
  j["exhaustive"] = rep.exhaustive;
  j["function"] = rep.function.to_text();
  return j;
}

// ------------------------------------------------------------ subcommands

int cmd_analyze(const std::string& table_path, const std::string& out,
                const std::string& implicants_out, const std::string& implicates_out,
                const SearchLimits& lim) {
  TruthTable f = load_table(table_path);
  json j;
  j["arity"] = f.arity();
  j["constant"] = f.is_constant();
  j["monotone"] = is_monotone(f);

  auto labels = unateness(f);
  json lab = json::array();
  for (auto u : labels) {
    switch (u) {
      case Unateness::positive: lab.push_back("positive"); break;
      case Unateness::negative: lab.push_back("negative"); break;
      case Unateness::both: lab.push_back("both"); break;
      case Unateness::none: lab.push_back("none"); break;
    }
  }
  j["unateness"] = std::move(lab);
  j["unate"] = is_unate(f);

  if (f.arity() <= TernaryTable::max_memo_arity) {
    PrimeSet p1 = prime_set(f, 1), p0 = prime_set(f, 0);
    j["prime_implicants"] = witness_list(p1.words);
    j["prime_implicates"] = witness_list(p0.words);
    if (!implicants_out.empty()) write_atomic(implicants_out, p1.to_lines());
    if (!implicates_out.empty()) write_atomic(implicates_out, p0.to_lines());

    if (f.arity() <= 6) {
      TernaryTable ext = TernaryTable::extension_of(f);
      json ds = json::array();
      for (uint32_t xv = 0; xv < f.size(); ++xv) {
        BitWord x(f.arity(), xv);
        TruthTable d = hazard_derivative(ext, x);
        PrimeSet dp = prime_set(d, 1);
        int maxw = 0, dnf = 0;
        for (const auto& p : dp.words) {
          maxw = std::max(maxw, weight(p));
          dnf += weight(p);
        }
        ds.push_back({{"x", x.str()},
                      {"prime_implicants", dp.words.size()},
                      {"max_prime_weight", maxw},
                      {"monotone_dnf_size", dnf}});
      }
      j["derivatives"] = std::move(ds);
    }

    if (!f.is_constant() &&
        p1.words.size() + p0.words.size() <= lim.max_labels) {
      UnateCriterionReport rep = unate_criterion(f, lim);
      j["monogap"] = {{"size_u", rep.size_u},
                      {"max_derivative_size", rep.max_derivative_size},
                      {"argmax_x", rep.argmax_x.str()},
                      {"gap", static_cast<double>(rep.size_u) /
                                  static_cast<double>(rep.max_derivative_size)},
                      {"gap_free", rep.gap_free},
                      {"criterion_holds", rep.criterion_holds}};
    }
  }
  write_atomic(out, j.dump(2));
  return exit_ok;
}

int cmd_synthesize(const std::string& table_path, const std::string& method,
                   const std::string& side_name, const std::string& out,
                   const std::string& report_path) {
  TruthTable f = load_table(table_path);
  Formula result;
  json info;
  if (method == "mux") {
    result = universal_hazard_free(f);
    info["method"] = "mux";
  } else if (method == "cover") {
    CoverSide side =
        side_name == "implicants" ? CoverSide::implicants : CoverSide::implicates;
    auto base_points = greedy_prime_cover(f, side == CoverSide::implicates ? 0 : 1);
    result = derivative_cover_synthesis(f, base_points, side);
    info["method"] = "cover";
    info["side"] = side_name;
    json pts = json::array();
    for (const auto& x : base_points) pts.push_back(x.str());
    info["base_points"] = std::move(pts);
    info["cover"] = "greedy";
  } else {
    throw input_error("unknown method " + method + " (use mux or cover)");
  }

  info["size"] = result.size();
  info["depth"] = result.depth();
  if (f.arity() <= TernaryTable::max_memo_arity) {
    HazardReport rep = hazard_check(result, f.arity());
    info["hazard_report"] = hazard_report_json(rep);
    info["computes_input_function"] = rep.function == f;
  }
  write_atomic(out, result.to_sexpr() + "\n");
  if (!report_path.empty()) write_atomic(report_path, info.dump(2));
  return exit_ok;
}

int cmd_check(const std::string& formula_path, int arity, int sampled, uint64_t seed,
              const std::string& out) {
  Formula f = load_formula(formula_path);
  if (arity < f.max_var()) throw input_error("--arity below the largest variable index");
  if (sampled == 0 && arity > TernaryTable::max_memo_arity)
    throw input_error("full scans stop at 13 variables; pass --sampled N beyond that");
  HazardReport rep = sampled > 0 ? hazard_check_sampled(f, arity, sampled, seed)
                                 : hazard_check(f, arity);
  write_atomic(out, hazard_report_json(rep).dump(2));
  return exit_ok;
}

int cmd_kw(const std::string& table_path, bool exact, bool tree, bool simplify,
           bool simplify_cols, bool classic, const std::string& out, SearchLimits lim) {
  TruthTable f = load_table(table_path);
  if (f.is_constant()) throw input_error("constant function has no game matrix");
  KwMatrix m = classic ? kw_classic_matrix(f) : kwu_matrix(f);
  if (simplify || simplify_cols) m = simplify_rows(m, simplify_cols);

  json j;
  j["game"] = classic ? "classic" : "hazard-free";
  j["simplified"] = simplify || simplify_cols;
  j["simplified_columns"] = simplify_cols;
  j["matrix"] = json::parse(m.to_json());
  if (exact) {
    lim.want_tree = tree;
    ProtocolResult res = monorect_exact(m, lim);
    j["protocol"] = json::parse(res.to_json());
  }
  write_atomic(out, j.dump(2));
  return exit_ok;
}

int cmd_compose(const std::string& f_path, const std::string& g_path, bool verify,
                const std::string& out) {
  TruthTable f = load_table(f_path);
  TruthTable g = load_table(g_path);
  TruthTable h = block_compose(f, g);

  json j;
  j["n"] = f.arity();
  j["m"] = g.arity();
  j["composed"] = h.to_text();

  if (verify) {
    const int nm = f.arity() * g.arity();
    bool primes_ok = composition_primes(f, g).words == prime_set(h, 1).words;
    j["prime_construction_matches"] = primes_ok;

    if (nm <= 8) {
      TernaryTable hext = TernaryTable::extension_of(h);
      TernaryTable gext = TernaryTable::extension_of(g);
      bool ext_ok = true;
      for (uint32_t idx = 0; idx < hext.size() && ext_ok; ++idx) {
        TritWord P = TernaryTable::word_of(nm, idx);
        TritWord inner(f.arity());
        for (int i = 1; i <= f.arity(); ++i) {
          TritWord row(g.arity());
          for (int jj = 1; jj <= g.arity(); ++jj)
            row = row.with(jj, P.get((i - 1) * g.arity() + jj));
          inner = inner.with(i, gext.at(row));
        }
        if (hext.at(idx) != extension_eval(f, inner)) ext_ok = false;
      }
      j["extension_identity_ok"] = ext_ok;
      j["chain_rule_ok"] = chain_rule_holds(f, g);
    }

    if (is_monotone(f)) {
      CompositionReductionReport rep = composition_reduction(f, g);
      j["direct_sum_reduction"] = json::parse(rep.to_json());
    } else {
      j["direct_sum_reduction"] = nullptr;
    }
  }
  write_atomic(out, j.dump(2));
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hazard-free Boolean function toolkit"};
  app.set_version_flag("--version", std::string(library_version));
  app.require_subcommand(1);

  std::string table_path, formula_path, g_path, out = "-", report_path;
  std::string implicants_out, implicates_out;
  std::string method = "mux", side = "implicates";
  int arity = 0, sampled = 0, jobs = 1;
  uint64_t seed = 1;
  double budget = 0.0;
  size_t limit = 26;
  bool exact = false, tree = false, simplify = false, simplify_cols = false,
       classic = false, verify = false;

  auto* analyze = app.add_subcommand("analyze", "structure report for a truth table");
  analyze->add_option("table", table_path, "truth table file")->required();
  analyze->add_option("--out", out, "output path (- for stdout)");
  analyze->add_option("--implicants-out", implicants_out,
                      "write prime implicants, one word per line");
  analyze->add_option("--implicates-out", implicates_out,
                      "write prime implicates, one word per line");
  analyze->add_option("--limit", limit, "label limit for exact searches");
  analyze->add_option("--budget", budget, "wall-clock budget in seconds");

  auto* synthesize =
      app.add_subcommand("synthesize", "build a hazard-free formula for a table");
  synthesize->add_option("table", table_path, "truth table file")->required();
  synthesize->add_option("--method", method, "mux or cover")->required();
  synthesize->add_option("--side", side, "cover side: implicates or implicants");
  synthesize->add_option("--out", out, "formula output path (- for stdout)");
  synthesize->add_option("--report", report_path, "JSON report path");

  auto* check = app.add_subcommand("check", "scan a formula for hazards");
  check->add_option("formula", formula_path, "formula s-expression file")->required();
  check->add_option("--arity", arity, "number of input variables")->required();
  check->add_option("--sampled", sampled, "sample count instead of a full scan");
  check->add_option("--seed", seed, "sampling seed");
  check->add_option("--out", out, "output path (- for stdout)");

  auto* kw = app.add_subcommand("kw", "communication matrix and exact protocol search");
  kw->add_option("table", table_path, "truth table file")->required();
  kw->add_flag("--exact", exact, "run the exact protocol search");
  kw->add_flag("--tree", tree, "include a leaf-optimal protocol tree");
  kw->add_flag("--simplify", simplify, "drop dominated rows first");
  kw->add_flag("--simplify-columns", simplify_cols,
               "also drop dominated columns (empirical reduction)");
  kw->add_flag("--classic", classic, "classic game on full preimages");
  kw->add_option("--limit", limit, "label limit for the exact search");
  kw->add_option("--budget", budget, "wall-clock budget in seconds");
  kw->add_option("--out", out, "output path (- for stdout)");

  auto* compose = app.add_subcommand("compose", "block composition of two tables");
  compose->add_option("f", table_path, "outer truth table")->required();
  compose->add_option("g", g_path, "inner truth table")->required();
  compose->add_flag("--verify", verify, "run the structural checks");
  compose->add_option("--out", out, "output path (- for stdout)");

  auto* study = app.add_subcommand("study", "reproducible parameterized runs");
  std::string study_name;
  int n = 10, a = 1, b = 3, k = 2, m = 2, trials = 200, x_samples = 4,
      samples = 1000, bases = 5, probe_samples = 4000;
  study->add_option("name", study_name,
                    "random-derivative | monogap | range | andreev")
      ->required();
  study->add_option("--table", table_path, "table for monogap");
  study->add_option("--n", n, "dimension");
  study->add_option("--a", a, "range lower bound");
  study->add_option("--b", b, "range upper bound");
  study->add_option("--k", k, "andreev k");
  study->add_option("--m", m, "andreev m");
  study->add_option("--trials", trials, "number of random functions");
  study->add_option("--x-samples", x_samples, "base points per function");
  study->add_option("--samples", samples, "perturbation samples");
  study->add_option("--bases", bases, "andreev base points");
  study->add_option("--probe-samples", probe_samples, "fixed-word probe samples");
  study->add_option("--seed", seed, "master seed");
  study->add_option("--jobs", jobs, "worker threads");
  study->add_option("--limit", limit, "label limit for exact searches");
  study->add_option("--budget", budget, "wall-clock budget in seconds");
  study->add_option("--out", out, "output path (- for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints usage/help text
    return code == 0 ? exit_ok : exit_usage;
  }

  SearchLimits lim;
  lim.max_labels = limit;
  lim.budget_seconds = budget;

  try {
    if (app.got_subcommand(analyze))
      return cmd_analyze(table_path, out, implicants_out, implicates_out, lim);
    if (app.got_subcommand(synthesize))
      return cmd_synthesize(table_path, method, side, out, report_path);
    if (app.got_subcommand(check))
      return cmd_check(formula_path, arity, sampled, seed, out);
    if (app.got_subcommand(kw))
      return cmd_kw(table_path, exact, tree, simplify, simplify_cols, classic, out, lim);
    if (app.got_subcommand(compose)) return cmd_compose(table_path, g_path, verify, out);
    if (app.got_subcommand(study)) {
      std::string report;
      if (study_name == "random-derivative") {
        StudyOptions opts;
        opts.jobs = jobs;
        report = random_derivative_study(n, trials, x_samples, seed, 0.95, 3, 1,
                                         probe_samples, opts);
      } else if (study_name == "monogap") {
        if (table_path.empty()) throw input_error("monogap needs --table");
        report = monogap_report(load_table(table_path), lim);
      } else if (study_name == "range") {
        report = range_study(n, a, b, lim);
      } else if (study_name == "andreev") {
        report = andreev_study(k, m, bases, samples, seed);
      } else {
        throw input_error("unknown study " + study_name);
      }
      write_atomic(out, report);
      return exit_ok;
    }
    return exit_usage;
  } catch (const input_error& e) {
    json err{{"error", "input"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return exit_input;
  } catch (const budget_exceeded& e) {
    json err{{"error", "budget"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return exit_budget;
  } catch (const std::exception& e) {
    json err{{"error", "internal"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return exit_internal;
  }
}
