// mgcurl: contraction-number experiments for the H(curl) multigrid solver.
//
//   mgcurl table     estimate V-cycle contraction numbers over a parameter grid
//   mgcurl converge  manufactured-solution L2 convergence study
//   mgcurl check     internal consistency checks (skeleton lemma, Galerkin,
//                    spectral bound at the safe damping limit)
//   mgcurl dump      write one assembled operator as text triplets
//
// Exit codes: 0 success, 2 invalid configuration, 3 non-convergence.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mgcurl/checks.hpp"
#include "mgcurl/contraction.hpp"

namespace {

using namespace mgcurl;

// "1..4" (inclusive range) or "1,2,3".
std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  const auto dots = s.find("..");
  if (dots != std::string::npos) {
    const int lo = std::stoi(s.substr(0, dots));
    const int hi = std::stoi(s.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty range: " + s);
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stoi(tok));
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stod(tok));
  return out;
}

bool parse_bool(const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw std::invalid_argument("not a boolean: " + v);
}

SmootherKind parse_kind(const std::string& v) {
  if (v == "edge") return SmootherKind::edge;
  if (v == "vertex") return SmootherKind::vertex;
  throw std::invalid_argument("smoother must be edge or vertex");
}

// Flat "key = value" file; '#' starts a comment. Keys mirror the long flags
// and override whatever the flags set.
void apply_config_file(const std::string& path, ExperimentConfig& cfg,
                       std::string& output_path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string key, eq, value;
    std::stringstream ss(line);
    if (!(ss >> key)) continue;  // blank
    ss >> eq;
    if (eq != "=") {
      value = eq;  // "key value" form
    } else {
      ss >> value;
    }
    if (value.empty())
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": missing value for " + key);
    if (key == "smoother") {
      cfg.kind = parse_kind(value);
    } else if (key == "alpha") {
      cfg.alphas = parse_double_list(value);
    } else if (key == "levels") {
      cfg.levels = parse_int_list(value);
    } else if (key == "steps") {
      cfg.steps = parse_int_list(value);
    } else if (key == "eta") {
      cfg.eta = std::stod(value);
    } else if (key == "seed") {
      cfg.seed = std::stoull(value);
    } else if (key == "tol") {
      cfg.tol = std::stod(value);
    } else if (key == "cap") {
      cfg.cap = std::stoi(value);
    } else if (key == "format") {
      if (value == "csv")
        cfg.format = ExperimentConfig::Format::csv;
      else if (value == "md")
        cfg.format = ExperimentConfig::Format::markdown;
      else
        throw std::invalid_argument("format must be csv or md");
    } else if (key == "deterministic") {
      cfg.deterministic = parse_bool(value);
    } else if (key == "unsafe_damping") {
      cfg.unsafe_damping = parse_bool(value);
    } else if (key == "output") {
      output_path = value;
    } else {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": unknown key " + key);
    }
  }
}

int cmd_table(const ExperimentConfig& cfg, const std::string& output_path) {
  const ContractionReport rep = run_table(cfg);
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!output_path.empty()) {
    file.open(output_path);
    if (!file) throw std::invalid_argument("cannot open " + output_path);
    os = &file;
  }
  if (cfg.format == ExperimentConfig::Format::csv)
    write_csv(rep, *os, cfg.deterministic);
  else
    write_markdown(rep, *os);
  if (!rep.all_converged()) {
    int n = 0;
    for (const auto& r : rep.rows) n += r.converged ? 0 : 1;
    std::cerr << n << " row(s) did not meet the power-iteration tolerance\n";
    return 3;
  }
  return 0;
}

int cmd_converge(double alpha, int levels, int quad, SmootherKind kind,
                 bool deterministic) {
  const ExecMode mode = deterministic ? ExecMode::serial : ExecMode::openmp;
  const std::vector<double> errs =
      manufactured_convergence(alpha, levels, quad, kind, mode);
  std::printf("level  l2_error      ratio\n");
  for (std::size_t i = 0; i < errs.size(); ++i) {
    if (i == 0)
      std::printf("%5zu  %.6e      -\n", i + 1, errs[i]);
    else
      std::printf("%5zu  %.6e  %.3f\n", i + 1, errs[i], errs[i - 1] / errs[i]);
  }
  return 0;
}

int cmd_check(bool deterministic) {
  const ExecMode mode = deterministic ? ExecMode::serial : ExecMode::openmp;
  const std::vector<int> levels = {1, 2};
  const std::vector<double> alphas = {0.01, 1.0, 100.0};
  std::vector<CheckResult> all = run_lemma_checks(levels, nullptr, mode);
  {
    auto g = run_galerkin_checks({1, 2, 3}, alphas, mode);
    all.insert(all.end(), g.begin(), g.end());
    auto s = run_spectral_checks(levels, alphas, 200, mode);
    all.insert(all.end(), s.begin(), s.end());
  }
  bool ok = true;
  for (const auto& c : all) {
    std::printf("%s %s: %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.c_str());
    ok = ok && c.pass;
  }
  return ok ? 0 : 3;
}

int cmd_dump(int level, double alpha, const std::string& which,
             const std::string& path) {
  const GridHierarchy g = build_hierarchy(level);
  const SystemOperator op = assemble_operator(g, level, alpha);
  const CsrMatrix* m = &op.combined;
  if (which == "stiffness")
    m = &op.stiffness;
  else if (which == "mass")
    m = &op.mass;
  else if (which != "combined")
    throw std::invalid_argument("matrix must be combined, stiffness or mass");
  dump_matrix(*m, path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"V-cycle multigrid experiments for curl(alpha curl u) + u = f"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string alpha_list, level_list = "1..4", step_list = "1..5";
  std::string format = "csv", config_path, output_path;

  CLI::App* table = app.add_subcommand("table", "contraction-number sweep");
  table->add_option("--smoother", [&](const auto& v) { cfg.kind = parse_kind(v[0]); return true; },
                    "edge | vertex")->type_name("KIND");
  table->add_option("--alpha", alpha_list, "comma-separated coefficients");
  table->add_option("--levels", level_list, "list or range, e.g. 1..4");
  table->add_option("--steps", step_list, "list or range, e.g. 1..5");
  table->add_option("--eta", cfg.eta, "damping factor (0: kind default)");
  table->add_option("--seed", cfg.seed, "power-iteration start seed");
  table->add_option("--tol", cfg.tol, "relative-change stopping tolerance");
  table->add_option("--cap", cfg.cap, "power-iteration cap");
  table->add_option("--format", format, "csv | md");
  table->add_flag("--deterministic", cfg.deterministic,
                  "serial kernels, zeroed timing column");
  table->add_flag("--unsafe-damping", cfg.unsafe_damping,
                  "accept eta above the provable bound");
  table->add_option("--config", config_path, "key=value file overriding flags");
  table->add_option("--output", output_path, "write report here (default stdout)");

  double cv_alpha = 1.0;
  int cv_levels = 3, cv_quad = 4;
  std::string cv_kind = "vertex";
  bool cv_det = false;
  CLI::App* conv = app.add_subcommand("converge", "manufactured-solution study");
  conv->add_option("--alpha", cv_alpha, "coefficient");
  conv->add_option("--levels", cv_levels, "finest level");
  conv->add_option("--quad", cv_quad, "1D quadrature points per cell");
  conv->add_option("--smoother", cv_kind, "edge | vertex");
  conv->add_flag("--deterministic", cv_det, "serial kernels");

  bool ck_det = false;
  CLI::App* check = app.add_subcommand("check", "internal consistency checks");
  check->add_flag("--deterministic", ck_det, "serial kernels");

  int dp_level = 1;
  double dp_alpha = 1.0;
  std::string dp_matrix = "combined", dp_path;
  CLI::App* dump = app.add_subcommand("dump", "write an operator as triplets");
  dump->add_option("--level", dp_level, "grid level");
  dump->add_option("--alpha", dp_alpha, "coefficient");
  dump->add_option("--matrix", dp_matrix, "combined | stiffness | mass");
  dump->add_option("--output", dp_path, "target file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (table->parsed()) {
      if (!alpha_list.empty()) cfg.alphas = parse_double_list(alpha_list);
      cfg.levels = parse_int_list(level_list);
      cfg.steps = parse_int_list(step_list);
      if (format == "md")
        cfg.format = ExperimentConfig::Format::markdown;
      else if (format != "csv")
        throw std::invalid_argument("format must be csv or md");
      if (!config_path.empty()) apply_config_file(config_path, cfg, output_path);
      return cmd_table(cfg, output_path);
    }
    if (conv->parsed())
      return cmd_converge(cv_alpha, cv_levels, cv_quad, parse_kind(cv_kind),
                          cv_det);
    if (check->parsed()) return cmd_check(ck_det);
    if (dump->parsed()) return cmd_dump(dp_level, dp_alpha, dp_matrix, dp_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
