// quadcert -- certified Simpson-rule error bounds from the command line.
//
//   quadcert eval  --f "x^4" --a 0 --b 1 --theorem h-l1 --h t --format json
//   quadcert sweep --f "x^4" --a 0 --b 1 --theorem h-l1 --theorem s-l1
//                  --axis s --from 0.1 --to 1.0 --step 0.1
//
// eval certifies one function against one or more bounds from the catalog
// and emits a table (default), JSON, or CSV report.  sweep varies exactly
// one parameter (s, q, alpha, or m) over a range and emits a CSV matrix:
// one row per axis value with every requested bound, the measured Simpson
// error, and the tightest informative bound's name.
//
// Exit status: 0 when every requested hypothesis passed and every bound
// dominated the measured error; 1 when any hypothesis failed or any passing
// bound missed domination; 2 for usage, parse, or evaluation errors.
// All parameter-validation problems are reported in one pass.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quadcert/bounds.hpp"
#include "quadcert/report.hpp"

namespace {

using namespace quadcert;

struct Config {
  std::string f_source;
  double a = 0.0;
  double b = 1.0;
  std::string h_source;
  double s = 0.5;
  double q = 2.0;
  double alpha = 1.0;
  double m = 1.0;
  std::vector<std::string> theorem_names;
  int grid_n = 64;
  double tol = 1e-9;
  std::string format = "table";
  std::string out_path;

  // sweep only
  std::string axis;
  double from = 0.0;
  double to = 0.0;
  double step = 0.0;
};

/// Registers the flags shared by eval and sweep on one subcommand.
void add_common_options(CLI::App* cmd, Config& cfg) {
  // free the short -h name so the weight flag --h can exist
  cmd->set_help_flag("--help", "Print this help message and exit");
  cmd->add_option("--f", cfg.f_source, "Function of x, e.g. \"x^4\" or \"x*exp(x)\"")
      ->required();
  cmd->add_option("--a", cfg.a, "Left endpoint")->required();
  cmd->add_option("--b", cfg.b, "Right endpoint")->required();
  cmd->add_option("--h", cfg.h_source,
                  "Convexity weight h(t) for the h-* bounds: t, 1, 1/t, t^s, or an "
                  "expression in t");
  cmd->add_option("--s", cfg.s, "s-convexity order in (0, 1] for the s-* bounds");
  cmd->add_option("--q", cfg.q,
                  "Integrability exponent: > 1 for *-holder, >= 1 for *-powermean");
  cmd->add_option("--alpha", cfg.alpha, "Convexity exponent in [0, 1] for the am-* bounds");
  cmd->add_option("--m", cfg.m, "Convexity modulus in [0, 1] for the am-* bounds");
  cmd->add_option("--theorem", cfg.theorem_names,
                  "Bound to certify (repeatable), or \"all\": classical, s-l1, "
                  "s-holder, s-powermean, h-l1, h-holder, h-powermean, am-holder, "
                  "am-powermean");
  cmd->add_option("--grid-n", cfg.grid_n, "Convexity-check grid density per axis")
      ->capture_default_str();
  cmd->add_option("--tol", cfg.tol, "Convexity-check slack tolerance")
      ->capture_default_str();
  cmd->add_option("--out", cfg.out_path, "Write the report to this file instead of stdout");
}

std::vector<TheoremId> resolve_theorems(const std::vector<std::string>& names,
                                        std::vector<std::string>& problems) {
  std::vector<TheoremId> theorems;
  if (names.empty()) {
    problems.push_back("at least one --theorem is required (or --theorem all)");
    return theorems;
  }
  for (const std::string& name : names) {
    if (name == "all") {
      const auto ids = all_theorem_ids();
      return std::vector<TheoremId>(ids.begin(), ids.end());
    }
  }
  for (const std::string& name : names) {
    if (const auto id = parse_theorem_id(name)) {
      theorems.push_back(*id);
    } else {
      std::string valid = "all";
      for (TheoremId id : all_theorem_ids()) valid += std::string(", ") + std::string(to_string(id));
      problems.push_back("unknown theorem \"" + name + "\" (valid: " + valid + ")");
    }
  }
  return theorems;
}

/// Parameter-presence and range validation shared by eval and sweep.  The
/// swept axis (empty for eval) is supplied per row, so its flag must be
/// absent and its range checks are handled by the sweep driver.
void validate_parameters(const CLI::App* cmd, const Config& cfg,
                         const std::vector<TheoremId>& theorems, const std::string& axis,
                         std::vector<std::string>& problems,
                         std::optional<HSpec>& weight) {
  if (!(cfg.a < cfg.b) || !std::isfinite(cfg.a) || !std::isfinite(cfg.b))
    problems.push_back("interval requires finite endpoints with a < b");

  bool needs_weight = false, needs_s = false, needs_q = false, needs_am = false,
       needs_conjugate_q = false;
  for (TheoremId id : theorems) {
    needs_weight |= theorem_uses_weight(id);
    needs_s |= theorem_uses_s(id);
    needs_q |= theorem_uses_q(id);
    needs_am |= theorem_uses_alpha_m(id);
    needs_conjugate_q |= theorem_requires_conjugate(id);
  }

  const bool has_h = cmd->count("--h") > 0;
  const bool has_s = cmd->count("--s") > 0;
  const bool has_q = cmd->count("--q") > 0;
  const bool has_alpha = cmd->count("--alpha") > 0;
  const bool has_m = cmd->count("--m") > 0;

  // weight
  if (needs_weight && axis == "s") {
    if (has_h)
      problems.push_back("--h conflicts with --axis s: h-* bounds track h = t^s per row");
  } else if (needs_weight && !has_h) {
    problems.push_back("--h is required by the requested h-* bounds");
  } else if (!needs_weight && has_h) {
    problems.push_back("--h was provided but no requested bound consumes a weight");
  }
  if (has_h && !(needs_weight && axis == "s")) {
    try {
      weight = HSpec::parse(cfg.h_source);
    } catch (const ParseError& e) {
      problems.push_back("--h: " + std::string(e.what()));
    } catch (const std::invalid_argument& e) {
      problems.push_back("--h: " + std::string(e.what()));
    }
  }

  // s
  if (axis == "s") {
    if (has_s) problems.push_back("--s conflicts with --axis s");
  } else if (needs_s && !has_s) {
    problems.push_back("--s is required by the requested s-* bounds");
  } else if (!needs_s && has_s) {
    problems.push_back("--s was provided but no requested bound consumes it");
  } else if (has_s && !(cfg.s > 0.0 && cfg.s <= 1.0)) {
    problems.push_back("--s must lie in (0, 1]");
  }

  // q
  if (axis == "q") {
    if (has_q) problems.push_back("--q conflicts with --axis q");
  } else if (needs_q && !has_q) {
    problems.push_back("--q is required by the requested *-holder/*-powermean bounds");
  } else if (!needs_q && has_q) {
    problems.push_back("--q was provided but no requested bound consumes it");
  } else if (has_q) {
    if (needs_conjugate_q && !(cfg.q > 1.0))
      problems.push_back("--q must be > 1 for the *-holder bounds");
    else if (!(cfg.q >= 1.0))
      problems.push_back("--q must be >= 1");
    if (!std::isfinite(cfg.q)) problems.push_back("--q must be finite");
  }

  // alpha, m
  if (axis == "alpha" && has_alpha) problems.push_back("--alpha conflicts with --axis alpha");
  if (axis == "m" && has_m) problems.push_back("--m conflicts with --axis m");
  if (needs_am) {
    if (axis != "alpha") {
      if (!has_alpha) {
        problems.push_back("--alpha is required by the requested am-* bounds");
      } else if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0)) {
        problems.push_back("--alpha must lie in [0, 1]");
      }
    }
    if (axis != "m") {
      if (!has_m) {
        problems.push_back("--m is required by the requested am-* bounds");
      } else if (!(cfg.m >= 0.0 && cfg.m <= 1.0)) {
        problems.push_back("--m must lie in [0, 1]");
      } else if (has_m && !(cfg.a < cfg.m * cfg.b)) {
        problems.push_back("am-* bounds need a nonempty governed interval: a < m*b");
      }
    }
  } else {
    if (has_alpha)
      problems.push_back("--alpha was provided but no requested bound consumes it");
    if (has_m) problems.push_back("--m was provided but no requested bound consumes it");
  }

  if (cfg.grid_n < 16) problems.push_back("--grid-n must be at least 16");
  if (!(cfg.tol > 0.0)) problems.push_back("--tol must be positive");
}

std::optional<FunctionModel> parse_function(const Config& cfg,
                                            std::vector<std::string>& problems) {
  try {
    return FunctionModel::parse(cfg.f_source);
  } catch (const ParseError& e) {
    problems.push_back("--f: " + std::string(e.what()));
    return std::nullopt;
  }
}

int report_problems(const std::vector<std::string>& problems) {
  for (const std::string& p : problems) std::fprintf(stderr, "error: %s\n", p.c_str());
  return 2;
}

int write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "error: cannot open output file \"%s\"\n", out_path.c_str());
    return 2;
  }
  out << text;
  return out.good() ? 0 : 2;
}

CertifyOptions base_options(const Config& cfg, const std::optional<HSpec>& weight) {
  CertifyOptions opt;
  opt.s = cfg.s;
  opt.q = cfg.q;
  opt.alpha = cfg.alpha;
  opt.m = cfg.m;
  if (weight) opt.h = *weight;
  opt.grid_n = cfg.grid_n;
  opt.convexity_tol = cfg.tol;
  return opt;
}

int exit_status(const std::vector<BoundReport>& reports) {
  for (const BoundReport& r : reports) {
    if (!r.hypothesis.passed) return 1;
    if (r.dominates.has_value() && !*r.dominates) return 1;
  }
  return 0;
}

int run_eval(const CLI::App* cmd, const Config& cfg) {
  std::vector<std::string> problems;
  const std::vector<TheoremId> theorems = resolve_theorems(cfg.theorem_names, problems);
  std::optional<HSpec> weight;
  validate_parameters(cmd, cfg, theorems, "", problems, weight);
  if (cfg.format != "table" && cfg.format != "json" && cfg.format != "csv")
    problems.push_back("--format must be table, json, or csv");
  const std::optional<FunctionModel> f = parse_function(cfg, problems);
  if (!problems.empty()) return report_problems(problems);

  const Interval iv(cfg.a, cfg.b);
  const CertifyOptions opt = base_options(cfg, weight);
  std::vector<BoundReport> reports;
  reports.reserve(theorems.size());
  try {
    for (TheoremId id : theorems) reports.push_back(certify(*f, iv, id, opt));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  std::string text;
  if (cfg.format == "json") {
    text = to_json(reports);
  } else if (cfg.format == "csv") {
    text = to_csv(reports);
  } else {
    text = "f(x) = " + cfg.f_source + " on [" + detail::format_full(cfg.a) + ", " +
           detail::format_full(cfg.b) + "]\n\n" + to_table(reports);
  }
  if (const int rc = write_output(text, cfg.out_path); rc != 0) return rc;
  return exit_status(reports);
}

int run_sweep(const CLI::App* cmd, const Config& cfg) {
  std::vector<std::string> problems;
  const std::vector<TheoremId> theorems = resolve_theorems(cfg.theorem_names, problems);
  std::optional<HSpec> weight;
  validate_parameters(cmd, cfg, theorems, cfg.axis, problems, weight);

  if (cfg.format != "csv" && cmd->count("--format") > 0)
    problems.push_back("sweep always emits CSV; drop --format or pass --format csv");

  bool any_am = false, any_weighted = false, any_s = false, any_conjugate = false,
       any_q = false;
  for (TheoremId id : theorems) {
    any_am |= theorem_uses_alpha_m(id);
    any_weighted |= theorem_uses_weight(id);
    any_s |= theorem_uses_s(id);
    any_q |= theorem_uses_q(id);
    any_conjugate |= theorem_requires_conjugate(id);
  }

  // range validation
  std::size_t rows = 0;
  if (!(std::isfinite(cfg.from) && std::isfinite(cfg.to) && cfg.step > 0.0)) {
    problems.push_back("--from/--to must be finite and --step positive");
  } else if (cfg.to < cfg.from) {
    problems.push_back("empty sweep range: --to is below --from");
  } else {
    rows = static_cast<std::size_t>((cfg.to - cfg.from) / cfg.step + 1e-9) + 1;
    if (rows > 10000) problems.push_back("sweep range exceeds 10000 rows");
  }

  if (cfg.axis == "s") {
    if (!any_s && !any_weighted)
      problems.push_back("--axis s requires an s-* or h-* bound among the theorems");
    if (rows > 0 && !(cfg.from > 0.0 && cfg.to <= 1.0))
      problems.push_back("--axis s requires the range to lie in (0, 1]");
  } else if (cfg.axis == "q") {
    if (!any_q) problems.push_back("--axis q requires a *-holder or *-powermean bound");
    if (rows > 0 && any_conjugate && !(cfg.from > 1.0))
      problems.push_back("--axis q with a *-holder bound requires the range to start above 1");
    if (rows > 0 && !any_conjugate && !(cfg.from >= 1.0))
      problems.push_back("--axis q requires the range to start at or above 1");
  } else if (cfg.axis == "alpha") {
    if (!any_am) problems.push_back("--axis alpha requires an am-* bound");
    if (rows > 0 && !(cfg.from >= 0.0 && cfg.to <= 1.0))
      problems.push_back("--axis alpha requires the range to lie in [0, 1]");
  } else if (cfg.axis == "m") {
    if (!any_am) problems.push_back("--axis m requires an am-* bound");
    if (rows > 0 && !(cfg.from >= 0.0 && cfg.to <= 1.0))
      problems.push_back("--axis m requires the range to lie in [0, 1]");
    if (rows > 0 && any_am && !(cfg.a < cfg.from * cfg.b))
      problems.push_back("--axis m: the smallest row already gives an empty governed "
                         "interval (a >= m*b)");
  }

  const std::optional<FunctionModel> f = parse_function(cfg, problems);
  if (!problems.empty()) return report_problems(problems);

  const Interval iv(cfg.a, cfg.b);

  // actual-error column: taken from the first bound that governs [a, b]
  // itself; if every requested bound is am-* the governed error is shown.
  std::size_t actual_idx = 0;
  for (std::size_t i = 0; i < theorems.size(); ++i) {
    if (!theorem_uses_alpha_m(theorems[i])) {
      actual_idx = i;
      break;
    }
  }

  std::string out = cfg.axis;
  for (TheoremId id : theorems) out += ",bound_" + std::string(to_string(id));
  out += ",actual_error,tightest";
  if (cfg.axis == "alpha") out += ",left_moment_sum,right_moment_sum";
  out += '\n';

  std::vector<BoundReport> all_reports;
  try {
    for (std::size_t k = 0; k < rows; ++k) {
      double v = cfg.from + static_cast<double>(k) * cfg.step;
      if (std::fabs(v - cfg.to) < 1e-9 * (1.0 + std::fabs(cfg.to))) v = cfg.to;

      CertifyOptions opt = base_options(cfg, weight);
      if (cfg.axis == "s") {
        opt.s = v;
        opt.h = HSpec::power(v);
      } else if (cfg.axis == "q") {
        opt.q = v;
      } else if (cfg.axis == "alpha") {
        opt.alpha = v;
      } else {
        opt.m = v;
      }

      std::vector<BoundReport> row;
      row.reserve(theorems.size());
      for (TheoremId id : theorems) row.push_back(certify(*f, iv, id, opt));

      out += detail::format_full(v);
      double best = std::numeric_limits<double>::infinity();
      std::string tightest = "-";
      for (std::size_t i = 0; i < row.size(); ++i) {
        out += ',' + detail::format_full(row[i].bound);
        if (row[i].hypothesis.passed && std::isfinite(row[i].bound) &&
            row[i].bound < best) {
          best = row[i].bound;
          tightest = std::string(to_string(theorems[i]));
        }
      }
      out += ',' + detail::format_full(row[actual_idx].actual_error);
      out += ',' + tightest;
      if (cfg.axis == "alpha") {
        const AmMoments mom = am_moment_integrals(v);
        out += ',' + detail::format_full(mom.left_alpha + mom.left_complement);
        out += ',' + detail::format_full(mom.right_alpha + mom.right_complement);
      }
      out += '\n';

      for (BoundReport& r : row) all_reports.push_back(std::move(r));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  if (const int rc = write_output(out, cfg.out_path); rc != 0) return rc;
  return exit_status(all_reports);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadcert: Simpson-rule quadrature with certified error bounds"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  Config eval_cfg;
  CLI::App* eval = app.add_subcommand(
      "eval", "Certify one function against one or more bounds");
  add_common_options(eval, eval_cfg);
  eval->add_option("--format", eval_cfg.format, "Output format: table, json, or csv")
      ->capture_default_str();

  Config sweep_cfg;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Vary one parameter over a range and emit a CSV matrix");
  add_common_options(sweep, sweep_cfg);
  sweep->add_option("--axis", sweep_cfg.axis, "Swept parameter: s, q, alpha, or m")
      ->required()
      ->check(CLI::IsMember({"s", "q", "alpha", "m"}));
  sweep->add_option("--from", sweep_cfg.from, "First axis value")->required();
  sweep->add_option("--to", sweep_cfg.to, "Last axis value (inclusive)")->required();
  sweep->add_option("--step", sweep_cfg.step, "Axis increment")->required();
  sweep->add_option("--format", sweep_cfg.format, "Accepted for symmetry; must be csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (eval->parsed()) return run_eval(eval, eval_cfg);
  return run_sweep(sweep, sweep_cfg);
}
