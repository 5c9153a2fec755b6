// logmean command-line front end.
#include <CLI11.hpp>
#include <iostream>

#include "logmean/cli.hpp"

namespace {

using namespace logmean;

cli::Format parse_format(const std::string& s) {
  if (s == "csv") return cli::Format::Csv;
  if (s == "json") return cli::Format::Json;
  throw CLI::ValidationError("--format", "must be 'csv' or 'json'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"logarithmic-mean bounds, matrix mean maps and inequality verification"};
  app.require_subcommand(1);

  std::string format = "csv";
  std::string output;
  app.add_option("--format", format, "output format: csv or json")->capture_default_str();
  app.add_option("--output", output, "output path (default: stdout)");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate all means and bounds at one point");
  double opt_t = 0.0, opt_a = 0.0, opt_b = 0.0;
  int opt_m = 1;
  auto* eval_t = eval->add_option("--t", opt_t, "evaluate at (t, 1)");
  auto* eval_a = eval->add_option("--a", opt_a, "first argument");
  auto* eval_b = eval->add_option("--b", opt_b, "second argument");
  eval->add_option("--m", opt_m, "sum-family order")->capture_default_str();
  eval_t->excludes(eval_a)->excludes(eval_b);
  eval_a->needs(eval_b);

  // table
  auto* table = app.add_subcommand("table", "tightness table over a t grid");
  std::string table_grid;
  std::string table_ms;
  table->add_option("--t-grid", table_grid, "grid spec lo:hi:count:{log|lin}");
  table->add_option("--m", table_ms, "comma-separated m values (default 1,2,3,5,10,32)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run seeded inequality checks");
  cli::VerifyConfig vcfg;
  int verify_dim = 0;
  std::string verify_checks;
  double eig_lo = 1e-3, eig_hi = 1e3;
  verify_cmd->add_option("--seed", vcfg.spec.seed, "suite seed")->capture_default_str();
  verify_cmd->add_option("--trials", vcfg.trials, "trials per check")->capture_default_str();
  verify_cmd->add_option("--dim", verify_dim, "fixed matrix dimension (default: sweep 1..8)");
  verify_cmd->add_option("--eig-lo", eig_lo, "eigenvalue range low end")->capture_default_str();
  verify_cmd->add_option("--eig-hi", eig_hi, "eigenvalue range high end")->capture_default_str();
  verify_cmd->add_option("--checks", verify_checks, "comma-separated check ids (default: all)");
  verify_cmd->add_option("--tol-scalar", vcfg.options.tol_scalar, "scalar tolerance coefficient")
      ->capture_default_str();
  verify_cmd->add_option("--tol-matrix", vcfg.options.tol_matrix, "matrix tolerance coefficient")
      ->capture_default_str();

  // converge
  auto* converge = app.add_subcommand("converge", "error decay of the sum families");
  cli::ConvergeConfig ccfg;
  converge->add_option("--t", ccfg.t, "evaluation point, t != 1")->required();
  converge->add_option("--m-max", ccfg.m_max, "largest order (doubling from 8)")
      ->capture_default_str();

  // min-m
  auto* minm = app.add_subcommand("min-m", "least m with beta_m(t) <= the cube-root upper bound");
  cli::MinMConfig mcfg;
  std::string minm_grid;
  minm->add_option("--t-grid", minm_grid, "grid spec lo:hi:count:{log|lin}");
  minm->add_option("--m-max", mcfg.m_max, "search ceiling")->capture_default_str();

  // let the global --format/--output appear after a subcommand as well
  for (CLI::App* sub : {eval, table, verify_cmd, converge, minm}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitUsage;
  }

  try {
    cli::OutputConfig out{parse_format(format), output};
    if (*eval) {
      cli::EvalConfig cfg;
      if (*eval_t) {
        cfg.a = opt_t;
        cfg.b = 1.0;
      } else if (*eval_a) {
        cfg.a = opt_a;
        cfg.b = opt_b;
      } else {
        std::cerr << "eval: need --t or --a/--b\n";
        return cli::kExitUsage;
      }
      cfg.m = opt_m;
      cfg.out = out;
      return cli::cmd_eval(cfg);
    }
    if (*table) {
      cli::TableConfig cfg;
      cfg.t_grid = table_grid.empty() ? cli::default_t_grid() : cli::parse_t_grid(table_grid);
      if (!table_ms.empty()) cfg.m_values = cli::parse_int_list(table_ms);
      cfg.out = out;
      return cli::cmd_table(cfg);
    }
    if (*verify_cmd) {
      if (verify_dim != 0) {
        vcfg.spec.dim_lo = verify_dim;
        vcfg.spec.dim_hi = verify_dim;
      }
      vcfg.spec.eig_lo = eig_lo;
      vcfg.spec.eig_hi = eig_hi;
      if (!verify_checks.empty()) {
        vcfg.checks.clear();
        std::stringstream ss(verify_checks);
        std::string item;
        while (std::getline(ss, item, ',')) vcfg.checks.push_back(item);
      }
      vcfg.out = out;
      return cli::cmd_verify(vcfg);
    }
    if (*converge) {
      ccfg.out = out;
      return cli::cmd_converge(ccfg);
    }
    if (*minm) {
      mcfg.t_grid = minm_grid.empty() ? cli::default_t_grid() : cli::parse_t_grid(minm_grid);
      mcfg.out = out;
      return cli::cmd_min_m(mcfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitUsage;
  }
  return cli::kExitUsage;
}
