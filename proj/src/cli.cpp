#include "logmean/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "logmean/scalar_means.hpp"

namespace logmean::cli {

namespace {

void write_output(const OutputConfig& out, const Table& t, nlohmann::json meta) {
  std::string payload;
  if (out.format == Format::Csv) {
    payload = table_to_csv(t);
  } else {
    payload = table_to_json(t, std::move(meta)).dump(2);
    payload += '\n';
  }
  if (out.output_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream f(out.output_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out.output_path);
    f << payload;
  }
}

nlohmann::json base_meta() { return nlohmann::json{{"version", "logmean/1.0"}}; }

}  // namespace

std::vector<double> parse_t_grid(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4) throw std::invalid_argument("t-grid must be lo:hi:count:{log|lin}");
  const double lo = std::stod(parts[0]);
  const double hi = std::stod(parts[1]);
  const int count = std::stoi(parts[2]);
  const std::string& scale = parts[3];
  if (count < 1 || !(lo > 0.0) || !(hi >= lo))
    throw std::invalid_argument("t-grid needs 0 < lo <= hi and count >= 1");
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = lo;
    return grid;
  }
  if (scale == "log") {
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < count; ++i)
      grid[i] = std::exp(llo + (lhi - llo) * double(i) / double(count - 1));
  } else if (scale == "lin") {
    for (int i = 0; i < count; ++i) grid[i] = lo + (hi - lo) * double(i) / double(count - 1);
  } else {
    throw std::invalid_argument("t-grid scale must be 'log' or 'lin'");
  }
  return grid;
}

std::vector<double> default_t_grid() { return parse_t_grid("1e-3:1e3:61:log"); }

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

MinMResult min_m_search(double t, long long m_max) {
  if (!(t > 0.0)) throw std::domain_error("min_m_search: t must be > 0");
  if (m_max < 1) throw std::domain_error("min_m_search: m_max must be >= 1");
  const double target = lin_upper(PositivePair(t, 1.0));
  MinMResult res;
  res.target = target;
  if (beta_m(t, 1) <= target) {
    res.m = 1;
    res.found = true;
    res.beta_value = beta_m(t, 1);
    return res;
  }
  if (beta_m(t, int(std::min<long long>(m_max, INT32_MAX))) > target) return res;  // not found
  long long lo = 1, hi = m_max;  // beta(lo) > target >= beta(hi)
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    if (beta_m(t, int(mid)) <= target)
      hi = mid;
    else
      lo = mid;
  }
  res.m = hi;
  res.found = true;
  res.beta_value = beta_m(t, int(hi));
  return res;
}

MinMResult min_m_linear_scan(double t, long long m_max) {
  if (!(t > 0.0)) throw std::domain_error("min_m_linear_scan: t must be > 0");
  const double target = lin_upper(PositivePair(t, 1.0));
  MinMResult res;
  res.target = target;
  for (long long m = 1; m <= m_max; ++m) {
    const double b = beta_m(t, int(m));
    if (b <= target) {
      res.m = m;
      res.found = true;
      res.beta_value = b;
      return res;
    }
  }
  return res;
}

// table column orders are versioned; bump the version when a column moves
// eval/v1:  a,b,m,log_mean,geo_mean,arith_mean,lin_upper,polya_upper,
//           rational_lower,alpha,beta,gamma,delta
Table eval_table(const EvalConfig& cfg) {
  const PositivePair p(cfg.a, cfg.b);
  if (cfg.m < 1) throw std::invalid_argument("eval: m must be >= 1");
  const int m = cfg.m;
  Table t;
  t.columns = {"a",           "b",          "m",     "log_mean", "geo_mean",
               "arith_mean",  "lin_upper",  "polya_upper", "rational_lower",
               "alpha",       "beta",       "gamma", "delta"};
  const double beta_pair =
      (pair_power_sum(p, beta_exponents(m), 1.0) - (p.a + p.b) / 2.0) / double(m);
  const double gamma_pair = p.b * gamma_m(p.a / p.b, m);
  const double delta_pair = p.b * delta_m(p.a / p.b, m);
  t.rows.push_back({p.a, p.b, (long long)m, log_mean(p), geo_mean(p), arith_mean(p), lin_upper(p),
                    polya_upper(p), rational_lower(p), lower_sum_pair(p, m), beta_pair, gamma_pair,
                    delta_pair});
  return t;
}

// table/v1: t,m,log_mean,geo_mean,arith_mean,lin_upper,polya_upper,
//           rational_lower,alpha,beta,gamma,delta,
//           gap_geo,gap_lin,gap_polya,gap_rational,gap_alpha,gap_beta,gap_gamma,gap_delta
Table tightness_table(const TableConfig& cfg) {
  if (cfg.t_grid.empty()) throw std::invalid_argument("table: t grid must be nonempty");
  if (cfg.m_values.empty()) throw std::invalid_argument("table: m list must be nonempty");
  Table t;
  t.columns = {"t",         "m",         "log_mean",  "geo_mean",     "arith_mean",
               "lin_upper", "polya_upper", "rational_lower", "alpha",  "beta",
               "gamma",     "delta",     "gap_geo",   "gap_lin",      "gap_polya",
               "gap_rational", "gap_alpha", "gap_beta", "gap_gamma",  "gap_delta"};
  for (double tv : cfg.t_grid) {
    const PositivePair p(tv, 1.0);
    const double L = log_mean(p);
    for (int m : cfg.m_values) {
      if (m < 1) throw std::invalid_argument("table: m values must be >= 1");
      const double geo = geo_mean(p), lin = lin_upper(p), pol = polya_upper(p);
      const double rat = rational_lower(p);
      const double a = alpha_m(tv, m), b = beta_m(tv, m);
      const double g = gamma_m(tv, m), d = delta_m(tv, m);
      t.rows.push_back({tv, (long long)m, L, geo, arith_mean(p), lin, pol, rat, a, b, g, d,
                        geo - L, lin - L, pol - L, rat - L, a - L, b - L, g - L, d - L});
    }
  }
  return t;
}

// converge/v1: m,alpha_err,beta_err,alpha_order,beta_order (orders are the
// global log-log least-squares fit, repeated per row)
Table converge_table(const ConvergeConfig& cfg, double& alpha_order, double& beta_order) {
  if (!(cfg.t > 0.0)) throw std::invalid_argument("converge: t must be > 0");
  if (cfg.t == 1.0)
    throw std::invalid_argument("converge: t = 1 has zero error at every order; pick t != 1");
  if (cfg.m_max < 8) throw std::invalid_argument("converge: m-max must be >= 8");

  std::vector<int> ms;
  for (int m = 8; m <= cfg.m_max; m *= 2) ms.push_back(m);
  const double L = log_mean(PositivePair(cfg.t, 1.0));

  std::vector<double> ea, eb;
  for (int m : ms) {
    ea.push_back(std::abs(alpha_m(cfg.t, m) - L));
    eb.push_back(std::abs(beta_m(cfg.t, m) - L));
  }

  auto fit_order = [&ms](const std::vector<double>& err) {
    const size_t n = ms.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
      const double x = std::log(double(ms[i])), y = std::log(err[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    return -(double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
  };
  alpha_order = fit_order(ea);
  beta_order = fit_order(eb);

  Table t;
  t.columns = {"m", "alpha_err", "beta_err", "alpha_order", "beta_order"};
  for (size_t i = 0; i < ms.size(); ++i)
    t.rows.push_back({(long long)ms[i], ea[i], eb[i], alpha_order, beta_order});
  return t;
}

// min_m/v1: t,lin_target,min_m,beta_at_min_m,status
Table min_m_table(const MinMConfig& cfg, long long& grid_max, long long& not_found) {
  if (cfg.t_grid.empty()) throw std::invalid_argument("min-m: t grid must be nonempty");
  if (cfg.m_max < 2) throw std::invalid_argument("min-m: m-max must be >= 2");
  Table t;
  t.columns = {"t", "lin_target", "min_m", "beta_at_min_m", "status"};
  grid_max = 0;
  not_found = 0;
  for (double tv : cfg.t_grid) {
    const MinMResult r = min_m_search(tv, cfg.m_max);
    if (r.found) {
      grid_max = std::max(grid_max, r.m);
      t.rows.push_back({tv, r.target, r.m, r.beta_value, std::string("ok")});
    } else {
      not_found += 1;
      t.rows.push_back({tv, r.target, (long long)-1, 0.0,
                        std::string("not_found(m_max=") + std::to_string(cfg.m_max) + ")"});
    }
  }
  return t;
}

int cmd_eval(const EvalConfig& cfg) {
  nlohmann::json meta = base_meta();
  meta["command"] = "eval";
  write_output(cfg.out, eval_table(cfg), std::move(meta));
  return kExitOk;
}

int cmd_table(const TableConfig& cfg) {
  nlohmann::json meta = base_meta();
  meta["command"] = "table";
  meta["t_points"] = cfg.t_grid.size();
  write_output(cfg.out, tightness_table(cfg), std::move(meta));
  return kExitOk;
}

int cmd_verify(const VerifyConfig& cfg) {
  const verify::Report report = verify::run_suite(cfg.spec, cfg.trials, cfg.checks, cfg.options);

  std::string payload;
  if (cfg.out.format == Format::Csv) {
    payload = verify::report_to_csv(report);
  } else {
    payload = verify::report_to_json(report).dump(2);
    payload += '\n';
  }
  if (cfg.out.output_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream f(cfg.out.output_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + cfg.out.output_path);
    f << payload;
  }

  for (const verify::CheckAggregate& c : report.checks) {
    double worst = 0.0;
    std::string worst_label = "-";
    bool any = false;
    for (const verify::LinkAggregate& l : c.links) {
      if (l.any_evaluated && (!any || l.worst_margin < worst)) {
        worst = l.worst_margin;
        worst_label = l.label;
        any = true;
      }
    }
    std::cerr << "check " << c.id << ": " << (c.trials - c.failures) << "/" << c.trials
              << " pass, worst margin " << format_double(worst) << " @ " << worst_label << "\n";
  }
  std::cerr << (report.all_passed() ? "verify: all checks passed\n" : "verify: FAILURES\n");
  return report.all_passed() ? kExitOk : kExitVerifyFailed;
}

int cmd_converge(const ConvergeConfig& cfg) {
  double ao = 0.0, bo = 0.0;
  Table t = converge_table(cfg, ao, bo);
  nlohmann::json meta = base_meta();
  meta["command"] = "converge";
  meta["t"] = cfg.t;
  meta["alpha_order"] = ao;
  meta["beta_order"] = bo;
  write_output(cfg.out, t, std::move(meta));
  std::cerr << "converge: alpha order " << format_double(ao) << ", beta order "
            << format_double(bo) << "\n";
  return kExitOk;
}

int cmd_min_m(const MinMConfig& cfg) {
  long long grid_max = 0, not_found = 0;
  Table t = min_m_table(cfg, grid_max, not_found);
  nlohmann::json meta = base_meta();
  meta["command"] = "min-m";
  meta["m_max"] = cfg.m_max;
  meta["grid_max_min_m"] = grid_max;
  meta["not_found_count"] = not_found;
  write_output(cfg.out, t, std::move(meta));
  std::cerr << "min-m: grid max " << grid_max;
  if (not_found > 0) std::cerr << ", " << not_found << " grid points not found below m_max";
  std::cerr << "\n";
  return kExitOk;
}

}  // namespace logmean::cli
