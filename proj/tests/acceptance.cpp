// Acceptance suite: every release-gating property, one pass/fail line each.
// Usage: acceptance [--cli PATH]   (PATH enables the end-to-end CLI checks)
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "logmean/cli.hpp"
#include "logmean/oracle.hpp"
#include "logmean/scalar_means.hpp"
#include "logmean/verify.hpp"

using namespace logmean;
namespace lv = logmean::verify;

namespace {

int g_failures = 0;
int g_index = 0;

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<bool(std::string&)> body;
};

void run(const Criterion& c) {
  ++g_index;
  std::string detail;
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = c.body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (ok && c.budget_seconds > 0 && secs > c.budget_seconds) {
    ok = false;
    detail += " [runtime over budget]";
  }
  if (!ok) ++g_failures;
  std::printf("[%s] %d. %s (%.2fs%s%s)\n", ok ? "PASS" : "FAIL", g_index, c.name.c_str(), secs,
              detail.empty() ? "" : "; ", detail.c_str());
  std::fflush(stdout);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

double rel_gap(double x, double y) {
  return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)});
}

// ----------------------------------------------------------------------------

bool scalar_chain_suite(std::string& detail) {
  lv::Rng rng(1001);
  const std::vector<int> sweep = {1, 2, 3, 5, 10, 32};
  long long links = 0;
  double worst = 1e300;
  for (int trial = 0; trial < 10000; ++trial) {
    const double a = rng.log_uniform(1e-3, 1e3);
    const double b = rng.log_uniform(1e-3, 1e3);
    const PositivePair p(a, b);
    const double tol = 1e-12 * std::max(a, b);
    const double L = log_mean(p);

    const double chain_margins[] = {
        L - geo_mean(p),                      // geo <= L
        lin_upper(p) - L,                     // L <= lin
        polya_upper(p) - lin_upper(p),        // lin <= polya
        rational_lower(p) - geo_mean(p),      // geo <= rational
        L - rational_lower(p),                // rational <= L
    };
    for (double m : chain_margins) {
      ++links;
      worst = std::min(worst, m);
      if (!(m >= -tol)) {
        detail = "fixed-chain link failed at a=" + format_double(a) + " b=" + format_double(b);
        return false;
      }
    }
    for (int m : sweep) {
      const double mid = mid_sum_pair(p, m);
      const double low = lower_sum_pair(p, m);
      double margins[6] = {mid - geo_mean(p), low - mid, L - low, 0, 0, 0};
      int count = 3;
      if (m >= 2) {
        const double beta =
            (pair_power_sum(p, beta_exponents(m), 1.0) - (a + b) / 2.0) / double(m);
        const double up = upper_sum_pair(p, m);
        margins[3] = beta - L;
        margins[4] = up - beta;
        margins[5] = arith_mean(p) - up;
        count = 6;
      }
      for (int i = 0; i < count; ++i) {
        ++links;
        worst = std::min(worst, margins[i]);
        if (!(margins[i] >= -tol)) {
          detail = "sum-chain link failed at a=" + format_double(a) + " b=" + format_double(b) +
                   " m=" + std::to_string(m);
          return false;
        }
      }
    }
  }
  detail = std::to_string(links) + " links over 10000 pairs, worst margin " + format_double(worst);
  return true;
}

bool lemma_grid_suite(std::string& detail) {
  long long evaluated = 0, skipped = 0;
  double worst = 1e300;
  auto note = [&](const lv::CheckResult& r) {
    for (const lv::LinkResult& l : r.links) {
      if (l.skipped) {
        ++skipped;
      } else {
        ++evaluated;
        worst = std::min(worst, l.margin);
      }
    }
    return r.passed;
  };
  for (int gi = 0; gi <= 40; ++gi) {
    const double x = std::pow(10.0, -3.0 + 6.0 * double(gi) / 40.0);
    for (int u = 0; u <= 12; ++u)
      for (int v = 0; v <= 12; ++v)
        for (int w = u; w <= 12; ++w)
          if (!note(lv::check_lemma2(x, u, v, w))) {
            detail = "lemma2 failed at x=" + format_double(x);
            return false;
          }
    for (int m = 1; m <= 10; ++m)
      if (!note(lv::check_lemma3(x, m))) {
        detail = "lemma3 failed at x=" + format_double(x) + " m=" + std::to_string(m);
        return false;
      }
    for (int m = 2; m <= 10; ++m)
      if (!note(lv::check_lemma5(x, m)) || !note(lv::check_induction(x, m))) {
        detail = "lemma5/induction failed at x=" + format_double(x) + " m=" + std::to_string(m);
        return false;
      }
  }
  detail = std::to_string(evaluated) + " samples evaluated, " + std::to_string(skipped) +
           " overflow samples skipped, worst normalized margin " + format_double(worst);
  return true;
}

bool matrix_frobenius_suite(std::string& detail) {
  lv::InstanceSpec spec;
  spec.seed = 42;
  spec.dim_lo = 1;
  spec.dim_hi = 8;
  spec.eig_lo = 1e-3;
  spec.eig_hi = 1e3;
  const lv::Report r = lv::run_suite(
      spec, 1000, {"zou", "refined_upper", "lower_chain", "upper_chain", "hk_chains"});
  if (!r.all_passed()) {
    detail = std::to_string(r.total_failures()) + " failing trials";
    return false;
  }
  detail = "1000 triples x 6 chain checks, 0 failures";
  return true;
}

bool loewner_suite(std::string& detail) {
  lv::InstanceSpec spec;
  spec.seed = 4242;
  spec.dim_lo = 1;
  spec.dim_hi = 8;
  spec.eig_lo = 1e-2;  // the catalog additionally caps the condition number at 1e4
  spec.eig_hi = 1e2;
  const lv::Report r =
      lv::run_suite(spec, 500, {"props_41", "props_42", "props_43", "props_44"});
  if (!r.all_passed()) {
    detail = std::to_string(r.total_failures()) + " failing trials";
    return false;
  }
  detail = "500 PD pairs x 4 chains, 0 failures";
  return true;
}

bool oracle_equivalence(std::string& detail) {
  const oracle::QuadratureRule gl64 = oracle::QuadratureRule::gauss_legendre(64);
  double worst_map = 0.0, worst_geo = 0.0;
  for (uint64_t seed = 1; seed <= 200; ++seed) {
    lv::InstanceSpec spec;
    spec.seed = seed;
    spec.dim_lo = 1;
    spec.dim_hi = 6;
    spec.eig_lo = 1e-3;
    spec.eig_hi = 1e3;
    const lv::MeanTriple tr = lv::gen_instance(spec);
    const double scale = frobenius_norm(tr.X) * std::max({1.0, frobenius_norm(tr.A.matrix()),
                                                          frobenius_norm(tr.B.matrix())});
    const double gap = frobenius_norm(log_mean_map(tr.A, tr.B, tr.X) -
                                      oracle::quad_matrix_integral(tr.A, tr.B, tr.X, gl64)) /
                       scale;
    worst_map = std::max(worst_map, gap);
    if (gap > 1e-8) {
      detail = "log_mean_map vs quadrature gap " + format_double(gap);
      return false;
    }

    lv::InstanceSpec pd = spec;
    pd.eig_lo = 1e-3;
    pd.eig_hi = 1e3;
    pd.require_pd = true;
    const lv::MeanTriple pr = lv::gen_instance(pd);
    const double gscale =
        std::max({1.0, frobenius_norm(pr.A.matrix()), frobenius_norm(pr.B.matrix())});
    const double ggap = frobenius_norm(integral_geomean(pr.A, pr.B).matrix() -
                                       oracle::quad_geomean_integral(pr.A, pr.B, gl64)) /
                        gscale;
    worst_geo = std::max(worst_geo, ggap);
    if (ggap > 1e-8) {
      detail = "integral_geomean vs quadrature gap " + format_double(ggap);
      return false;
    }
  }

  lv::Rng rng(5150);
  for (int i = 0; i < 2000; ++i) {
    const double t = rng.log_uniform(1e-3, 1e3);
    const int m = int(rng.uniform_int(1, 64));
    const double a = alpha_m(t, m), ba = oracle::brute_sum(oracle::SumKind::Alpha, t, m);
    const double b = beta_m(t, m), bb = oracle::brute_sum(oracle::SumKind::Beta, t, m);
    if (rel_gap(a, ba) > 1e-12 || rel_gap(b, bb) > 1e-12) {
      detail = "closed form vs brute sum mismatch at t=" + format_double(t) +
               " m=" + std::to_string(m);
      return false;
    }
  }
  detail = "200 instances; worst map gap " + format_double(worst_map) + ", worst geomean gap " +
           format_double(worst_geo) + "; 2000 brute-sum comparisons";
  return true;
}

bool appendix_suite(std::string& detail) {
  lv::Rng rng(6001);
  for (int i = 0; i < 10000; ++i) {
    const double t = rng.log_uniform(1e-3, 1e3);
    const int m = int(rng.uniform_int(1, 32));
    if (!lv::check_appendix_mono(t, m).passed || !lv::check_appendix_riemann(t, m).passed) {
      detail = "failed at t=" + format_double(t) + " m=" + std::to_string(m);
      return false;
    }
  }
  for (double t : {0.1, 0.5, 2.0, 10.0}) {
    const double L = log_mean(PositivePair(t, 1.0));
    double sx = 0, sya = 0, syb = 0, sxx = 0, sxya = 0, sxyb = 0;
    int n = 0;
    for (int m : {8, 16, 32, 64}) {
      const double x = std::log(double(m));
      const double ya = std::log(std::abs(alpha_m(t, m) - L));
      const double yb = std::log(std::abs(beta_m(t, m) - L));
      sx += x;
      sxx += x * x;
      sya += ya;
      syb += yb;
      sxya += x * ya;
      sxyb += x * yb;
      ++n;
    }
    const double oa = -(n * sxya - sx * sya) / (n * sxx - sx * sx);
    const double ob = -(n * sxyb - sx * syb) / (n * sxx - sx * sx);
    if (oa < 1.8 || oa > 2.2 || ob < 1.8 || ob > 2.2) {
      detail = "slope out of range at t=" + format_double(t) + ": alpha " + format_double(oa) +
               ", beta " + format_double(ob);
      return false;
    }
  }
  detail = "10000 monotonicity/ordering samples; slopes in [1.8,2.2] at all four fit points";
  return true;
}

bool dim1_reduction(std::string& detail) {
  const auto margins_of = [](const lv::CheckResult& r) {
    std::vector<double> v;
    for (const auto& l : r.links) v.push_back(l.margin);
    return v;
  };
  const std::vector<double> zou_exps = {0.5, 0.5, 0.5, 0.5, 1.0, 0.0};
  const std::vector<double> cube_exps = {1.0,       1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0,
                                         2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 0.0};
  double worst = 0.0;
  for (uint64_t seed = 1; seed <= 200; ++seed) {
    lv::InstanceSpec spec;
    spec.seed = seed;
    spec.dim_lo = spec.dim_hi = 1;
    spec.x_kind = lv::InstanceSpec::XKind::Identity;
    const lv::MeanTriple tr = lv::gen_instance(spec);
    const double a = tr.A.eigenvalues()(0);
    const double b = tr.B.eigenvalues()(0);
    const PositivePair p(a, b);
    const double L = log_mean(p);

    std::vector<std::pair<double, double>> pairs;  // (matrix margin, scalar margin)
    const double zs = pair_power_sum(p, zou_exps, 0.5) / 3.0;
    const double cs = pair_power_sum(p, cube_exps, 1.0 / 8.0);
    pairs.emplace_back(margins_of(lv::check_frobenius_zou(tr))[0], zs - L);
    const auto ru = margins_of(lv::check_frobenius_refined_upper(tr));
    pairs.emplace_back(ru[0], cs - L);
    pairs.emplace_back(ru[1], zs - cs);
    for (int m : {1, 2, 3, 5, 10, 32}) {
      const auto lo = margins_of(lv::check_frobenius_lower_chain(tr, m));
      const double mid = mid_sum_pair(p, m), low = lower_sum_pair(p, m);
      pairs.emplace_back(lo[0], L - low);
      pairs.emplace_back(lo[1], low - mid);
      pairs.emplace_back(lo[2], mid - geo_mean(p));
      const auto hl = margins_of(lv::check_hk_lower(tr, m));
      pairs.emplace_back(hl[0], L - mid);
      pairs.emplace_back(hl[1], mid - geo_mean(p));
      if (m >= 2) {
        const auto up = margins_of(lv::check_frobenius_upper_chain(tr, m));
        const double bf =
            (pair_power_sum(p, beta_exponents(m), 1.0) - (a + b) / 2.0) / double(m);
        const double us = upper_sum_pair(p, m);
        pairs.emplace_back(up[0], bf - L);
        pairs.emplace_back(up[1], us - bf);
        pairs.emplace_back(up[2], arith_mean(p) - us);
        const auto hu = margins_of(lv::check_hk_upper(tr, m));
        pairs.emplace_back(hu[0], us - L);
        pairs.emplace_back(hu[1], arith_mean(p) - us);
      }
    }

    // the Loewner chains at dim 1 are the scalar chains on (b, a): the
    // geometric-mean weight sits on B, so A#_e B = a^(1-e) b^e
    const PositivePair q(b, a);
    const double Lq = log_mean(q);
    const auto p41 = margins_of(lv::check_geomean_prop41(tr.A, tr.B));
    pairs.emplace_back(p41[0], lin_upper(q) - Lq);
    pairs.emplace_back(p41[1], (arith_mean(q) / 2.0 + geo_mean(q)) - lin_upper(q));
    for (int m : {1, 2, 3, 5, 10, 32}) {
      const auto g42 = margins_of(lv::check_geomean_prop42(tr.A, tr.B, m));
      const double mid = mid_sum_pair(q, m), low = lower_sum_pair(q, m);
      pairs.emplace_back(g42[0], Lq - low);
      pairs.emplace_back(g42[1], low - mid);
      pairs.emplace_back(g42[2], mid - geo_mean(q));
      if (m >= 2) {
        const auto g43 = margins_of(lv::check_geomean_prop43(tr.A, tr.B, m));
        const double bf =
            (pair_power_sum(q, beta_exponents(m), 1.0) - (a + b) / 2.0) / double(m);
        const double us = upper_sum_pair(q, m);
        pairs.emplace_back(g43[0], bf - Lq);
        pairs.emplace_back(g43[1], us - bf);
        pairs.emplace_back(g43[2], arith_mean(q) - us);
      }
    }
    const auto g44 = margins_of(lv::check_geomean_prop44(tr.A, tr.B));
    const double g13 = std::pow(a, 2.0 / 3.0) * std::pow(b, 1.0 / 3.0);
    const double g23 = std::pow(a, 1.0 / 3.0) * std::pow(b, 2.0 / 3.0);
    const double bridge = g23 - g13 + 2.0 / (1.0 / g13 + 1.0 / a);
    pairs.emplace_back(g44[0], Lq - bridge);
    pairs.emplace_back(g44[1], bridge - geo_mean(q));

    for (const auto& [mm, sm] : pairs) {
      worst = std::max(worst, std::abs(mm - sm));
      if (std::abs(mm - sm) > 1e-12) {
        detail = "margin mismatch " + format_double(std::abs(mm - sm)) +
                 " at seed=" + std::to_string(seed);
        return false;
      }
    }
  }
  detail = "200 dim-1 instances, all checks, worst |matrix - scalar| margin gap " +
           format_double(worst);
  return true;
}

bool determinism(std::string& detail, const std::string& cli_path) {
  lv::InstanceSpec spec;
  spec.seed = 42;
  const lv::Report r1 = lv::run_suite(spec, 100, {"all"});
  const lv::Report r2 = lv::run_suite(spec, 100, {"all"});
  if (lv::report_to_csv(r1) != lv::report_to_csv(r2) ||
      lv::report_to_json(r1).dump() != lv::report_to_json(r2).dump()) {
    detail = "in-process reports differ";
    return false;
  }
  if (!r1.all_passed()) {
    detail = "suite reported failures";
    return false;
  }
  if (cli_path.empty()) {
    detail = "in-process double run byte-identical (no CLI path given)";
    return true;
  }
  const std::string f1 = "acc_verify_1.csv", f2 = "acc_verify_2.csv";
  for (const std::string& f : {f1, f2}) {
    const std::string cmd = "'" + cli_path + "' verify --seed 42 --trials 100 --output " + f +
                            " >/dev/null 2>/dev/null";
    if (std::system(cmd.c_str()) != 0) {
      detail = "CLI run failed";
      return false;
    }
  }
  const bool same = slurp(f1) == slurp(f2) && !slurp(f1).empty();
  std::remove(f1.c_str());
  std::remove(f2.c_str());
  if (!same) {
    detail = "CLI report files differ";
    return false;
  }
  detail = "in-process and CLI double runs byte-identical";
  return true;
}

bool min_m_suite(std::string& detail) {
  long long scanned = 0;
  for (double t : cli::parse_t_grid("1e-3:1e3:21:log")) {
    const cli::MinMResult bs = cli::min_m_search(t, 1000000);
    const cli::MinMResult ls = cli::min_m_linear_scan(t, 1000000);
    ++scanned;
    if (bs.found != ls.found || bs.m != ls.m) {
      detail = "binary/linear disagreement at t=" + format_double(t);
      return false;
    }
  }
  const cli::MinMResult r4 = cli::min_m_search(4.0, 1000000);
  if (!r4.found || r4.m != 18) {
    detail = "t=4 fixture mismatch: got " + std::to_string(r4.m) + ", expected 18";
    return false;
  }
  detail = "binary == linear on all 21 grid points; t=4 minimal m = 18";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli_path;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") cli_path = argv[i + 1];

  run({"scalar chain suite: 10000 pairs, all bound chains, margins >= -1e-12*max(a,b)", 5.0,
       scalar_chain_suite});
  run({"lemma grid suite: exhaustive sign checks, normalized tolerance 1e-9", 5.0,
       lemma_grid_suite});
  run({"matrix Frobenius suite: 1000 triples, all norm chains at 1e-9 scale-relative", 60.0,
       matrix_frobenius_suite});
  run({"Loewner suite: 500 PD pairs, geometric-mean chains at 1e-9", 30.0, loewner_suite});
  run({"oracle equivalence: quadrature 1e-8, brute sums 1e-12", 0.0, oracle_equivalence});
  run({"sum-family suite: monotonicity, ordering, Riemann branches, convergence order", 0.0,
       appendix_suite});
  run({"dim-1 reduction: matrix margins equal scalar margins to 1e-12", 0.0, dim1_reduction});
  run({"determinism: repeated seeded runs are byte-identical", 0.0,
       [&cli_path](std::string& d) { return determinism(d, cli_path); }});
  run({"min-m search: binary equals linear scan; t=4 fixture", 0.0, min_m_suite});

  if (g_failures == 0) {
    std::printf("acceptance: all %d criteria passed\n", g_index);
    return 0;
  }
  std::printf("acceptance: %d of %d criteria FAILED\n", g_failures, g_index);
  return 1;
}
