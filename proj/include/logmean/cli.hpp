// Command implementations behind the logmean CLI; kept in the library so the
// test suite can drive them directly.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "logmean/table.hpp"
#include "logmean/verify.hpp"

namespace logmean::cli {

enum class Format { Csv, Json };

// exit-status contract: 0 success, 1 usage error, 2 verification failure
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerifyFailed = 2;

struct OutputConfig {
  Format format = Format::Csv;
  std::string output_path;  // empty = stdout
};

// "lo:hi:count:log" or "lo:hi:count:lin"; count >= 1, lo <= hi, lo > 0 for log
std::vector<double> parse_t_grid(const std::string& s);
std::vector<double> default_t_grid();  // 61 log-spaced points in [1e-3, 1e3]
std::vector<int> parse_int_list(const std::string& s);  // "1,2,3"

struct EvalConfig {
  double a = 0.0;
  double b = 0.0;
  int m = 1;
  OutputConfig out;
};

struct TableConfig {
  std::vector<double> t_grid;
  std::vector<int> m_values = {1, 2, 3, 5, 10, 32};
  OutputConfig out;
};

struct VerifyConfig {
  verify::InstanceSpec spec;
  long long trials = 100;
  std::vector<std::string> checks = {"all"};
  verify::VerifyOptions options;
  OutputConfig out;
};

struct ConvergeConfig {
  double t = 0.0;
  int m_max = 64;  // doubling sequence 8, 16, ..., m_max
  OutputConfig out;
};

struct MinMConfig {
  std::vector<double> t_grid;
  long long m_max = 1000000;
  OutputConfig out;
};

struct MinMResult {
  long long m = -1;  // -1 when not found up to m_max
  bool found = false;
  double beta_value = 0.0;
  double target = 0.0;  // lin_upper(t, 1)
};

// least m in [1, m_max] with beta_m(t) <= lin_upper(t,1); binary search is
// valid because beta_m is non-increasing in m
MinMResult min_m_search(double t, long long m_max);
MinMResult min_m_linear_scan(double t, long long m_max);  // independent route for tests

Table eval_table(const EvalConfig& cfg);
Table tightness_table(const TableConfig& cfg);
Table converge_table(const ConvergeConfig& cfg, double& alpha_order, double& beta_order);
Table min_m_table(const MinMConfig& cfg, long long& grid_max, long long& not_found);

int cmd_eval(const EvalConfig& cfg);
int cmd_table(const TableConfig& cfg);
int cmd_verify(const VerifyConfig& cfg);
int cmd_converge(const ConvergeConfig& cfg);
int cmd_min_m(const MinMConfig& cfg);

}  // namespace logmean::cli
