// Seeded random-instance generation and the catalog of named inequality
// checks.  Each check evaluates one inequality chain and reports signed
// per-link margins; run_suite aggregates them into a deterministic Report.
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logmean/matrix_core.hpp"
#include "logmean/scalar_means.hpp"
#include "logmean/table.hpp"

namespace logmean::verify {

// Deterministic, platform-independent generator (splitmix64 core).
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}
  uint64_t next();
  double uniform01();  // [0, 1)
  double log_uniform(double lo, double hi);
  long long uniform_int(long long lo, long long hi);  // inclusive
  double gaussian();                                   // Box-Muller
  std::complex<double> gaussian_complex();

 private:
  uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b = 0);

struct InstanceSpec {
  uint64_t seed = 0;
  int dim_lo = 1;
  int dim_hi = 8;
  double eig_lo = 1e-3;
  double eig_hi = 1e3;
  bool require_pd = false;
  enum class XKind { GaussianComplex, Identity, RankOne } x_kind = XKind::GaussianComplex;

  void validate() const;
};

struct MeanTriple {
  HermitianPSD A;
  HermitianPSD B;
  ComplexMatrix X;
  uint64_t fingerprint = 0;
};

// A, B = Q diag(lambda) Q* with Q from the QR of a seeded complex Gaussian
// matrix and lambda log-uniform in [eig_lo, eig_hi]; X per x_kind.
// Deterministic given the spec.
MeanTriple gen_instance(const InstanceSpec& spec);

struct LinkResult {
  std::string label;
  double margin = 0.0;     // raw signed margin, recorded before the tolerance test
  double tolerance = 0.0;  // pass iff margin >= -tolerance
  bool pass = true;
  bool skipped = false;  // sample not evaluable (e.g. overflow to inf)
};

struct CheckResult {
  std::string check_id;
  std::vector<LinkResult> links;
  uint64_t instance_fingerprint = 0;
  bool passed = true;

  void add_link(const std::string& label, double margin, double tolerance);
  void add_skipped(const std::string& label);
  void merge(const CheckResult& other, const std::string& label_prefix);
};

enum class UpperEndpoint { AXplusXB, AXplusBX };

struct VerifyOptions {
  double tol_scalar = 1e-12;   // scalar links: tol_scalar * max(a,b)
  double tol_matrix = 1e-9;    // Frobenius links: tol_matrix * ||X||_F * max(1,||A||_F,||B||_F)
  double tol_loewner = 1e-9;   // Loewner links: tol_loewner * max(1, ||RHS||_F)
  double tol_lemma = 1e-9;     // absolute, after magnitude normalization
  std::vector<int> lower_sweep = {1, 2, 3, 5, 10, 32};
  std::vector<int> upper_sweep = {2, 3, 5, 10, 32};
  UpperEndpoint upper_end = UpperEndpoint::AXplusXB;
};

// --- scalar chains ---------------------------------------------------------
CheckResult check_scalar_bounds(const PositivePair& p, double tol_scalar = 1e-12);
CheckResult check_scalar_chain_lemma1(const PositivePair& p, double tol_scalar = 1e-12);
CheckResult check_scalar_lower_chain(const PositivePair& p, int m, double tol_scalar = 1e-12);
CheckResult check_scalar_upper_chain(const PositivePair& p, int m, double tol_scalar = 1e-12);
CheckResult check_rational_bounds(const PositivePair& p, double tol_scalar = 1e-12);

// --- lemma sign checks (margins normalized by term magnitude) --------------
CheckResult check_lemma2(double x, int u, int v, int w, double tol = 1e-9);
CheckResult check_lemma3(double x, int m, double tol = 1e-9);
CheckResult check_lemma5(double x, int m, double tol = 1e-9);
CheckResult check_induction(double t, int m, double tol = 1e-9);

// --- sum-family properties --------------------------------------------------
CheckResult check_appendix_mono(double t, int m, double tol_scalar = 1e-12);
CheckResult check_appendix_riemann(double t, int m, double tol_scalar = 1e-12);
CheckResult check_appendix_props(double t, int m, double tol_scalar = 1e-12);

// --- Frobenius-norm chains ---------------------------------------------------
CheckResult check_frobenius_zou(const MeanTriple& tr, double tol_matrix = 1e-9);
CheckResult check_frobenius_refined_upper(const MeanTriple& tr, double tol_matrix = 1e-9);
CheckResult check_frobenius_lower_chain(const MeanTriple& tr, int m, double tol_matrix = 1e-9);
CheckResult check_frobenius_upper_chain(const MeanTriple& tr, int m, double tol_matrix = 1e-9,
                                        UpperEndpoint endpoint = UpperEndpoint::AXplusXB);
CheckResult check_hk_lower(const MeanTriple& tr, int m, double tol_matrix = 1e-9);
CheckResult check_hk_upper(const MeanTriple& tr, int m, double tol_matrix = 1e-9);
CheckResult check_hk_chains(const MeanTriple& tr, int m, double tol_matrix = 1e-9);

// --- Loewner-order chains on weighted geometric means ------------------------
CheckResult check_geomean_prop41(const HermitianPSD& A, const HermitianPSD& B, double tol = 1e-9);
CheckResult check_geomean_prop42(const HermitianPSD& A, const HermitianPSD& B, int m,
                                 double tol = 1e-9);
CheckResult check_geomean_prop43(const HermitianPSD& A, const HermitianPSD& B, int m,
                                 double tol = 1e-9);
CheckResult check_geomean_prop44(const HermitianPSD& A, const HermitianPSD& B, double tol = 1e-9);

// --- catalog -----------------------------------------------------------------
enum class CheckKind { ScalarPair, AppendixTM, LemmaSample, MatrixTriple, PdPair };

struct CheckDef {
  std::string id;
  std::string statement;  // the inequality in ASCII math; hashed for coverage tests
  CheckKind kind;
  double max_condition;  // 0 = unrestricted eigenvalue range
};

const std::vector<CheckDef>& check_catalog();
uint64_t statement_hash(const CheckDef& def);
std::vector<std::string> all_check_ids();
// expands aliases ("all", "hk_chains"); throws std::invalid_argument on unknown ids
std::vector<std::string> resolve_check_ids(const std::vector<std::string>& requested);

// --- suite -------------------------------------------------------------------
struct LinkAggregate {
  std::string label;
  long long trials = 0;
  long long failures = 0;
  long long skipped = 0;
  double worst_margin = 0.0;  // min raw margin over evaluated trials
  double tolerance_at_worst = 0.0;
  uint64_t worst_fingerprint = 0;
  bool any_evaluated = false;
};

struct CheckAggregate {
  std::string id;
  long long trials = 0;
  long long failures = 0;
  std::vector<LinkAggregate> links;
  std::vector<uint64_t> failing_fingerprints;  // capped at 16
};

struct Report {
  InstanceSpec spec;
  long long trials = 0;
  VerifyOptions options;
  std::vector<std::string> check_ids;
  std::vector<CheckAggregate> checks;
  std::map<std::string, long long> observations;

  bool all_passed() const;
  long long total_failures() const;
};

// Runs each named check on independently seeded instances (per-trial seed =
// splitmix mix of suite seed, trial index and check id).  A failing or
// throwing check never aborts the batch.
Report run_suite(const InstanceSpec& spec, long long trials,
                 const std::vector<std::string>& checks, const VerifyOptions& opt = {});

Table report_table(const Report& r);
std::string report_to_csv(const Report& r);
nlohmann::json report_to_json(const Report& r);

}  // namespace logmean::verify
