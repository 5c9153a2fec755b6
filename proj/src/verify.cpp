#include "logmean/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace logmean::verify {

// ---------------------------------------------------------------------------
// rng

uint64_t Rng::next() {
  uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Rng::uniform01() { return double(next() >> 11) * 0x1.0p-53; }

double Rng::log_uniform(double lo, double hi) {
  return std::exp(std::log(lo) + uniform01() * (std::log(hi) - std::log(lo)));
}

long long Rng::uniform_int(long long lo, long long hi) {
  return lo + (long long)(next() % (uint64_t)(hi - lo + 1));
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 in (0,1]
  const double u1 = double((next() >> 11) + 1) * 0x1.0p-53;
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double th = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(th);
  has_spare_ = true;
  return r * std::cos(th);
}

std::complex<double> Rng::gaussian_complex() {
  const double re = gaussian();
  const double im = gaussian();
  return {re, im};
}

uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b) {
  uint64_t h = fnv1a64(&seed, sizeof seed);
  h = fnv1a64(&a, sizeof a, h);
  h = fnv1a64(&b, sizeof b, h);
  Rng r(h);
  return r.next();
}

// ---------------------------------------------------------------------------
// instances

void InstanceSpec::validate() const {
  if (!(eig_lo > 0.0) || !(eig_hi >= eig_lo))
    throw std::invalid_argument("InstanceSpec: need 0 < eig_lo <= eig_hi");
  if (dim_lo < 1 || dim_hi < dim_lo || dim_hi > 16)
    throw std::invalid_argument("InstanceSpec: need 1 <= dim_lo <= dim_hi <= 16");
}

namespace {

uint64_t hash_matrix(const ComplexMatrix& M, uint64_t h) {
  for (Eigen::Index j = 0; j < M.cols(); ++j)
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
      const double re = M(i, j).real(), im = M(i, j).imag();
      h = fnv1a64(&re, sizeof re, h);
      h = fnv1a64(&im, sizeof im, h);
    }
  return h;
}

ComplexMatrix random_gaussian_matrix(Rng& rng, int n) {
  ComplexMatrix G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = rng.gaussian_complex();
  return G;
}

HermitianPSD random_psd(Rng& rng, int n, const InstanceSpec& spec) {
  const ComplexMatrix G = random_gaussian_matrix(rng, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(G);
  ComplexMatrix Q = qr.householderQ();
  Eigen::VectorXd lam(n);
  for (int i = 0; i < n; ++i) {
    double v = rng.log_uniform(spec.eig_lo, spec.eig_hi);
    if (spec.require_pd) v = std::max(v, spec.eig_lo);
    lam(i) = v;
  }
  return HermitianPSD(Q * lam.asDiagonal() * Q.adjoint());
}

}  // namespace

MeanTriple gen_instance(const InstanceSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const int n = spec.dim_lo == spec.dim_hi
                    ? spec.dim_lo
                    : int(rng.uniform_int(spec.dim_lo, spec.dim_hi));

  HermitianPSD A = random_psd(rng, n, spec);
  HermitianPSD B = random_psd(rng, n, spec);

  ComplexMatrix X;
  switch (spec.x_kind) {
    case InstanceSpec::XKind::GaussianComplex:
      X = random_gaussian_matrix(rng, n);
      break;
    case InstanceSpec::XKind::Identity:
      X = ComplexMatrix::Identity(n, n);
      break;
    case InstanceSpec::XKind::RankOne: {
      ComplexMatrix u(n, 1), v(n, 1);
      for (int i = 0; i < n; ++i) u(i, 0) = rng.gaussian_complex();
      for (int i = 0; i < n; ++i) v(i, 0) = rng.gaussian_complex();
      X = u * v.adjoint();
      break;
    }
  }

  uint64_t h = fnv1a64(&spec.seed, sizeof spec.seed);
  h = fnv1a64(&n, sizeof n, h);
  h = hash_matrix(A.matrix(), h);
  h = hash_matrix(B.matrix(), h);
  h = hash_matrix(X, h);
  return MeanTriple{std::move(A), std::move(B), std::move(X), h};
}

// ---------------------------------------------------------------------------
// check results

void CheckResult::add_link(const std::string& label, double margin, double tolerance) {
  const bool pass = margin >= -tolerance;  // NaN margin fails
  links.push_back({label, margin, tolerance, pass, false});
  passed = passed && pass;
}

void CheckResult::add_skipped(const std::string& label) {
  links.push_back({label, 0.0, 0.0, true, true});
}

void CheckResult::merge(const CheckResult& other, const std::string& label_prefix) {
  for (const LinkResult& l : other.links) {
    LinkResult copy = l;
    copy.label = label_prefix + l.label;
    links.push_back(std::move(copy));
  }
  passed = passed && other.passed;
}

// ---------------------------------------------------------------------------
// scalar chains

namespace {

uint64_t pair_fingerprint(const PositivePair& p) {
  uint64_t h = fnv1a64(&p.a, sizeof p.a);
  return fnv1a64(&p.b, sizeof p.b, h);
}

double scalar_tol(const PositivePair& p, double coeff) { return coeff * std::max(p.a, p.b); }

// beta-form member of the upper chain: (1/m)(sum_{k=0..m} a^(k/m) b^((m-k)/m) - (a+b)/2)
double beta_form_pair(const PositivePair& p, int m) {
  return (pair_power_sum(p, beta_exponents(m), 1.0) - (p.a + p.b) / 2.0) / double(m);
}

}  // namespace

CheckResult check_scalar_bounds(const PositivePair& p, double tol_scalar) {
  CheckResult r;
  r.check_id = "scalar_bounds";
  r.instance_fingerprint = pair_fingerprint(p);
  const double tol = scalar_tol(p, tol_scalar);
  const double L = log_mean(p);
  r.add_link("geo<=L", L - geo_mean(p), tol);
  r.add_link("L<=lin", lin_upper(p) - L, tol);
  return r;
}

CheckResult check_scalar_chain_lemma1(const PositivePair& p, double tol_scalar) {
  CheckResult r;
  r.check_id = "lemma1";
  r.instance_fingerprint = pair_fingerprint(p);
  const double tol = scalar_tol(p, tol_scalar);
  const double lin = lin_upper(p);
  r.add_link("L<=lin", lin - log_mean(p), tol);
  r.add_link("lin<=polya", polya_upper(p) - lin, tol);
  return r;
}

CheckResult check_scalar_lower_chain(const PositivePair& p, int m, double tol_scalar) {
  CheckResult r;
  r.check_id = "scalar_lower_chain";
  r.instance_fingerprint = pair_fingerprint(p);
  const double tol = scalar_tol(p, tol_scalar);
  const double mid = mid_sum_pair(p, m);
  const double low = lower_sum_pair(p, m);
  r.add_link("geo<=mid_sum", mid - geo_mean(p), tol);
  r.add_link("mid_sum<=lower_sum", low - mid, tol);
  r.add_link("lower_sum<=L", log_mean(p) - low, tol);
  return r;
}

CheckResult check_scalar_upper_chain(const PositivePair& p, int m, double tol_scalar) {
  CheckResult r;
  r.check_id = "scalar_upper_chain";
  r.instance_fingerprint = pair_fingerprint(p);
  const double tol = scalar_tol(p, tol_scalar);
  const double beta = beta_form_pair(p, m);
  const double up = upper_sum_pair(p, m);
  r.add_link("L<=beta_sum", beta - log_mean(p), tol);
  r.add_link("beta_sum<=upper_sum", up - beta, tol);
  r.add_link("upper_sum<=arith", arith_mean(p) - up, tol);
  return r;
}

CheckResult check_rational_bounds(const PositivePair& p, double tol_scalar) {
  CheckResult r;
  r.check_id = "rational_bounds";
  r.instance_fingerprint = pair_fingerprint(p);
  const double tol = scalar_tol(p, tol_scalar);
  const double rat = rational_lower(p);
  r.add_link("geo<=rational", rat - geo_mean(p), tol);
  r.add_link("rational<=L", log_mean(p) - rat, tol);
  return r;
}

// ---------------------------------------------------------------------------
// lemma sign checks

namespace {

uint64_t lemma_fingerprint(double x, long long a, long long b, long long c) {
  uint64_t h = fnv1a64(&x, sizeof x);
  h = fnv1a64(&a, sizeof a, h);
  h = fnv1a64(&b, sizeof b, h);
  return fnv1a64(&c, sizeof c, h);
}

// normalized margin, or nullopt when the sample overflowed
std::optional<double> normalized(double gap, double scale) {
  if (!std::isfinite(gap) || !std::isfinite(scale)) return std::nullopt;
  return gap / std::max(1.0, scale);
}

}  // namespace

CheckResult check_lemma2(double x, int u, int v, int w, double tol) {
  CheckResult r;
  r.check_id = "lemma2";
  r.instance_fingerprint = lemma_fingerprint(x, u, v, w);
  const double xv = pow_int(x, v);
  const double t1 = pow_int(x, u) * (1.0 - xv);
  const double t2 = pow_int(x, w) * (xv - 1.0);
  const auto m = normalized(lemma2_expr(x, u, v, w), std::max(std::abs(t1), std::abs(t2)));
  if (m) r.add_link("expr>=0", *m, tol);
  else r.add_skipped("expr>=0");
  return r;
}

CheckResult check_lemma3(double x, int m, double tol) {
  CheckResult r;
  r.check_id = "lemma3";
  r.instance_fingerprint = lemma_fingerprint(x, m, 0, 0);
  double lhs = 0.0, rhs = 0.0;
  for (int k = 1; k <= m; ++k) {
    lhs += pow_int(x, (long long)(2 * k - 1) * (m + 1));
    rhs += pow_int(x, (long long)2 * k * m);
  }
  const auto nm = normalized(lemma3_gap(x, m), std::max(lhs, rhs));
  if (nm) r.add_link("lhs>=rhs", *nm, tol);
  else r.add_skipped("lhs>=rhs");
  return r;
}

CheckResult check_lemma5(double x, int m, double tol) {
  CheckResult r;
  r.check_id = "lemma5";
  r.instance_fingerprint = lemma_fingerprint(x, m, 1, 0);
  double pos = 0.0, neg = 0.0;
  for (int k = 1; k <= m - 1; ++k) {
    pos += pow_int(x, (long long)k * m);
    neg += pow_int(x, (long long)k * (m - 1));
  }
  const double rhs = std::abs(pow_int(x, (long long)m * (m - 1)) - 1.0) / 2.0;
  const auto nm = normalized(lemma5_gap(x, m), std::max({pos, neg, rhs}));
  if (nm) r.add_link("sum>=half_range", *nm, tol);
  else r.add_skipped("sum>=half_range");
  return r;
}

CheckResult check_induction(double t, int m, double tol) {
  CheckResult r;
  r.check_id = "induction";
  r.instance_fingerprint = lemma_fingerprint(t, m, 2, 0);
  double s = 0.0;
  for (int k = 0; k < m; ++k) s += pow_int(t, k);
  const double lhs = double(m) * (pow_int(t, m - 1) + 1.0) / 2.0;
  const auto nm = normalized(induction_gap(t, m), std::max(lhs, s));
  if (nm) r.add_link("bound>=sum", *nm, tol);
  else r.add_skipped("bound>=sum");
  return r;
}

// ---------------------------------------------------------------------------
// sum-family properties

CheckResult check_appendix_mono(double t, int m, double tol_scalar) {
  CheckResult r;
  r.check_id = "appendix_mono";
  r.instance_fingerprint = lemma_fingerprint(t, m, 3, 0);
  const double tol = tol_scalar * std::max(1.0, t);
  const double am = alpha_m(t, m), am1 = alpha_m(t, m + 1);
  const double bm = beta_m(t, m), bm1 = beta_m(t, m + 1);
  r.add_link("alpha_m<=alpha_m1", am1 - am, tol);
  r.add_link("beta_m1<=beta_m", bm - bm1, tol);
  r.add_link("alpha<=beta", bm - am, tol);
  return r;
}

CheckResult check_appendix_riemann(double t, int m, double tol_scalar) {
  CheckResult r;
  r.check_id = "appendix_riemann";
  r.instance_fingerprint = lemma_fingerprint(t, m, 4, 0);
  const double tol = tol_scalar * std::max(1.0, t);
  const double a = alpha_m(t, m), b = beta_m(t, m);
  const double g = gamma_m(t, m), d = delta_m(t, m);
  if (t < 1.0) {
    r.add_link("alpha>=gamma", a - g, tol);
    r.add_link("beta<=delta", d - b, tol);
  } else {
    r.add_link("alpha>=delta", a - d, tol);
    r.add_link("beta<=gamma", g - b, tol);
  }
  return r;
}

CheckResult check_appendix_props(double t, int m, double tol_scalar) {
  CheckResult r;
  r.check_id = "appendix_props";
  r.instance_fingerprint = lemma_fingerprint(t, m, 5, 0);
  r.merge(check_appendix_mono(t, m, tol_scalar), "");
  r.merge(check_appendix_riemann(t, m, tol_scalar), "");
  return r;
}

// ---------------------------------------------------------------------------
// Frobenius-norm chains

namespace {

double matrix_tol(const MeanTriple& tr, double coeff) {
  return coeff * frobenius_norm(tr.X) *
         std::max({1.0, frobenius_norm(tr.A.matrix()), frobenius_norm(tr.B.matrix())});
}

const std::vector<double> kHalfExponent = {0.5};
const std::vector<double> kArithExponents = {1.0, 0.0};
// 2 A^(1/2) X B^(1/2) + (AX+XB)/2, as multiplicity-weighted exponents * 1/2
const std::vector<double> kZouExponents = {0.5, 0.5, 0.5, 0.5, 1.0, 0.0};
// AX + 3 A^(1/3) X B^(2/3) + 3 A^(2/3) X B^(1/3) + XB, * 1/8
const std::vector<double> kCubeExponents = {1.0,       1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0,
                                            2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 0.0};

double zou_rhs(const MeanTriple& tr) {
  return frobenius_norm(power_sum_map(tr.A, tr.B, tr.X, kZouExponents, 0.5)) / 3.0;
}

double upper_endpoint(const MeanTriple& tr, UpperEndpoint endpoint) {
  if (endpoint == UpperEndpoint::AXplusXB)
    return 0.5 * frobenius_norm(power_sum_map(tr.A, tr.B, tr.X, kArithExponents, 1.0));
  return 0.5 * frobenius_norm(tr.A.matrix() * tr.X + tr.B.matrix() * tr.X);
}

}  // namespace

CheckResult check_frobenius_zou(const MeanTriple& tr, double tol_matrix) {
  CheckResult r;
  r.check_id = "zou";
  r.instance_fingerprint = tr.fingerprint;
  const double tol = matrix_tol(tr, tol_matrix);
  const double lhs = frobenius_norm(log_mean_map(tr.A, tr.B, tr.X));
  r.add_link("int<=zou", zou_rhs(tr) - lhs, tol);
  return r;
}

CheckResult check_frobenius_refined_upper(const MeanTriple& tr, double tol_matrix) {
  CheckResult r;
  r.check_id = "refined_upper";
  r.instance_fingerprint = tr.fingerprint;
  const double tol = matrix_tol(tr, tol_matrix);
  const double lhs = frobenius_norm(log_mean_map(tr.A, tr.B, tr.X));
  const double mid = frobenius_norm(power_sum_map(tr.A, tr.B, tr.X, kCubeExponents, 1.0 / 8.0));
  r.add_link("int<=cube_mid", mid - lhs, tol);
  r.add_link("cube_mid<=zou", zou_rhs(tr) - mid, tol);
  return r;
}

CheckResult check_frobenius_lower_chain(const MeanTriple& tr, int m, double tol_matrix) {
  if (m < 1) throw std::domain_error("check_frobenius_lower_chain: m must be >= 1");
  CheckResult r;
  r.check_id = "lower_chain";
  r.instance_fingerprint = tr.fingerprint;
  const double tol = matrix_tol(tr, tol_matrix);
  const double n0 = frobenius_norm(log_mean_map(tr.A, tr.B, tr.X));
  const double n1 =
      frobenius_norm(power_sum_map(tr.A, tr.B, tr.X, lower_exponents(m), 1.0 / double(m)));
  const double n2 =
      frobenius_norm(power_sum_map(tr.A, tr.B, tr.X, mid_exponents(m), 1.0 / double(m)));
  const double n3 = frobenius_norm(power_sum_map(tr.A, tr.B, tr.X, kHalfExponent, 1.0));
  r.add_link("int>=lower_sum", n0 - n1, tol);
  r.add_link("lower_sum>=mid_sum", n1 - n2, tol);
  r.add_link("mid_sum>=geo", n2 - n3, tol);
  return r;
}

CheckResult check_frobenius_upper_chain(const MeanTriple& tr, int m, double tol_matrix,
                                        UpperEndpoint endpoint) {
  if (m < 2) throw std::domain_error("check_frobenius_upper_chain: m must be >= 2");
  CheckResult r;
  r.check_id = "upper_chain";
  r.instance_fingerprint = tr.fingerprint;
  const double tol = matrix_tol(tr, tol_matrix);
  const double n0 = frobenius_norm(log_mean_map(tr.A, tr.B, tr.X));
  const ComplexMatrix full = power_sum_map(tr.A, tr.B, tr.X, beta_exponents(m), 1.0);
  const ComplexMatrix arith = power_sum_map(tr.A, tr.B, tr.X, kArithExponents, 0.5);
  const double n1 = frobenius_norm(full - arith) / double(m);
  const double n2 =
      frobenius_norm(power_sum_map(tr.A, tr.B, tr.X, upper_exponents(m), 1.0 / double(m)));
  const double n3 = upper_endpoint(tr, endpoint);
  r.add_link("int<=beta_sum", n1 - n0, tol);
  r.add_link("beta_sum<=upper_sum", n2 - n1, tol);
  r.add_link(endpoint == UpperEndpoint::AXplusXB ? "upper_sum<=arith" : "upper_sum<=arith_bx",
             n3 - n2, tol);
  return r;
}

CheckResult check_hk_lower(const MeanTriple& tr, int m, double tol_matrix) {
  if (m < 1) throw std::domain_error("check_hk_lower: m must be >= 1");
  CheckResult r;
  r.check_id = "hk_lower";
  r.instance_fingerprint = tr.fingerprint;
  const double tol = matrix_tol(tr, tol_matrix);
  const double n0 = frobenius_norm(log_mean_map(tr.A, tr.B, tr.X));
  const double n1 =
      frobenius_norm(power_sum_map(tr.A, tr.B, tr.X, mid_exponents(m), 1.0 / double(m)));
  const double n2 = frobenius_norm(power_sum_map(tr.A, tr.B, tr.X, kHalfExponent, 1.0));
  r.add_link("int>=mid_sum", n0 - n1, tol);
  r.add_link("mid_sum>=geo", n1 - n2, tol);
  return r;
}

CheckResult check_hk_upper(const MeanTriple& tr, int m, double tol_matrix) {
  if (m < 2) throw std::domain_error("check_hk_upper: m must be >= 2");
  CheckResult r;
  r.check_id = "hk_upper";
  r.instance_fingerprint = tr.fingerprint;
  const double tol = matrix_tol(tr, tol_matrix);
  const double n0 = frobenius_norm(log_mean_map(tr.A, tr.B, tr.X));
  const double n1 =
      frobenius_norm(power_sum_map(tr.A, tr.B, tr.X, upper_exponents(m), 1.0 / double(m)));
  const double n2 = upper_endpoint(tr, UpperEndpoint::AXplusXB);
  r.add_link("int<=upper_sum", n1 - n0, tol);
  r.add_link("upper_sum<=arith", n2 - n1, tol);
  return r;
}

CheckResult check_hk_chains(const MeanTriple& tr, int m, double tol_matrix) {
  CheckResult r;
  r.check_id = "hk_chains";
  r.instance_fingerprint = tr.fingerprint;
  r.merge(check_hk_lower(tr, m, tol_matrix), "lower:");
  if (m >= 2) r.merge(check_hk_upper(tr, m, tol_matrix), "upper:");
  return r;
}

// ---------------------------------------------------------------------------
// Loewner chains

namespace {

uint64_t pd_pair_fingerprint(const HermitianPSD& A, const HermitianPSD& B) {
  uint64_t h = hash_matrix(A.matrix(), fnv1a64("pd_pair"));
  return hash_matrix(B.matrix(), h);
}

void add_loewner_link(CheckResult& r, const std::string& label, const ComplexMatrix& smaller,
                      const ComplexMatrix& larger, double coeff) {
  const double tol = coeff * std::max(1.0, frobenius_norm(larger));
  r.add_link(label, loewner_gap(smaller, larger), tol);
}

}  // namespace

CheckResult check_geomean_prop41(const HermitianPSD& A, const HermitianPSD& B, double tol) {
  CheckResult r;
  r.check_id = "props_41";
  r.instance_fingerprint = pd_pair_fingerprint(A, B);
  const ComplexMatrix igm = integral_geomean(A, B).matrix();
  const MeanTerm mid_terms[] = {MeanTerm::arithmetic(0.25),
                                MeanTerm::weighted_geo(2.0 / 3.0, 3.0 / 8.0),
                                MeanTerm::weighted_geo(1.0 / 3.0, 3.0 / 8.0)};
  const MeanTerm rhs_terms[] = {MeanTerm::arithmetic(0.5), MeanTerm::weighted_geo(0.5, 1.0)};
  const ComplexMatrix mid = mean_combination(A, B, mid_terms);
  const ComplexMatrix rhs = mean_combination(A, B, rhs_terms);
  add_loewner_link(r, "int<=lin_comb", igm, mid, tol);
  add_loewner_link(r, "lin_comb<=mix_comb", mid, rhs, tol);
  return r;
}

CheckResult check_geomean_prop42(const HermitianPSD& A, const HermitianPSD& B, int m, double tol) {
  if (m < 1) throw std::domain_error("check_geomean_prop42: m must be >= 1");
  CheckResult r;
  r.check_id = "props_42";
  r.instance_fingerprint = pd_pair_fingerprint(A, B);
  const ComplexMatrix igm = integral_geomean(A, B).matrix();
  const int n = A.dim();
  ComplexMatrix s1 = ComplexMatrix::Zero(n, n), s2 = ComplexMatrix::Zero(n, n);
  for (double e : lower_exponents(m)) s1 += weighted_geomean(A, B, e).matrix();
  for (double e : mid_exponents(m)) s2 += weighted_geomean(A, B, e).matrix();
  s1 /= double(m);
  s2 /= double(m);
  const ComplexMatrix end = weighted_geomean(A, B, 0.5).matrix();
  add_loewner_link(r, "lower_geo<=int", s1, igm, tol);
  add_loewner_link(r, "mid_geo<=lower_geo", s2, s1, tol);
  add_loewner_link(r, "geo_half<=mid_geo", end, s2, tol);
  return r;
}

CheckResult check_geomean_prop43(const HermitianPSD& A, const HermitianPSD& B, int m, double tol) {
  if (m < 2) throw std::domain_error("check_geomean_prop43: m must be >= 2");
  CheckResult r;
  r.check_id = "props_43";
  r.instance_fingerprint = pd_pair_fingerprint(A, B);
  const ComplexMatrix igm = integral_geomean(A, B).matrix();
  const int n = A.dim();
  const ComplexMatrix arith = 0.5 * (A.matrix() + B.matrix());
  ComplexMatrix s1 = ComplexMatrix::Zero(n, n), s2 = ComplexMatrix::Zero(n, n);
  for (double e : beta_exponents(m)) s1 += weighted_geomean(A, B, e).matrix();
  s1 = (s1 - arith) / double(m);
  for (double e : upper_exponents(m)) s2 += weighted_geomean(A, B, e).matrix();
  s2 /= double(m);
  add_loewner_link(r, "int<=beta_geo", igm, s1, tol);
  add_loewner_link(r, "beta_geo<=upper_geo", s1, s2, tol);
  add_loewner_link(r, "upper_geo<=arith", s2, arith, tol);
  return r;
}

CheckResult check_geomean_prop44(const HermitianPSD& A, const HermitianPSD& B, double tol) {
  CheckResult r;
  r.check_id = "props_44";
  r.instance_fingerprint = pd_pair_fingerprint(A, B);
  const ComplexMatrix igm = integral_geomean(A, B).matrix();
  const MeanTerm bridge_terms[] = {MeanTerm::weighted_geo(2.0 / 3.0, 1.0),
                                   MeanTerm::weighted_geo(1.0 / 3.0, -1.0),
                                   MeanTerm::inverse_bridge(1.0 / 3.0, 1.0)};
  const ComplexMatrix bridge = mean_combination(A, B, bridge_terms);
  const ComplexMatrix end = weighted_geomean(A, B, 0.5).matrix();
  add_loewner_link(r, "bridge<=int", bridge, igm, tol);
  add_loewner_link(r, "geo_half<=bridge", end, bridge, tol);
  return r;
}

// ---------------------------------------------------------------------------
// catalog

const std::vector<CheckDef>& check_catalog() {
  static const std::vector<CheckDef> catalog = {
      {"scalar_bounds", "sqrt(a b) <= L(a,b) <= ((a^(1/3)+b^(1/3))/2)^3 for a,b > 0",
       CheckKind::ScalarPair, 0.0},
      {"lemma1", "L(a,b) <= ((a^(1/3)+b^(1/3))/2)^3 <= (2/3) sqrt(a b) + (1/6)(a+b)",
       CheckKind::ScalarPair, 0.0},
      {"scalar_lower_chain",
       "sqrt(a b) <= (1/m) sum_{k=1..m} a^(k/(m+1)) b^((m+1-k)/(m+1)) <= (1/m) sum_{k=1..m} "
       "a^((2k-1)/(2m)) b^((2m-2k+1)/(2m)) <= L(a,b), m >= 1",
       CheckKind::ScalarPair, 0.0},
      {"scalar_upper_chain",
       "L(a,b) <= (1/m)(sum_{k=0..m} a^(k/m) b^((m-k)/m) - (a+b)/2) <= (1/m) sum_{k=0..m-1} "
       "a^(k/(m-1)) b^((m-1-k)/(m-1)) <= (a+b)/2, m >= 2",
       CheckKind::ScalarPair, 0.0},
      {"rational_bounds", "sqrt(a b) <= b (t + t^(1/3))/(1 + t^(1/3)) <= L(a,b) with t = a/b",
       CheckKind::ScalarPair, 0.0},
      {"lemma2", "x^u (1 - x^v) + x^w (x^v - 1) >= 0 for x > 0 and integers 0 <= u <= w, v >= 0",
       CheckKind::LemmaSample, 0.0},
      {"lemma3", "sum_{k=1..m} x^((2k-1)(m+1)) >= sum_{k=1..m} x^(2km) for x > 0, m >= 1",
       CheckKind::LemmaSample, 0.0},
      {"lemma5",
       "sum_{k=1..m-1}(x^(km) - x^(k(m-1))) >= (x^(m(m-1)) - 1)/2 for x > 0, m >= 2",
       CheckKind::LemmaSample, 0.0},
      {"induction", "sum_{k=0..m-1} t^k <= m (t^(m-1) + 1)/2 for t > 0, m >= 2",
       CheckKind::LemmaSample, 0.0},
      {"appendix_mono",
       "alpha_m(t) <= alpha_{m+1}(t), beta_{m+1}(t) <= beta_m(t), alpha_m(t) <= beta_m(t); both "
       "converge to L(t,1)",
       CheckKind::AppendixTM, 0.0},
      {"appendix_riemann",
       "alpha_m > gamma_m and beta_m < delta_m for 0<t<1; alpha_m > delta_m and beta_m < gamma_m "
       "for t>1",
       CheckKind::AppendixTM, 0.0},
      {"zou",
       "||int_0^1 A^v X B^(1-v) dv||_F <= (1/3)||2 A^(1/2) X B^(1/2) + (AX+XB)/2||_F",
       CheckKind::MatrixTriple, 0.0},
      {"refined_upper",
       "||int_0^1 A^v X B^(1-v) dv||_F <= ||(AX + 3 A^(1/3) X B^(2/3) + 3 A^(2/3) X B^(1/3) + "
       "XB)/8||_F <= (1/3)||2 A^(1/2) X B^(1/2) + (AX+XB)/2||_F",
       CheckKind::MatrixTriple, 0.0},
      {"lower_chain",
       "||int_0^1 A^v X B^(1-v) dv||_F >= (1/m)||sum_{k=1..m} A^((2k-1)/(2m)) X "
       "B^((2m-2k+1)/(2m))||_F >= (1/m)||sum_{k=1..m} A^(k/(m+1)) X B^((m+1-k)/(m+1))||_F >= "
       "||A^(1/2) X B^(1/2)||_F",
       CheckKind::MatrixTriple, 0.0},
      {"upper_chain",
       "||int_0^1 A^v X B^(1-v) dv||_F <= (1/m)||sum_{k=0..m} A^(k/m) X B^((m-k)/m) - "
       "(AX+XB)/2||_F <= (1/m)||sum_{k=0..m-1} A^(k/(m-1)) X B^((m-1-k)/(m-1))||_F <= "
       "(1/2)||AX+XB||_F",
       CheckKind::MatrixTriple, 0.0},
      {"hk_lower",
       "||int_0^1 A^v X B^(1-v) dv||_F >= (1/m)||sum_{k=1..m} A^(k/(m+1)) X "
       "B^((m+1-k)/(m+1))||_F >= ||A^(1/2) X B^(1/2)||_F",
       CheckKind::MatrixTriple, 0.0},
      {"hk_upper",
       "||int_0^1 A^v X B^(1-v) dv||_F <= (1/m)||sum_{k=0..m-1} A^(k/(m-1)) X "
       "B^((m-1-k)/(m-1))||_F <= (1/2)||AX+XB||_F",
       CheckKind::MatrixTriple, 0.0},
      {"props_41",
       "int_0^1 A#_v B dv <= (1/4)((A+B)/2 + (3/2)(A#_(2/3)B + A#_(1/3)B)) <= (1/2)((A+B)/2 + 2 "
       "A#_(1/2)B)",
       CheckKind::PdPair, 1e4},
      {"props_42",
       "int_0^1 A#_v B dv >= (1/m) sum_{k=1..m} A#_((2k-1)/(2m)) B >= (1/m) sum_{k=1..m} "
       "A#_(k/(m+1)) B >= A#_(1/2)B",
       CheckKind::PdPair, 1e4},
      {"props_43",
       "int_0^1 A#_v B dv <= (1/m)(sum_{k=0..m} A#_(k/m) B - (A+B)/2) <= (1/m) sum_{k=0..m-1} "
       "A#_(k/(m-1)) B <= (A+B)/2",
       CheckKind::PdPair, 1e4},
      {"props_44",
       "int_0^1 A#_v B dv >= A#_(2/3)B - A#_(1/3)B + 2((A#_(1/3)B)^-1 + A^-1)^-1 >= A#_(1/2)B",
       CheckKind::PdPair, 1e4},
  };
  return catalog;
}

uint64_t statement_hash(const CheckDef& def) { return fnv1a64(def.statement); }

std::vector<std::string> all_check_ids() {
  std::vector<std::string> ids;
  for (const CheckDef& d : check_catalog()) ids.push_back(d.id);
  return ids;
}

namespace {

const CheckDef* find_check(const std::string& id) {
  for (const CheckDef& d : check_catalog())
    if (d.id == id) return &d;
  return nullptr;
}

}  // namespace

std::vector<std::string> resolve_check_ids(const std::vector<std::string>& requested) {
  std::vector<std::string> out;
  auto push_unique = [&out](const std::string& id) {
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  };
  for (const std::string& id : requested) {
    if (id == "all") {
      for (const std::string& c : all_check_ids()) push_unique(c);
    } else if (id == "hk_chains") {
      push_unique("hk_lower");
      push_unique("hk_upper");
    } else if (find_check(id)) {
      push_unique(id);
    } else {
      throw std::invalid_argument("unknown check id: " + id);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// suite

namespace {

InstanceSpec clamp_condition(InstanceSpec s, double max_cond) {
  if (max_cond > 0.0 && s.eig_hi / s.eig_lo > max_cond) {
    const double center = std::sqrt(s.eig_lo * s.eig_hi);
    const double radius = std::sqrt(max_cond);
    s.eig_lo = center / radius;
    s.eig_hi = center * radius;
  }
  return s;
}

struct Aggregator {
  CheckAggregate agg;
  std::map<std::string, size_t> link_index;

  void consume(const CheckResult& res) {
    agg.trials += 1;
    if (!res.passed) {
      agg.failures += 1;
      if (agg.failing_fingerprints.size() < 16)
        agg.failing_fingerprints.push_back(res.instance_fingerprint);
    }
    for (const LinkResult& l : res.links) {
      auto [it, inserted] = link_index.try_emplace(l.label, agg.links.size());
      if (inserted) agg.links.push_back(LinkAggregate{l.label});
      LinkAggregate& la = agg.links[it->second];
      la.trials += 1;
      if (l.skipped) {
        la.skipped += 1;
        continue;
      }
      if (!l.pass) la.failures += 1;
      if (!la.any_evaluated || l.margin < la.worst_margin) {
        la.worst_margin = l.margin;
        la.tolerance_at_worst = l.tolerance;
        la.worst_fingerprint = res.instance_fingerprint;
        la.any_evaluated = true;
      }
    }
  }
};

CheckResult run_matrix_check(const CheckDef& def, const MeanTriple& tr, const VerifyOptions& opt,
                             std::map<std::string, long long>& observations) {
  CheckResult r;
  r.check_id = def.id;
  r.instance_fingerprint = tr.fingerprint;
  if (def.id == "zou") return check_frobenius_zou(tr, opt.tol_matrix);
  if (def.id == "refined_upper") return check_frobenius_refined_upper(tr, opt.tol_matrix);
  if (def.id == "lower_chain") {
    double prev_mid = -1.0;
    bool monotone = true;
    for (int m : opt.lower_sweep) {
      CheckResult one = check_frobenius_lower_chain(tr, m, opt.tol_matrix);
      r.merge(one, "m=" + std::to_string(m) + ":");
      // middle quantity of the chain, recorded observationally across m
      const double mid =
          frobenius_norm(power_sum_map(tr.A, tr.B, tr.X, lower_exponents(m), 1.0 / double(m)));
      if (prev_mid >= 0.0 && mid < prev_mid - matrix_tol(tr, opt.tol_matrix)) monotone = false;
      prev_mid = mid;
    }
    if (!monotone) observations["lower_chain.middle_not_monotone_in_m"] += 1;
    return r;
  }
  if (def.id == "upper_chain") {
    for (int m : opt.upper_sweep)
      r.merge(check_frobenius_upper_chain(tr, m, opt.tol_matrix, opt.upper_end),
              "m=" + std::to_string(m) + ":");
    return r;
  }
  if (def.id == "hk_lower") {
    for (int m : opt.lower_sweep)
      r.merge(check_hk_lower(tr, m, opt.tol_matrix), "m=" + std::to_string(m) + ":");
    return r;
  }
  if (def.id == "hk_upper") {
    for (int m : opt.upper_sweep)
      r.merge(check_hk_upper(tr, m, opt.tol_matrix), "m=" + std::to_string(m) + ":");
    return r;
  }
  throw std::logic_error("run_matrix_check: unhandled id " + def.id);
}

CheckResult run_pd_check(const CheckDef& def, const MeanTriple& tr, const VerifyOptions& opt) {
  CheckResult r;
  r.check_id = def.id;
  r.instance_fingerprint = tr.fingerprint;
  if (def.id == "props_41") return check_geomean_prop41(tr.A, tr.B, opt.tol_loewner);
  if (def.id == "props_44") return check_geomean_prop44(tr.A, tr.B, opt.tol_loewner);
  if (def.id == "props_42") {
    for (int m : opt.lower_sweep)
      r.merge(check_geomean_prop42(tr.A, tr.B, m, opt.tol_loewner),
              "m=" + std::to_string(m) + ":");
    return r;
  }
  if (def.id == "props_43") {
    for (int m : opt.upper_sweep)
      r.merge(check_geomean_prop43(tr.A, tr.B, m, opt.tol_loewner),
              "m=" + std::to_string(m) + ":");
    return r;
  }
  throw std::logic_error("run_pd_check: unhandled id " + def.id);
}

CheckResult run_scalar_check(const CheckDef& def, const PositivePair& p, const VerifyOptions& opt) {
  CheckResult r;
  r.check_id = def.id;
  r.instance_fingerprint = pair_fingerprint(p);
  if (def.id == "scalar_bounds") return check_scalar_bounds(p, opt.tol_scalar);
  if (def.id == "lemma1") return check_scalar_chain_lemma1(p, opt.tol_scalar);
  if (def.id == "rational_bounds") return check_rational_bounds(p, opt.tol_scalar);
  if (def.id == "scalar_lower_chain") {
    for (int m : opt.lower_sweep)
      r.merge(check_scalar_lower_chain(p, m, opt.tol_scalar), "m=" + std::to_string(m) + ":");
    return r;
  }
  if (def.id == "scalar_upper_chain") {
    for (int m : opt.upper_sweep)
      r.merge(check_scalar_upper_chain(p, m, opt.tol_scalar), "m=" + std::to_string(m) + ":");
    return r;
  }
  throw std::logic_error("run_scalar_check: unhandled id " + def.id);
}

CheckResult run_lemma_check(const CheckDef& def, Rng& rng, const InstanceSpec& spec,
                            const VerifyOptions& opt) {
  const double x = rng.log_uniform(spec.eig_lo, spec.eig_hi);
  if (def.id == "lemma2") {
    const int u = int(rng.uniform_int(0, 12));
    const int w = int(rng.uniform_int(u, 12));
    const int v = int(rng.uniform_int(0, 12));
    return check_lemma2(x, u, v, w, opt.tol_lemma);
  }
  if (def.id == "lemma3") return check_lemma3(x, int(rng.uniform_int(1, 10)), opt.tol_lemma);
  if (def.id == "lemma5") return check_lemma5(x, int(rng.uniform_int(2, 10)), opt.tol_lemma);
  if (def.id == "induction")
    return check_induction(x, int(rng.uniform_int(2, 10)), opt.tol_lemma);
  throw std::logic_error("run_lemma_check: unhandled id " + def.id);
}

}  // namespace

bool Report::all_passed() const { return total_failures() == 0; }

long long Report::total_failures() const {
  long long n = 0;
  for (const CheckAggregate& c : checks) n += c.failures;
  return n;
}

Report run_suite(const InstanceSpec& spec, long long trials,
                 const std::vector<std::string>& checks, const VerifyOptions& opt) {
  spec.validate();
  if (trials < 1) throw std::invalid_argument("run_suite: trials must be >= 1");
  const std::vector<std::string> ids = resolve_check_ids(checks);
  if (ids.empty()) throw std::invalid_argument("run_suite: no checks requested");

  Report report;
  report.spec = spec;
  report.trials = trials;
  report.options = opt;
  report.check_ids = ids;

  for (const std::string& id : ids) {
    const CheckDef& def = *find_check(id);
    Aggregator agg;
    agg.agg.id = id;
    for (long long trial = 0; trial < trials; ++trial) {
      const uint64_t seed = mix_seed(spec.seed, uint64_t(trial) + 1, fnv1a64(id));
      CheckResult result;
      try {
        switch (def.kind) {
          case CheckKind::ScalarPair: {
            Rng rng(seed);
            const PositivePair p(rng.log_uniform(spec.eig_lo, spec.eig_hi),
                                 rng.log_uniform(spec.eig_lo, spec.eig_hi));
            result = run_scalar_check(def, p, opt);
            break;
          }
          case CheckKind::AppendixTM: {
            Rng rng(seed);
            const double t = rng.log_uniform(spec.eig_lo, spec.eig_hi);
            const int m = int(rng.uniform_int(1, 32));
            result = def.id == "appendix_mono" ? check_appendix_mono(t, m, opt.tol_scalar)
                                               : check_appendix_riemann(t, m, opt.tol_scalar);
            break;
          }
          case CheckKind::LemmaSample: {
            Rng rng(seed);
            result = run_lemma_check(def, rng, spec, opt);
            break;
          }
          case CheckKind::MatrixTriple: {
            InstanceSpec sub = clamp_condition(spec, def.max_condition);
            sub.seed = seed;
            result = run_matrix_check(def, gen_instance(sub), opt, report.observations);
            break;
          }
          case CheckKind::PdPair: {
            InstanceSpec sub = clamp_condition(spec, def.max_condition);
            sub.seed = seed;
            sub.require_pd = true;
            result = run_pd_check(def, gen_instance(sub), opt);
            break;
          }
        }
      } catch (const std::exception& e) {
        result = CheckResult{};
        result.check_id = id;
        result.instance_fingerprint = seed;
        result.add_link(std::string("exception:") + e.what(), -1.0, 0.0);
      }
      agg.consume(result);
    }
    report.checks.push_back(std::move(agg.agg));
  }
  return report;
}

// ---------------------------------------------------------------------------
// report serialization

namespace {

std::string hex64(uint64_t v) {
  static const char digits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

}  // namespace

Table report_table(const Report& r) {
  Table t;
  t.columns = {"check",        "link",
               "trials",       "failures",
               "skipped",      "worst_margin",
               "tolerance_at_worst", "worst_fingerprint",
               "failing_fingerprints"};
  for (const CheckAggregate& c : r.checks) {
    double check_worst = 0.0;
    double check_worst_tol = 0.0;
    bool any = false;
    for (const LinkAggregate& l : c.links) {
      if (l.any_evaluated && (!any || l.worst_margin < check_worst)) {
        check_worst = l.worst_margin;
        check_worst_tol = l.tolerance_at_worst;
        any = true;
      }
    }
    std::string fps;
    for (size_t i = 0; i < c.failing_fingerprints.size(); ++i) {
      if (i) fps += ';';
      fps += hex64(c.failing_fingerprints[i]);
    }
    t.rows.push_back({c.id, std::string("_total"), c.trials, c.failures, 0LL, check_worst,
                      check_worst_tol, std::string(), fps});
    for (const LinkAggregate& l : c.links) {
      t.rows.push_back({c.id, l.label, l.trials, l.failures, l.skipped,
                        l.any_evaluated ? l.worst_margin : 0.0, l.tolerance_at_worst,
                        l.any_evaluated ? hex64(l.worst_fingerprint) : std::string(),
                        std::string()});
    }
  }
  return t;
}

namespace {

nlohmann::json report_meta(const Report& r) {
  nlohmann::json sweeps_lower = r.options.lower_sweep;
  nlohmann::json sweeps_upper = r.options.upper_sweep;
  return nlohmann::json{
      {"version", "logmean/1.0"},
      {"seed", r.spec.seed},
      {"trials", r.trials},
      {"dim_lo", r.spec.dim_lo},
      {"dim_hi", r.spec.dim_hi},
      {"eig_lo", r.spec.eig_lo},
      {"eig_hi", r.spec.eig_hi},
      {"require_pd", r.spec.require_pd},
      {"x_kind", r.spec.x_kind == InstanceSpec::XKind::GaussianComplex ? "gaussian_complex"
                 : r.spec.x_kind == InstanceSpec::XKind::Identity      ? "identity"
                                                                       : "rank_one"},
      {"checks", r.check_ids},
      {"tol_scalar", r.options.tol_scalar},
      {"tol_matrix", r.options.tol_matrix},
      {"tol_loewner", r.options.tol_loewner},
      {"tol_lemma", r.options.tol_lemma},
      {"lower_sweep", sweeps_lower},
      {"upper_sweep", sweeps_upper},
      {"upper_endpoint", r.options.upper_end == UpperEndpoint::AXplusXB ? "AX+XB" : "AX+BX"},
      {"observations", r.observations},
      {"total_failures", r.total_failures()},
  };
}

}  // namespace

std::string report_to_csv(const Report& r) { return table_to_csv(report_table(r)); }

nlohmann::json report_to_json(const Report& r) {
  return table_to_json(report_table(r), report_meta(r));
}

}  // namespace logmean::verify
