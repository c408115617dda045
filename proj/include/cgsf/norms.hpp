#pragma once

#include <string>
#include <vector>

#include "cgsf/gsf.hpp"

namespace cgsf {

struct NormValue {
  GeneralizedNumber value;  // sampled, nonnegative
  int order = 0;
  bool global = false;      // sup over the whole space rather than over K
  bool converged = true;    // false when some refinement ran out of iterations
  // Global and on-K values differ beyond 1e-6 relative at some epsilon.
  bool support_mismatch = false;
};

// Orders above this need more Taylor terms than a jet holds.
constexpr int kMaxNormOrder = 29;

// ||f||_0, ..., ||f||_order: per epsilon the max over |alpha| <= m and
// components of sup over K_eps of the derivative's modulus.
std::vector<NormValue> norm_table(const CompactlySupportedGsf& f, int order, const GsfConfig& cfg = {});
NormValue norm_m(const CompactlySupportedGsf& f, int m, const GsfConfig& cfg = {});
// Same sup over the support boxes widened by one unit on every side.
NormValue norm_m_global(const CompactlySupportedGsf& f, int m, const GsfConfig& cfg = {});

Valuation v_m(const CompactlySupportedGsf& f, int m, const GsfConfig& cfg = {});
double p_m(const CompactlySupportedGsf& f, int m, const GsfConfig& cfg = {});

// ||f - g||_m < rho.
Tri ball_member(const CompactlySupportedGsf& f, const CompactlySupportedGsf& g, int m,
                const GeneralizedNumber& rho, const GsfConfig& cfg = {});
// P_m(f - g) < r.
bool c_set_member(const CompactlySupportedGsf& f, const CompactlySupportedGsf& g, int m, double r,
                  const GsfConfig& cfg = {});
// ||f - g||_m / rho is infinitesimal.
Tri u_set_member(const CompactlySupportedGsf& f, const CompactlySupportedGsf& g, int m,
                 const GeneralizedNumber& rho, const GsfConfig& cfg = {});

struct MetricReport {
  int n_trunc = 20;
  std::vector<Valuation> v;  // v[n-1] = v_n(f - g)
  // Partial sums from the fitted valuations, and brackets that allow any
  // value for the terms whose valuation is unreliable.
  double d_e = 0.0, d_e_lo = 0.0, d_e_hi = 0.0;
  double d_2 = 0.0, d_2_lo = 0.0, d_2_hi = 0.0;
  double tail_e = 0.0;  // sum over n > n_trunc of e^-n
  double tail_2 = 0.0;  // sum over n > n_trunc of 2^-n
  bool upper_bound_holds = true;  // d_e <= d_2
  bool lower_bound_holds = true;  // d_2 / 2 <= d_e
  std::vector<std::string> notices;
};

MetricReport metric(const CompactlySupportedGsf& f, const CompactlySupportedGsf& g, int n_trunc = 20,
                    const GsfConfig& cfg = {});
// The same sums from given valuations v_1..v_N.
MetricReport metric_from_valuations(const std::vector<Valuation>& v);

struct AbsorbentWitness {
  double b = 0.0;
  Tri verified = Tri::Undecidable;  // u_set membership of u / eps^b
  bool widened = false;
  std::vector<std::string> notices;
};

// b < v_m(u) - v(rho) with u in eps^b * U^m_rho(0).
AbsorbentWitness absorbent_witness(const CompactlySupportedGsf& u, const GeneralizedNumber& rho, int m,
                                   const GsfConfig& cfg = {});

struct CauchyStep {
  int k = 0;
  int witness = 0;       // positivity witness of eps^k - ||u_{n_{k+1}} - u_{n_k}||_k
  double cutoff = 0.0;   // the k-th correction is switched on for eps below this
};

struct CauchyCheck {
  int p = 0;
  int i = 0;
  Tri holds = Tri::Undecidable;  // ||u - u_{n_p}||_i < eps^(p-1)
};

struct CauchyLimit {
  CompactlySupportedGsf limit;
  std::vector<int> schedule;
  std::vector<SmoothExpr> corrections;  // u_{n_{k+1}} - u_{n_k}
  std::vector<CauchyStep> steps;
  std::vector<CauchyCheck> certificate;
  bool certified = false;
};

// Increasing indices n_0 < n_1 < ... where n_k is the least index after
// n_{k-1} with ||u_n - u_{n_k}||_k < eps^k decided true for every later n.
std::vector<int> extract_schedule(const std::vector<CompactlySupportedGsf>& seq, const GsfConfig& cfg = {});

// Diagonal limit u = u_{n_0} + sum_k [eps < eps_k] (u_{n_{k+1}} - u_{n_k}),
// certified for p = 1..certify_up_to.
CauchyLimit cauchy_limit(const std::vector<CompactlySupportedGsf>& seq, const std::vector<int>& schedule,
                         int certify_up_to, const GsfConfig& cfg = {});

// u - u_n as (u_{n_K} - u_n) + sum_k ([eps < eps_k] - 1) (u_{n_{k+1}} - u_{n_k}),
// n_K the last scheduled index. Equal to the plain difference, but shared
// terms cancel symbolically instead of in floating point.
CompactlySupportedGsf limit_difference(const CauchyLimit& lim, const std::vector<CompactlySupportedGsf>& seq, int n,
                                       const GsfConfig& cfg = {});

}  // namespace cgsf
