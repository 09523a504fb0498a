#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "banditlab/bounds.hpp"
#include "banditlab/core.hpp"
#include "banditlab/estimators.hpp"
#include "banditlab/strategies.hpp"

// Numerical falsification harness for the supporting inequalities: shifted
// moment checks on synthetic martingales, exact finite-case checks of the
// change-of-measure, smoothing-gap, and exponential-sum inequalities, and
// Monte Carlo coverage studies of the deviation bounds on simulated runs.
// Checks report margins; nothing here aborts on a violation.

namespace banditlab {

// Bounded martingale-difference generator with known conditional variance.
// centered_bernoulli: X = s (B - p) / max(p, 1-p), B ~ Bernoulli(p).
// symmetric_uniform:  X = s U, U ~ Uniform[-1, 1].
// With history_driven_scale the scale s wobbles with the running sum while
// staying within the range bound, making the variance process genuinely
// path-dependent.
struct SyntheticMartingale {
  enum class Family { centered_bernoulli, symmetric_uniform };
  Family family = Family::centered_bernoulli;
  double range = 1.0;  // |X_t| <= range
  double bernoulli_p = 0.5;
  bool history_driven_scale = false;
  std::int64_t horizon = 100;
};

struct MartingalePath {
  double sum = 0.0;       // M_t
  double variance = 0.0;  // accumulated conditional variance V_t
};

MartingalePath simulate_martingale(const SyntheticMartingale& spec, Pcg32& rng);

// Monte Carlo estimate of E exp(lambda M - (e-2) lambda^2 V), which must not
// exceed 1 for admissible lambda in [0, 1/range]. pass allows three standard
// errors of slack above 1.
struct MgfCheckResult {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  double lambda = 0.0;
  bool pass = false;
};

MgfCheckResult mgf_check(const SyntheticMartingale& spec, double lambda,
                         std::int64_t num_samples, std::uint64_t seed);

// One evaluated inequality instance.
struct InequalityCase {
  double value = 0.0;
  double bound = 0.0;
  double slack() const { return bound - value; }
  bool holds() const { return value <= bound; }
};

// E_rho[phi] <= KL(rho||mu) + ln E_mu[e^phi], exact over finite sets of at
// most 64 hypotheses.
InequalityCase change_of_measure_case(std::span<const double> phi, const ArmDistribution& mu,
                                      const ArmDistribution& rho);

// Expected-reward loss of mixing toward uniform: R(rho) - R(smooth(rho,eps))
// bounded by K * eps.
InequalityCase smoothing_gap_case(const BanditEnv& env, const ArmDistribution& rho, double eps);

// sum_i x_i e^(-a x_i) / sum_j e^(-a x_j) <= ln(n)/a for non-negative x with
// min 0.
InequalityCase expsum_bound_case(std::span<const double> x, double alpha);

// Weighted empirical regret of the unsmoothed exponential-weights mixture
// against its ln(K)/gamma cap.
InequalityCase exp3_empirical_regret_case(const EstimatorState& est, const BanditEnv& env,
                                          double gamma);

// Gap between the unconstrained numeric maximum of the exponential-sum ratio
// over n = 3 and the maximum with all nonzero entries equal; the bound's
// derivation claims the two coincide.
double expsum_tightness_gap(double alpha);

struct SuiteResult {
  std::string name;
  std::int64_t cases = 0;
  std::int64_t violations = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  bool pass() const { return violations == 0; }
};

SuiteResult run_change_of_measure_suite(std::int64_t cases, std::uint64_t seed);
SuiteResult run_smoothing_gap_suite(std::int64_t cases, std::uint64_t seed);
SuiteResult run_expsum_suite(std::int64_t cases, std::uint64_t seed);
// Random estimator states plus checkpointed simulated spectrum runs.
SuiteResult run_exp3_regret_cap_suite(std::int64_t cases, std::uint64_t seed);

// Shared setup for the coverage studies: spectrum-strategy runs on a
// Bernoulli environment, checkpointed with checkpoint_schedule.
struct CoverageConfig {
  std::vector<double> biases{0.5, 0.6};
  std::int64_t horizon = 2000;
  std::int64_t num_runs = 1000;
  double delta = 0.05;
  Exp3SpectrumParams params;
  std::uint64_t seed = 1;
};

struct CoverageResult {
  std::int64_t num_runs = 0;
  std::int64_t violated_runs = 0;
  double fraction = 0.0;
  std::int64_t checked_points = 0;  // (checkpoint, probe) pairs evaluated
  std::int64_t skipped_points = 0;  // checkpoints with inadmissible lambda
  double delta = 0.0;
  bool pass = false;  // fraction <= delta
};

// Mixture-deviation coverage: at admissible checkpoints, |t (regret gap)| of
// uniform, played, and point-mass mixtures against the pac-bayes bound with
// a preset lambda schedule and the exact variance process. The failure
// fraction across runs must stay within delta.
CoverageResult deviation_coverage_check(const CoverageConfig& config);

// Coverage of the closed-form deviation width at floor-condition
// checkpoints; the per-arm sup is exact for the all-mixtures claim.
CoverageResult regret_deviation_coverage_check(const CoverageConfig& config);

// Report plumbing for the lab CLI.
struct LabRow {
  std::string name;
  std::int64_t cases = 0;
  std::int64_t violations = 0;
  double worst_slack = 0.0;
  bool pass = false;
  std::string detail;
};

struct LabOptions {
  std::int64_t suite_cases = 100000;
  std::int64_t mgf_samples = 1000000;
  std::int64_t coverage_runs = 1000;
  std::int64_t coverage_horizon = 2000;
  std::uint64_t seed = 7;
};

struct LabReport {
  std::vector<LabRow> rows;
  bool all_pass() const;
};

LabReport run_concentration_lab(const LabOptions& options);
std::string lab_report_text(const LabReport& report);
std::string lab_report_csv(const LabReport& report);

}  // namespace banditlab
