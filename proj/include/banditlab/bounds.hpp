#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>

#include "banditlab/core.hpp"

// Closed-form deviation and regret bounds for importance-weighted play, plus
// their technical admissibility conditions. Everything here is a pure
// function of its inputs; nothing simulates.

namespace banditlab {

// Multiplier in front of lambda^2 * variance terms in the shifted moment
// bound exp(lambda X - (e-2) lambda^2 Var); kept at full double precision.
inline const double kBernsteinFactor = std::numbers::e_v<double> - 2.0;

// KL(rho || mu); 0 ln 0 terms drop, mass of rho where mu vanishes is
// rejected.
double kl_divergence(const ArmDistribution& rho, const ArmDistribution& mu);

// kl + 2 ln(t+1) + ln(2/delta), the log confidence budget that recurs in all
// bounds below. t >= 1, delta in (0,1).
double deviation_log_budget(double kl, std::int64_t t, double delta);

// budget / lambda + (e-2) lambda V, valid for admissible lambda.
double pac_bayes_bernstein_bound(double kl, std::int64_t t, double delta, double lambda,
                                 double variance);

// Minimizer sqrt(budget / ((e-2) V)) of the expression above. V = 0 is a
// signal to the caller, not an infinite answer, so it throws.
double optimal_lambda(double kl, std::int64_t t, double delta, double variance);

// Value of pac_bayes_bernstein_bound at the minimizer:
// 2 sqrt((e-2) V * budget).
double optimal_lambda_bound(double kl, std::int64_t t, double delta, double variance);

// Deviation width for the mean empirical-vs-true regret of any mixture after
// t rounds with exploration floor eps:
//   2 sqrt(2 (e-2) (ln K + 2 ln(t+1) + ln(2/delta)) / (t eps)).
// Feeds the theorem2_bound CSV column. Computed whether or not the floor
// condition holds; pair with exploration_condition_holds.
double empirical_regret_deviation_bound(std::int64_t t, int num_arms, double delta, double eps);

// (ln K + 2 ln(t+1) + ln(2/delta)) / (2 (e-2) t), the left side of the floor
// condition eps must dominate.
double exploration_condition_lhs(std::int64_t t, int num_arms, double delta);

// Floor condition behind the deviation width above; feeds the eq5_satisfied
// CSV column.
bool exploration_condition_holds(std::int64_t t, int num_arms, double delta, double eps);

// First t in [1, t_max] whose schedule value satisfies the floor condition,
// found by upward scan; empty when none does.
std::optional<std::int64_t> exploration_condition_threshold(
    int num_arms, double delta, const std::function<double(std::int64_t)>& eps_of_t,
    std::int64_t t_max);

// lambda <= 1 / range_bound, the admissibility constraint linking the
// deviation parameter to the martingale difference range.
bool lambda_condition_holds(double lambda, double range_bound);

// Cumulative variance cap 2 t / eps for importance-weighted differences when
// every policy so far kept mass >= eps on each arm; 0 at t = 0.
double importance_variance_cap(std::int64_t t, double eps);

// Per-round regret bound of the cube-root-schedule spectrum player:
//   (K/(t+1))^(1/3) (1 + sqrt(ln K) + 2 sqrt(2 (e-2) (ln K + 2 ln(t+1)
//   + ln(2/delta)))).
// Feeds the theorem3_bound CSV column.
double spectrum_regret_bound(std::int64_t t, int num_arms, double delta);

struct BoundParams {
  std::int64_t t = 1;
  int num_arms = 2;
  double delta = 0.05;
  double epsilon = 0.0;                 // exploration floor at t
  std::optional<double> lambda;         // deviation parameter, if evaluated
  std::optional<double> range_bound;    // martingale difference range cap
  std::optional<double> kl;             // defaults to ln K when absent
  std::optional<double> variance;       // cumulative variance, if known
};

// Everything evaluable from the given inputs, plus named condition flags.
// Conditions never abort evaluation; values are always filled in.
struct BoundReport {
  BoundParams inputs;
  double kl_value = 0.0;
  double deviation_width = 0.0;   // theorem2_bound column
  double spectrum_regret = 0.0;   // theorem3_bound column
  double variance_cap = 0.0;
  std::optional<double> pac_bayes;
  std::optional<double> lambda_opt;
  std::optional<double> balanced_bound;
  std::map<std::string, bool> conditions;
};

BoundReport make_bound_report(const BoundParams& params);

}  // namespace banditlab
