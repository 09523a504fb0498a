#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "banditlab/core.hpp"

namespace banditlab {

// Importance-weighted reward sample for `target_arm` given that `chosen_arm`
// was played from `policy`: reward / policy(target) when the arms coincide,
// otherwise 0. Requires positive mass on the chosen arm.
double importance_weighted_sample(double reward, int target_arm, int chosen_arm,
                                  const ArmDistribution& policy);

// Expected weighted average sum_a rho(a) * values[a].
double weighted_average(std::span<const double> values, const ArmDistribution& rho);

// One-round conditional variance of the best-vs-`arm` weighted reward
// difference under `policy`, taken before the arm is drawn:
//   E[R^2 | arm]/policy(arm) + E[R^2 | best]/policy(best) - gap(arm)^2,
// exactly 0 for the best arm itself. Requires positive mass on both arms.
double conditional_variance_increment(const ArmDistribution& policy, const BanditEnv& env,
                                      int arm);

// The same quantity after dropping the gap^2 term and relaxing the second
// moments to the reward range bound 1:
//   1/policy(arm) + 1/policy(best)  (2/policy(best) for the best arm).
double relaxed_variance_increment(const ArmDistribution& policy, const BanditEnv& env, int arm);

// Running importance-weighted state for one replication. Per arm it keeps the
// weighted reward sum, the exact cumulative conditional variance, the relaxed
// cumulative variance and the realized squared deviations; plus the smallest
// policy mass seen so far, which is the tightest admissible exploration floor
// for variance-cap checks.
class EstimatorState {
 public:
  explicit EstimatorState(int num_arms);

  // Folds in one round. The record's policy must have full support.
  void update(const RoundRecord& rec, const BanditEnv& env);

  std::int64_t rounds() const { return t_; }
  int num_arms() const { return static_cast<int>(weighted_sums_.size()); }

  double weighted_sum(int arm) const { return weighted_sums_[static_cast<std::size_t>(arm)]; }
  // Empirical mean weighted_sum / t; 0 before any round.
  double empirical_mean(int arm) const;
  double analytic_variance(int arm) const {
    return analytic_variance_[static_cast<std::size_t>(arm)];
  }
  double relaxed_variance(int arm) const {
    return relaxed_variance_[static_cast<std::size_t>(arm)];
  }
  double empirical_sq_dev(int arm) const {
    return empirical_sq_dev_[static_cast<std::size_t>(arm)];
  }
  // 1.0 until the first update.
  double min_mass_seen() const { return min_mass_seen_; }

 private:
  std::int64_t t_ = 0;
  double min_mass_seen_ = 1.0;
  std::vector<double> weighted_sums_;
  std::vector<double> analytic_variance_;
  std::vector<double> relaxed_variance_;
  std::vector<double> empirical_sq_dev_;
};

// Empirical regret estimate mean(best) - mean(arm); exactly 0 for the best
// arm so downstream weight computations see a true zero.
double empirical_regret(const EstimatorState& state, const BanditEnv& env, int arm);

}  // namespace banditlab
