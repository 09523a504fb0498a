#include "banditlab/estimators.hpp"

#include <stdexcept>

namespace banditlab {

double importance_weighted_sample(double reward, int target_arm, int chosen_arm,
                                  const ArmDistribution& policy) {
  if (target_arm < 0 || target_arm >= policy.num_arms()) {
    throw std::invalid_argument("importance_weighted_sample: arm out of range");
  }
  if (chosen_arm != target_arm) return 0.0;
  double mass = policy[target_arm];
  if (mass <= 0.0) {
    throw std::invalid_argument("importance_weighted_sample: zero mass on chosen arm");
  }
  return reward / mass;
}

double weighted_average(std::span<const double> values, const ArmDistribution& rho) {
  if (static_cast<int>(values.size()) != rho.num_arms()) {
    throw std::invalid_argument("weighted_average: size mismatch");
  }
  double s = 0.0;
  for (int a = 0; a < rho.num_arms(); ++a) s += rho[a] * values[static_cast<std::size_t>(a)];
  return s;
}

double conditional_variance_increment(const ArmDistribution& policy, const BanditEnv& env,
                                      int arm) {
  int best = env.best_arm();
  if (arm == best) return 0.0;
  double pa = policy[arm];
  double pb = policy[best];
  if (pa <= 0.0 || pb <= 0.0) {
    throw std::invalid_argument("conditional_variance_increment: zero mass");
  }
  double gap = env.gap(arm);
  return env.second_moment(arm) / pa + env.second_moment(best) / pb - gap * gap;
}

double relaxed_variance_increment(const ArmDistribution& policy, const BanditEnv& env, int arm) {
  int best = env.best_arm();
  double pa = policy[arm];
  double pb = policy[best];
  if (pa <= 0.0 || pb <= 0.0) {
    throw std::invalid_argument("relaxed_variance_increment: zero mass");
  }
  return 1.0 / pa + 1.0 / pb;
}

EstimatorState::EstimatorState(int num_arms) {
  if (num_arms < 2) throw std::invalid_argument("EstimatorState: need at least 2 arms");
  weighted_sums_.assign(static_cast<std::size_t>(num_arms), 0.0);
  analytic_variance_.assign(static_cast<std::size_t>(num_arms), 0.0);
  relaxed_variance_.assign(static_cast<std::size_t>(num_arms), 0.0);
  empirical_sq_dev_.assign(static_cast<std::size_t>(num_arms), 0.0);
}

void EstimatorState::update(const RoundRecord& rec, const BanditEnv& env) {
  if (rec.policy == nullptr) throw std::invalid_argument("update: missing policy");
  const ArmDistribution& pi = *rec.policy;
  int K = num_arms();
  if (pi.num_arms() != K || env.num_arms() != K) {
    throw std::invalid_argument("update: arm count mismatch");
  }
  if (rec.arm < 0 || rec.arm >= K) throw std::invalid_argument("update: arm out of range");
  double min_mass = pi[0];
  for (int a = 1; a < K; ++a) min_mass = std::min(min_mass, pi[a]);
  if (min_mass <= 0.0) throw std::invalid_argument("update: policy lacks full support");

  int best = env.best_arm();
  double pb = pi[best];
  // Importance-weighted reward of the round for the arm that was played.
  double iw = rec.reward / pi[rec.arm];
  weighted_sums_[static_cast<std::size_t>(rec.arm)] += iw;

  for (int a = 0; a < K; ++a) {
    double pa = pi[a];
    relaxed_variance_[static_cast<std::size_t>(a)] += 1.0 / pa + 1.0 / pb;
    if (a == best) continue;
    double gap = env.gap(a);
    analytic_variance_[static_cast<std::size_t>(a)] +=
        env.second_moment(a) / pa + env.second_moment(best) / pb - gap * gap;
    // Realized deviation of the weighted best-vs-a difference from its mean.
    double diff = 0.0;
    if (rec.arm == best) {
      diff = iw;
    } else if (rec.arm == a) {
      diff = -iw;
    }
    double dev = diff - gap;
    empirical_sq_dev_[static_cast<std::size_t>(a)] += dev * dev;
  }
  min_mass_seen_ = std::min(min_mass_seen_, min_mass);
  ++t_;
}

double EstimatorState::empirical_mean(int arm) const {
  if (t_ == 0) return 0.0;
  return weighted_sums_[static_cast<std::size_t>(arm)] / static_cast<double>(t_);
}

double empirical_regret(const EstimatorState& state, const BanditEnv& env, int arm) {
  int best = env.best_arm();
  if (arm == best) return 0.0;
  return state.empirical_mean(best) - state.empirical_mean(arm);
}

}  // namespace banditlab
