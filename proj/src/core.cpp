#include "banditlab/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace banditlab {

ArmDistribution::ArmDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  validate(probs_);
}

ArmDistribution ArmDistribution::uniform(int num_arms) {
  if (num_arms < 2) throw std::invalid_argument("uniform: need at least 2 arms");
  return ArmDistribution(std::vector<double>(static_cast<std::size_t>(num_arms),
                                             1.0 / static_cast<double>(num_arms)));
}

ArmDistribution ArmDistribution::point_mass(int num_arms, int arm) {
  if (num_arms < 2) throw std::invalid_argument("point_mass: need at least 2 arms");
  if (arm < 0 || arm >= num_arms) throw std::invalid_argument("point_mass: arm out of range");
  std::vector<double> p(static_cast<std::size_t>(num_arms), 0.0);
  p[static_cast<std::size_t>(arm)] = 1.0;
  return ArmDistribution(std::move(p));
}

void ArmDistribution::assign(std::span<const double> probs) {
  validate(probs);
  probs_.assign(probs.begin(), probs.end());
}

void ArmDistribution::validate(std::span<const double> probs) {
  if (probs.size() < 2) throw std::invalid_argument("ArmDistribution: need at least 2 arms");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument("ArmDistribution: negative or NaN probability " +
                                  std::to_string(p));
    }
    sum += p;
  }
  if (std::fabs(sum - 1.0) > kNormalizationTol) {
    throw std::invalid_argument("ArmDistribution: probabilities sum to " + std::to_string(sum));
  }
}

int BanditEnv::best_arm() const {
  int best = 0;
  double best_mean = mean(0);
  for (int a = 1; a < num_arms(); ++a) {
    if (mean(a) > best_mean) {
      best_mean = mean(a);
      best = a;
    }
  }
  return best;
}

double BanditEnv::gap(int arm) const { return mean(best_arm()) - mean(arm); }

BernoulliBanditEnv::BernoulliBanditEnv(std::vector<double> biases) : biases_(std::move(biases)) {
  if (biases_.size() < 2) throw std::invalid_argument("BernoulliBanditEnv: need at least 2 arms");
  for (double b : biases_) {
    if (!(b >= 0.0 && b <= 1.0)) {
      throw std::invalid_argument("BernoulliBanditEnv: bias outside [0, 1]");
    }
  }
}

int sample_arm(const ArmDistribution& policy, Pcg32& rng) {
  double u = rng.next_double();
  double cum = 0.0;
  int last = policy.num_arms() - 1;
  for (int a = 0; a < last; ++a) {
    cum += policy[a];
    if (u < cum) return a;
  }
  return last;
}

double expected_regret_of_policy(const BanditEnv& env, const ArmDistribution& policy) {
  if (policy.num_arms() != env.num_arms()) {
    throw std::invalid_argument("expected_regret_of_policy: arm count mismatch");
  }
  double best = env.mean(env.best_arm());
  double r = 0.0;
  for (int a = 0; a < policy.num_arms(); ++a) r += policy[a] * (best - env.mean(a));
  return r;
}

std::vector<std::int64_t> checkpoint_schedule(std::int64_t horizon, std::int64_t dense_until,
                                              double ratio) {
  if (horizon < 1) throw std::invalid_argument("checkpoint_schedule: horizon must be >= 1");
  if (dense_until < 1) throw std::invalid_argument("checkpoint_schedule: dense_until must be >= 1");
  if (!(ratio > 1.0)) throw std::invalid_argument("checkpoint_schedule: ratio must exceed 1");
  std::vector<std::int64_t> points;
  std::int64_t dense_end = std::min(horizon, dense_until);
  points.reserve(static_cast<std::size_t>(dense_end) + 64);
  for (std::int64_t t = 1; t <= dense_end; ++t) points.push_back(t);
  std::int64_t cur = dense_end;
  while (cur < horizon) {
    std::int64_t next = std::max(cur + 1, static_cast<std::int64_t>(
                                              std::floor(static_cast<double>(cur) * ratio)));
    cur = std::min(next, horizon);
    points.push_back(cur);
  }
  return points;
}

}  // namespace banditlab
