#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "banditlab/rng.hpp"

namespace banditlab {

// Probabilities must stay within this distance of a proper distribution; the
// same tolerance is reused wherever normalization is checked.
inline constexpr double kNormalizationTol = 1e-12;

// Probability distribution over at least two arms. Validated on every
// mutation, so downstream code can rely on non-negative entries summing to 1.
class ArmDistribution {
 public:
  explicit ArmDistribution(std::vector<double> probs);
  static ArmDistribution uniform(int num_arms);
  static ArmDistribution point_mass(int num_arms, int arm);

  int num_arms() const { return static_cast<int>(probs_.size()); }
  double operator[](int arm) const { return probs_[static_cast<std::size_t>(arm)]; }
  const std::vector<double>& probs() const { return probs_; }

  // Replaces the probabilities in place; same validation as the constructor.
  void assign(std::span<const double> probs);

 private:
  ArmDistribution() = default;
  static void validate(std::span<const double> probs);
  std::vector<double> probs_;
};

// Reward environment with bounded rewards in [0, 1] and fixed per-arm
// distributions. second_moment() is what makes exact variance bookkeeping
// possible without sampling.
class BanditEnv {
 public:
  virtual ~BanditEnv() = default;
  virtual int num_arms() const = 0;
  virtual double mean(int arm) const = 0;
  virtual double second_moment(int arm) const = 0;
  virtual double draw(int arm, Pcg32& rng) const = 0;

  // Lowest index among maximal-mean arms.
  int best_arm() const;
  // gap(a) = mean(best) - mean(a), zero for the best arm.
  double gap(int arm) const;
};

class BernoulliBanditEnv final : public BanditEnv {
 public:
  explicit BernoulliBanditEnv(std::vector<double> biases);

  int num_arms() const override { return static_cast<int>(biases_.size()); }
  double mean(int arm) const override { return biases_[static_cast<std::size_t>(arm)]; }
  double second_moment(int arm) const override { return biases_[static_cast<std::size_t>(arm)]; }
  double draw(int arm, Pcg32& rng) const override {
    return rng.next_bernoulli(biases_[static_cast<std::size_t>(arm)]);
  }
  const std::vector<double>& biases() const { return biases_; }

 private:
  std::vector<double> biases_;
};

// One observed round: the distribution that was played, the arm it produced
// and the reward the environment returned for that arm.
struct RoundRecord {
  std::int64_t t = 0;
  const ArmDistribution* policy = nullptr;
  int arm = -1;
  double reward = 0.0;
};

// Inverse-CDF draw; consumes exactly one uniform. The running sum is clamped
// so a terminal rounding deficit still lands on the last arm.
int sample_arm(const ArmDistribution& policy, Pcg32& rng);

// Per-round expected regret of playing `policy`: sum_a policy(a) * gap(a).
double expected_regret_of_policy(const BanditEnv& env, const ArmDistribution& policy);

// Rounds at which metrics are recorded: every round up to dense_until, then
// geometric with the given ratio (> 1), strictly increasing, and always
// including the horizon itself.
std::vector<std::int64_t> checkpoint_schedule(std::int64_t horizon, std::int64_t dense_until,
                                              double ratio);

}  // namespace banditlab
