#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "banditlab/core.hpp"
#include "banditlab/estimators.hpp"

// Sampling strategies for the simulator.
//
// The central family is a spectrum of exponential-weights players driven by
// importance-weighted reward means hatR:
//   weights(a)  proportional to exp(gamma_t * hatR(a))
//   played(a) = (1 - K * eps_{t+1}) * weights(a) + eps_{t+1}
// with uniform warm-start rounds while t <= K. The inverse temperature
// gamma_t and the exploration floor eps_t follow power schedules in t and K;
// gamma -> infinity collapses the softmax to an argmax and is implemented as
// a separate greedy path so the limit is exact rather than an overflow
// accident. Baselines: UCB1 (deterministic index policy) and a restarting
// exponential-weights variant with doubling epochs and per-epoch confidence
// parameters, kept faithful to its published parameterization.

namespace banditlab {

// value = coef * K^k_exp * t^t_exp
struct PowerSchedule {
  double coef = 1.0;
  double k_exp = 0.0;
  double t_exp = 0.0;
  double operator()(int num_arms, std::int64_t t) const;
};

struct Exp3SpectrumParams {
  // cube_root: eps_t = K^(-2/3) t^(-1/3), the schedule the regret analysis
  // uses. sqrt: eps_t = (K t)^(-1/2), the schedule used in the studies.
  enum class EpsMode { cube_root, sqrt, custom };
  // cube_root: gamma_t = K^(-1/3) t^(1/3) sqrt(ln K). sqrt:
  // gamma_t = sqrt(t ln K / K). infinity selects the greedy path.
  enum class GammaMode { cube_root, sqrt, infinity, custom };

  EpsMode eps_mode = EpsMode::sqrt;
  GammaMode gamma_mode = GammaMode::sqrt;
  PowerSchedule eps_custom;
  PowerSchedule gamma_custom;

  double epsilon(int num_arms, std::int64_t t) const;
  double gamma(int num_arms, std::int64_t t) const;  // infinity mode throws
  // Rejects schedules that are increasing in t, have non-positive
  // coefficients, or break K * eps_{K+1} <= 1.
  void validate(int num_arms) const;
};

// Softmax of gamma * hatR with the max shifted out before exponentiation, so
// any finite inputs are safe. gamma must be finite and >= 0.
ArmDistribution exp3_weights(std::span<const double> hat_r, double gamma);
void exp3_weights_into(std::span<const double> hat_r, double gamma, std::span<double> out);

// (1 - K eps) * rho + eps per arm. Requires 0 <= K * eps <= 1; the result
// keeps mass at least eps on every arm.
ArmDistribution smooth(const ArmDistribution& rho, double eps);
void smooth_into(std::span<const double> rho, double eps, std::span<double> out);

// Mass 1 - (K-1) eps on the lowest-index argmax of hat_r, eps elsewhere.
// This equals smooth(point_mass(argmax), eps), the exact gamma -> infinity
// limit of the spectrum.
ArmDistribution epsilon_greedy_policy(std::span<const double> hat_r, double eps);

// Policy for the next round t (1-based) from the estimator state after round
// t-1: uniform while t <= K, afterwards smooth(weights(gamma_{t-1} * hatR),
// eps_t), or the greedy path when gamma is infinite. Weights use the raw
// empirical means; shifting them by the best arm's mean would change nothing.
ArmDistribution exp3_spectrum_policy(const EstimatorState& state, std::int64_t t,
                                     const Exp3SpectrumParams& params);

// UCB1 arm choice at round t (1-based): the first K rounds sweep the arms in
// index order, afterwards the lowest-index argmax of
// mean[a] + sqrt(2 ln t / counts[a]).
int ucb1_policy(std::span<const std::int64_t> counts, std::span<const double> means,
                std::int64_t t);

// Round-by-round player interface used by the experiment runner. policy(t)
// must be called before observe(t, ...) for the same t; the returned
// reference stays valid until the next policy() call.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual const std::string& name() const = 0;
  virtual const ArmDistribution& policy(std::int64_t t, const EstimatorState& est) = 0;
  virtual void observe(std::int64_t t, int arm, double reward);
  // Scheduled minimal arm mass of policy(t), when the strategy guarantees
  // one. Strategies without a floor (UCB1) return nullopt.
  virtual std::optional<double> epsilon_floor(std::int64_t t) const;
  // False for strategies whose policies can lack full support; the runner
  // then skips importance-weighted bookkeeping.
  virtual bool supports_weighted_estimator() const { return true; }
  virtual void reset() = 0;
};

class Exp3SpectrumStrategy final : public Strategy {
 public:
  Exp3SpectrumStrategy(std::string name, int num_arms, Exp3SpectrumParams params);
  const std::string& name() const override { return name_; }
  const ArmDistribution& policy(std::int64_t t, const EstimatorState& est) override;
  std::optional<double> epsilon_floor(std::int64_t t) const override;
  void reset() override {}
  const Exp3SpectrumParams& params() const { return params_; }

 private:
  std::string name_;
  int num_arms_;
  Exp3SpectrumParams params_;
  std::vector<double> hat_r_;
  std::vector<double> buf_;
  ArmDistribution dist_;
};

class Ucb1Strategy final : public Strategy {
 public:
  Ucb1Strategy(std::string name, int num_arms);
  const std::string& name() const override { return name_; }
  const ArmDistribution& policy(std::int64_t t, const EstimatorState& est) override;
  void observe(std::int64_t t, int arm, double reward) override;
  std::optional<double> epsilon_floor(std::int64_t) const override { return std::nullopt; }
  bool supports_weighted_estimator() const override { return false; }
  void reset() override;
  std::span<const std::int64_t> counts() const { return counts_; }
  std::span<const double> means() const { return means_; }

 private:
  std::string name_;
  int num_arms_;
  std::vector<std::int64_t> counts_;
  std::vector<double> sums_;
  std::vector<double> means_;
  ArmDistribution dist_;
};

// Restarting exponential-weights baseline: epochs r = 0, 1, ... of length
// 2^r rounds. Epoch r fixes
//   delta_r = delta / ((r+1)(r+2))
//   alpha_r = 2 sqrt(ln(K T_r / delta_r))
//   gamma_r = min(3/5, 2 sqrt(3 K ln K / (5 T_r)))
// plays p(a) = (1-gamma_r) w(a)/W + gamma_r/K and after each round updates
// every arm's weight by exp((gamma_r/(3K)) (xhat(a) + alpha_r/(p(a)
// sqrt(K T_r)))), where xhat is the importance-weighted reward. Weights are
// rescaled by their maximum each round to keep them bounded.
class Exp3P1Strategy final : public Strategy {
 public:
  Exp3P1Strategy(std::string name, int num_arms, double delta);
  const std::string& name() const override { return name_; }
  const ArmDistribution& policy(std::int64_t t, const EstimatorState& est) override;
  void observe(std::int64_t t, int arm, double reward) override;
  std::optional<double> epsilon_floor(std::int64_t t) const override;
  void reset() override;

  int epoch() const { return epoch_; }
  double epoch_gamma() const { return gamma_; }
  double epoch_alpha() const { return alpha_; }
  double epoch_delta() const { return delta_r_; }

 private:
  void start_epoch(int r);

  std::string name_;
  int num_arms_;
  double delta_;
  int epoch_ = 0;
  std::int64_t epoch_len_ = 1;
  std::int64_t rounds_in_epoch_ = 0;
  double delta_r_ = 0.0;
  double alpha_ = 0.0;
  double gamma_ = 0.0;
  std::vector<double> weights_;
  std::vector<double> probs_;
  ArmDistribution dist_;
};

// Builds a strategy from its config name and parameter map; unknown names or
// parameter keys are rejected.
std::unique_ptr<Strategy> make_strategy(const std::string& name,
                                        const std::map<std::string, std::string>& params,
                                        int num_arms);

}  // namespace banditlab
