#include "banditlab/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace banditlab {

namespace {

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("strategy parameter " + key + ": bad number '" + value + "'");
  }
}

int lowest_argmax(std::span<const double> values) {
  int best = 0;
  for (int a = 1; a < static_cast<int>(values.size()); ++a) {
    if (values[static_cast<std::size_t>(a)] > values[static_cast<std::size_t>(best)]) best = a;
  }
  return best;
}

}  // namespace

double PowerSchedule::operator()(int num_arms, std::int64_t t) const {
  return coef * std::pow(static_cast<double>(num_arms), k_exp) *
         std::pow(static_cast<double>(t), t_exp);
}

double Exp3SpectrumParams::epsilon(int num_arms, std::int64_t t) const {
  double K = static_cast<double>(num_arms);
  double td = static_cast<double>(t);
  switch (eps_mode) {
    case EpsMode::cube_root:
      return std::pow(K, -2.0 / 3.0) * std::pow(td, -1.0 / 3.0);
    case EpsMode::sqrt:
      return 1.0 / std::sqrt(K * td);
    case EpsMode::custom:
      return eps_custom(num_arms, t);
  }
  throw std::logic_error("epsilon: bad mode");
}

double Exp3SpectrumParams::gamma(int num_arms, std::int64_t t) const {
  double K = static_cast<double>(num_arms);
  double td = static_cast<double>(t);
  switch (gamma_mode) {
    case GammaMode::cube_root:
      return std::pow(K, -1.0 / 3.0) * std::pow(td, 1.0 / 3.0) * std::sqrt(std::log(K));
    case GammaMode::sqrt:
      return std::sqrt(td * std::log(K) / K);
    case GammaMode::infinity:
      throw std::logic_error("gamma: infinite mode has no finite value");
    case GammaMode::custom:
      return gamma_custom(num_arms, t);
  }
  throw std::logic_error("gamma: bad mode");
}

void Exp3SpectrumParams::validate(int num_arms) const {
  if (num_arms < 2) throw std::invalid_argument("spectrum params: need at least 2 arms");
  if (eps_mode == EpsMode::custom) {
    if (!(eps_custom.coef > 0.0)) {
      throw std::invalid_argument("spectrum params: epsilon coefficient must be positive");
    }
    if (eps_custom.t_exp > 0.0) {
      throw std::invalid_argument("spectrum params: epsilon must not increase with t");
    }
  }
  if (gamma_mode == GammaMode::custom && !(gamma_custom.coef >= 0.0)) {
    throw std::invalid_argument("spectrum params: gamma coefficient must be non-negative");
  }
  // Smoothing first applies at round K+1; a decreasing schedule therefore
  // only needs K * eps <= 1 there.
  double e1 = epsilon(num_arms, num_arms + 1);
  if (!(e1 > 0.0) || static_cast<double>(num_arms) * e1 > 1.0 + kNormalizationTol) {
    throw std::invalid_argument("spectrum params: K * epsilon exceeds 1 at round K+1");
  }
}

void exp3_weights_into(std::span<const double> hat_r, double gamma, std::span<double> out) {
  if (hat_r.size() != out.size()) throw std::invalid_argument("exp3_weights: size mismatch");
  if (hat_r.size() < 2) throw std::invalid_argument("exp3_weights: need at least 2 arms");
  if (!std::isfinite(gamma) || gamma < 0.0) {
    throw std::invalid_argument("exp3_weights: gamma must be finite and non-negative");
  }
  double zmax = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < hat_r.size(); ++a) {
    if (!std::isfinite(hat_r[a])) throw std::invalid_argument("exp3_weights: non-finite input");
    zmax = std::max(zmax, gamma * hat_r[a]);
  }
  double sum = 0.0;
  for (std::size_t a = 0; a < hat_r.size(); ++a) {
    out[a] = std::exp(gamma * hat_r[a] - zmax);
    sum += out[a];
  }
  for (std::size_t a = 0; a < out.size(); ++a) out[a] /= sum;
}

ArmDistribution exp3_weights(std::span<const double> hat_r, double gamma) {
  std::vector<double> out(hat_r.size());
  exp3_weights_into(hat_r, gamma, out);
  return ArmDistribution(std::move(out));
}

void smooth_into(std::span<const double> rho, double eps, std::span<double> out) {
  if (rho.size() != out.size()) throw std::invalid_argument("smooth: size mismatch");
  double K = static_cast<double>(rho.size());
  if (!(eps >= 0.0) || K * eps > 1.0 + kNormalizationTol) {
    throw std::invalid_argument("smooth: need 0 <= K * eps <= 1");
  }
  double keep = 1.0 - K * eps;
  for (std::size_t a = 0; a < rho.size(); ++a) out[a] = keep * rho[a] + eps;
}

ArmDistribution smooth(const ArmDistribution& rho, double eps) {
  std::vector<double> out(static_cast<std::size_t>(rho.num_arms()));
  smooth_into(rho.probs(), eps, out);
  return ArmDistribution(std::move(out));
}

ArmDistribution epsilon_greedy_policy(std::span<const double> hat_r, double eps) {
  if (hat_r.size() < 2) throw std::invalid_argument("epsilon_greedy: need at least 2 arms");
  double K = static_cast<double>(hat_r.size());
  if (!(eps >= 0.0) || K * eps > 1.0 + kNormalizationTol) {
    throw std::invalid_argument("epsilon_greedy: need 0 <= K * eps <= 1");
  }
  std::vector<double> out(hat_r.size(), eps);
  int leader = lowest_argmax(hat_r);
  out[static_cast<std::size_t>(leader)] = 1.0 - (K - 1.0) * eps;
  return ArmDistribution(std::move(out));
}

ArmDistribution exp3_spectrum_policy(const EstimatorState& state, std::int64_t t,
                                     const Exp3SpectrumParams& params) {
  int K = state.num_arms();
  if (t < 1) throw std::invalid_argument("exp3_spectrum_policy: t must be >= 1");
  params.validate(K);
  if (t <= K) return ArmDistribution::uniform(K);
  std::vector<double> hat_r(static_cast<std::size_t>(K));
  for (int a = 0; a < K; ++a) hat_r[static_cast<std::size_t>(a)] = state.empirical_mean(a);
  double eps = params.epsilon(K, t);
  if (params.gamma_mode == Exp3SpectrumParams::GammaMode::infinity) {
    return epsilon_greedy_policy(hat_r, eps);
  }
  return smooth(exp3_weights(hat_r, params.gamma(K, t - 1)), eps);
}

int ucb1_policy(std::span<const std::int64_t> counts, std::span<const double> means,
                std::int64_t t) {
  if (counts.size() != means.size() || counts.size() < 2) {
    throw std::invalid_argument("ucb1_policy: bad inputs");
  }
  if (t < 1) throw std::invalid_argument("ucb1_policy: t must be >= 1");
  int K = static_cast<int>(counts.size());
  if (t <= K) return static_cast<int>(t - 1);
  double logt = std::log(static_cast<double>(t));
  int best = -1;
  double best_index = 0.0;
  for (int a = 0; a < K; ++a) {
    std::int64_t n = counts[static_cast<std::size_t>(a)];
    if (n <= 0) throw std::invalid_argument("ucb1_policy: unpulled arm after the sweep");
    double idx = means[static_cast<std::size_t>(a)] + std::sqrt(2.0 * logt / static_cast<double>(n));
    if (best < 0 || idx > best_index) {
      best = a;
      best_index = idx;
    }
  }
  return best;
}

void Strategy::observe(std::int64_t, int, double) {}

std::optional<double> Strategy::epsilon_floor(std::int64_t) const { return std::nullopt; }

Exp3SpectrumStrategy::Exp3SpectrumStrategy(std::string name, int num_arms,
                                           Exp3SpectrumParams params)
    : name_(std::move(name)),
      num_arms_(num_arms),
      params_(params),
      hat_r_(static_cast<std::size_t>(num_arms), 0.0),
      buf_(static_cast<std::size_t>(num_arms), 0.0),
      dist_(ArmDistribution::uniform(num_arms)) {
  params_.validate(num_arms);
}

const ArmDistribution& Exp3SpectrumStrategy::policy(std::int64_t t, const EstimatorState& est) {
  int K = num_arms_;
  if (t <= K) {
    dist_ = ArmDistribution::uniform(K);
    return dist_;
  }
  for (int a = 0; a < K; ++a) hat_r_[static_cast<std::size_t>(a)] = est.empirical_mean(a);
  double eps = params_.epsilon(K, t);
  if (params_.gamma_mode == Exp3SpectrumParams::GammaMode::infinity) {
    dist_ = epsilon_greedy_policy(hat_r_, eps);
    return dist_;
  }
  double gamma = params_.gamma(K, t - 1);
  if (params_.eps_mode == Exp3SpectrumParams::EpsMode::cube_root &&
      params_.gamma_mode == Exp3SpectrumParams::GammaMode::custom) {
    // The cube-root exploration schedule is only analyzable with an
    // inverse temperature at or above its matching growth rate.
    double floor = std::pow(static_cast<double>(K), -1.0 / 3.0) *
                   std::pow(static_cast<double>(t - 1), 1.0 / 3.0) *
                   std::sqrt(std::log(static_cast<double>(K)));
    if (gamma + 1e-12 * (1.0 + floor) < floor) {
      throw std::invalid_argument("spectrum policy: gamma below the cube-root schedule floor");
    }
  }
  exp3_weights_into(hat_r_, gamma, buf_);
  smooth_into(buf_, eps, buf_);
  dist_.assign(buf_);
  return dist_;
}

std::optional<double> Exp3SpectrumStrategy::epsilon_floor(std::int64_t t) const {
  if (t <= num_arms_) return 1.0 / static_cast<double>(num_arms_);
  return params_.epsilon(num_arms_, t);
}

Ucb1Strategy::Ucb1Strategy(std::string name, int num_arms)
    : name_(std::move(name)),
      num_arms_(num_arms),
      counts_(static_cast<std::size_t>(num_arms), 0),
      sums_(static_cast<std::size_t>(num_arms), 0.0),
      means_(static_cast<std::size_t>(num_arms), 0.0),
      dist_(ArmDistribution::uniform(num_arms)) {
  if (num_arms < 2) throw std::invalid_argument("Ucb1Strategy: need at least 2 arms");
}

const ArmDistribution& Ucb1Strategy::policy(std::int64_t t, const EstimatorState&) {
  int arm = ucb1_policy(counts_, means_, t);
  dist_ = ArmDistribution::point_mass(num_arms_, arm);
  return dist_;
}

void Ucb1Strategy::observe(std::int64_t, int arm, double reward) {
  std::size_t a = static_cast<std::size_t>(arm);
  counts_[a] += 1;
  sums_[a] += reward;
  means_[a] = sums_[a] / static_cast<double>(counts_[a]);
}

void Ucb1Strategy::reset() {
  std::fill(counts_.begin(), counts_.end(), 0);
  std::fill(sums_.begin(), sums_.end(), 0.0);
  std::fill(means_.begin(), means_.end(), 0.0);
}

Exp3P1Strategy::Exp3P1Strategy(std::string name, int num_arms, double delta)
    : name_(std::move(name)),
      num_arms_(num_arms),
      delta_(delta),
      weights_(static_cast<std::size_t>(num_arms), 1.0),
      probs_(static_cast<std::size_t>(num_arms), 0.0),
      dist_(ArmDistribution::uniform(num_arms)) {
  if (num_arms < 2) throw std::invalid_argument("Exp3P1Strategy: need at least 2 arms");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("Exp3P1Strategy: delta must lie in (0, 1)");
  }
  start_epoch(0);
}

void Exp3P1Strategy::start_epoch(int r) {
  epoch_ = r;
  epoch_len_ = std::int64_t{1} << r;
  rounds_in_epoch_ = 0;
  double Tr = static_cast<double>(epoch_len_);
  double K = static_cast<double>(num_arms_);
  delta_r_ = delta_ / (static_cast<double>(r + 1) * static_cast<double>(r + 2));
  alpha_ = 2.0 * std::sqrt(std::log(K * Tr / delta_r_));
  gamma_ = std::min(0.6, 2.0 * std::sqrt(3.0 * K * std::log(K) / (5.0 * Tr)));
  std::fill(weights_.begin(), weights_.end(), 1.0);
}

const ArmDistribution& Exp3P1Strategy::policy(std::int64_t, const EstimatorState&) {
  double wsum = 0.0;
  for (double w : weights_) wsum += w;
  double K = static_cast<double>(num_arms_);
  for (std::size_t a = 0; a < weights_.size(); ++a) {
    probs_[a] = (1.0 - gamma_) * weights_[a] / wsum + gamma_ / K;
  }
  dist_.assign(probs_);
  return dist_;
}

void Exp3P1Strategy::observe(std::int64_t, int arm, double reward) {
  double K = static_cast<double>(num_arms_);
  double scale = gamma_ / (3.0 * K);
  double bonus_norm = std::sqrt(K * static_cast<double>(epoch_len_));
  double wmax = 0.0;
  for (int a = 0; a < num_arms_; ++a) {
    std::size_t i = static_cast<std::size_t>(a);
    double xhat = (a == arm) ? reward / probs_[i] : 0.0;
    weights_[i] *= std::exp(scale * (xhat + alpha_ / (probs_[i] * bonus_norm)));
    wmax = std::max(wmax, weights_[i]);
  }
  // Rescaling does not change the played distribution and keeps the weights
  // away from overflow within an epoch.
  for (double& w : weights_) w /= wmax;
  if (++rounds_in_epoch_ == epoch_len_) start_epoch(epoch_ + 1);
}

std::optional<double> Exp3P1Strategy::epsilon_floor(std::int64_t) const {
  return gamma_ / static_cast<double>(num_arms_);
}

void Exp3P1Strategy::reset() { start_epoch(0); }

std::unique_ptr<Strategy> make_strategy(const std::string& name,
                                        const std::map<std::string, std::string>& params,
                                        int num_arms) {
  auto reject_unknown = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : params) {
      bool ok = false;
      for (const char* k : allowed) ok = ok || key == k;
      if (!ok) throw std::invalid_argument("strategy " + name + ": unknown parameter " + key);
    }
  };

  if (name == "exp3") {
    reject_unknown({"epsilon_schedule", "gamma_schedule", "epsilon_coef", "epsilon_k_exp",
                    "epsilon_t_exp", "gamma_coef", "gamma_k_exp", "gamma_t_exp"});
    Exp3SpectrumParams p;
    auto get = [&](const char* key) -> const std::string* {
      auto it = params.find(key);
      return it == params.end() ? nullptr : &it->second;
    };
    if (const std::string* v = get("epsilon_schedule")) {
      if (*v == "cube_root") p.eps_mode = Exp3SpectrumParams::EpsMode::cube_root;
      else if (*v == "sqrt") p.eps_mode = Exp3SpectrumParams::EpsMode::sqrt;
      else if (*v == "custom") p.eps_mode = Exp3SpectrumParams::EpsMode::custom;
      else throw std::invalid_argument("exp3: unknown epsilon_schedule '" + *v + "'");
    }
    if (const std::string* v = get("gamma_schedule")) {
      if (*v == "cube_root") p.gamma_mode = Exp3SpectrumParams::GammaMode::cube_root;
      else if (*v == "sqrt") p.gamma_mode = Exp3SpectrumParams::GammaMode::sqrt;
      else if (*v == "infinity") p.gamma_mode = Exp3SpectrumParams::GammaMode::infinity;
      else if (*v == "custom") p.gamma_mode = Exp3SpectrumParams::GammaMode::custom;
      else throw std::invalid_argument("exp3: unknown gamma_schedule '" + *v + "'");
    }
    if (const std::string* v = get("epsilon_coef")) p.eps_custom.coef = parse_double("epsilon_coef", *v);
    if (const std::string* v = get("epsilon_k_exp")) p.eps_custom.k_exp = parse_double("epsilon_k_exp", *v);
    if (const std::string* v = get("epsilon_t_exp")) p.eps_custom.t_exp = parse_double("epsilon_t_exp", *v);
    if (const std::string* v = get("gamma_coef")) p.gamma_custom.coef = parse_double("gamma_coef", *v);
    if (const std::string* v = get("gamma_k_exp")) p.gamma_custom.k_exp = parse_double("gamma_k_exp", *v);
    if (const std::string* v = get("gamma_t_exp")) p.gamma_custom.t_exp = parse_double("gamma_t_exp", *v);
    return std::make_unique<Exp3SpectrumStrategy>(name, num_arms, p);
  }
  if (name == "exp3p1") {
    reject_unknown({"delta"});
    double delta = 0.001;
    auto it = params.find("delta");
    if (it != params.end()) delta = parse_double("delta", it->second);
    return std::make_unique<Exp3P1Strategy>(name, num_arms, delta);
  }
  if (name == "ucb1") {
    reject_unknown({});
    return std::make_unique<Ucb1Strategy>(name, num_arms);
  }
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

}  // namespace banditlab
