#include "rtm/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "rtm/policies.hpp"

namespace rtm {

namespace {

bool blown(double lambda, double threshold) {
  return !std::isfinite(lambda) || std::fabs(lambda) > threshold;
}

}  // namespace

SimulationResult simulate(const SimulationConfig& config) {
  if (config.horizon < 2)
    throw std::invalid_argument("simulate: horizon must be >= 2");
  if (!std::isfinite(config.lambda0) || !std::isfinite(config.lambda1))
    throw std::invalid_argument("simulate: seed prices must be finite");
  if (config.model == ConsumptionModel::Static && !config.vdot_inverse)
    throw std::invalid_argument("simulate: Static model needs vdot_inverse");

  const std::size_t n = config.horizon;
  const MarketParams& p = config.params;
  const std::vector<double> d = config.demand.realize(n, p.alpha());
  const double thr = config.overflow_threshold;

  SimulationResult res;
  std::vector<double> lambda;
  std::vector<double> u;
  lambda.reserve(n);
  u.reserve(n);

  switch (config.model) {
    case ConsumptionModel::Static: {
      lambda.push_back(config.lambda0);
      for (std::size_t k = 0; k < n; ++k) {
        u.push_back(static_policy(lambda[k], config.vdot_inverse));
        if (k + 1 < n) {
          const double next = 2.0 * p.alpha() * u[k];
          if (blown(next, thr)) {
            res.overflowed = true;
            break;
          }
          lambda.push_back(next);
        }
      }
      break;
    }
    case ConsumptionModel::PriceMemory: {
      // The supplier projects the price-sensitive adjustment one step ahead
      // and adds the known demand of the hour being priced, so the price path
      // obeys lambda_k = -e*lambda_{k-1} + e*lambda_{k-2} + 2*alpha*d_k.
      lambda.push_back(config.lambda0);
      lambda.push_back(config.lambda1);
      for (std::size_t k = 2; k < n; ++k) {
        const double predicted =
            price_memory_policy(lambda[k - 1], lambda[k - 2], d[k], p.beta());
        const double next = 2.0 * p.alpha() * predicted;
        if (blown(next, thr)) {
          res.overflowed = true;
          break;
        }
        lambda.push_back(next);
      }
      // Consumption follows the realised prices; lambda_{-1} = lambda_0 makes
      // the first response exactly d_0.
      u.push_back(price_memory_policy(lambda[0], lambda[0], d[0], p.beta()));
      for (std::size_t k = 1; k < lambda.size(); ++k)
        u.push_back(price_memory_policy(lambda[k], lambda[k - 1], d[k], p.beta()));
      break;
    }
    case ConsumptionModel::PriceConsumptionMemory: {
      lambda.push_back(config.lambda0);
      lambda.push_back(config.lambda1);
      u.push_back(config.lambda1 / (2.0 * p.alpha()));
      for (std::size_t k = 1; k < n; ++k) {
        const ConsumerState state{lambda[k - 1], u[k - 1], d[k - 1]};
        u.push_back(pc_memory_policy(state, lambda[k], d[k], p.rho(), p.gamma()));
        if (k + 1 < n) {
          const double next = 2.0 * p.alpha() * u[k];
          if (blown(next, thr)) {
            res.overflowed = true;
            break;
          }
          lambda.push_back(next);
        }
      }
      break;
    }
  }

  const std::size_t len = std::min(lambda.size(), u.size());
  lambda.resize(len);
  u.resize(len);

  Trajectory& t = res.trajectory;
  t.lambda = std::move(lambda);
  t.u = std::move(u);
  t.d.assign(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(len));
  t.x = backlog_from_flows(t.u, t.d);
  res.steps = len;
  return res;
}

std::vector<double> simulate_price_recursion(ConsumptionModel model,
                                             const MarketParams& params,
                                             const std::vector<double>& demand,
                                             double lambda0, double lambda1,
                                             std::size_t n,
                                             double overflow_threshold) {
  if (n < 2) throw std::invalid_argument("simulate_price_recursion: n must be >= 2");
  if (demand.size() < n)
    throw std::invalid_argument("simulate_price_recursion: demand shorter than n");

  std::vector<double> lambda;
  lambda.reserve(n);
  lambda.push_back(lambda0);
  lambda.push_back(lambda1);

  double c1, c2, f1, f2;
  bool lag_demand;  // forcing uses d_{k-1}, d_{k-2} instead of d_k
  switch (model) {
    case ConsumptionModel::PriceMemory: {
      const double e = params.epsilon();
      c1 = -e;
      c2 = e;
      f1 = 2.0 * params.alpha();
      f2 = 0.0;
      lag_demand = false;
      break;
    }
    case ConsumptionModel::PriceConsumptionMemory: {
      const double gr = params.gamma() + params.rho();
      c1 = (params.rho() - params.alpha()) / gr;
      c2 = params.alpha() / gr;
      f1 = 2.0 * params.alpha();
      f2 = 2.0 * params.alpha() * params.rho() / gr;
      lag_demand = true;
      break;
    }
    default:
      throw std::invalid_argument(
          "simulate_price_recursion: no linear recursion for the Static model");
  }

  for (std::size_t k = 2; k < n; ++k) {
    const double da = lag_demand ? demand[k - 1] : demand[k];
    const double db = lag_demand ? demand[k - 2] : 0.0;
    const double next = c1 * lambda[k - 1] + c2 * lambda[k - 2] + f1 * da - f2 * db;
    if (blown(next, overflow_threshold)) break;
    lambda.push_back(next);
  }
  return lambda;
}

}  // namespace rtm
