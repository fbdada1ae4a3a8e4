#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "rtm/demand.hpp"
#include "rtm/market_params.hpp"
#include "rtm/trajectory.hpp"

namespace rtm {

enum class ConsumptionModel { Static, PriceMemory, PriceConsumptionMemory };

/// Closed-loop run description. The supplier prices at marginal cost,
/// lambda_{k+1} = 2*alpha*u_hat_{k+1}, where u_hat is its one-step consumption
/// prediction; the consumer answers with the configured policy.
///
/// Seeding conventions (fixed across the project):
///   - lambda0 and lambda1 seed the price path (Static uses lambda0 only),
///   - the pre-horizon price is lambda_{-1} = lambda0,
///   - the pre-horizon demand is d_{-1} = d_0,
///   - the price+consumption-memory loop starts from u_0 = lambda1/(2*alpha),
///     which is the unique seed consistent with lambda_{k+1} = 2*alpha*u_k.
struct SimulationConfig {
  ConsumptionModel model = ConsumptionModel::PriceMemory;
  MarketParams params;
  DemandProfile demand;
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  std::size_t horizon = 2;
  /// Inverse marginal utility; required by the Static model, ignored otherwise.
  std::function<double(double)> vdot_inverse;
  /// Runs stop early once |lambda| passes this bound.
  double overflow_threshold = 1e12;
};

struct SimulationResult {
  Trajectory trajectory;   // possibly a prefix when the run overflowed
  bool overflowed = false; // |lambda| crossed the threshold before the horizon
  std::size_t steps = 0;   // trajectory length actually produced
};

/// Run the closed loop. Unstable runs are cut off at the overflow threshold
/// and return the finite prefix with `overflowed` set, never non-finite data.
SimulationResult simulate(const SimulationConfig& config);

/// Price-only form of the same loop, demand supplied directly.
///
///   PriceMemory:             lambda_k = -e*lambda_{k-1} + e*lambda_{k-2}
///                                       + 2*alpha*d_k,          e = alpha/beta
///   PriceConsumptionMemory:  lambda_{k+1} = (rho-alpha)/(gamma+rho)*lambda_k
///                                       + alpha/(gamma+rho)*lambda_{k-1}
///                                       + 2*alpha*d_k
///                                       - 2*alpha*rho/(gamma+rho)*d_{k-1}
///
/// Must match the price column of simulate() to rounding; the Static model is
/// not expressible as a linear recursion and is rejected.
std::vector<double> simulate_price_recursion(ConsumptionModel model,
                                             const MarketParams& params,
                                             const std::vector<double>& demand,
                                             double lambda0, double lambda1,
                                             std::size_t n,
                                             double overflow_threshold = 1e12);

}  // namespace rtm
