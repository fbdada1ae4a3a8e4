#pragma once

#include <cstddef>
#include <functional>

namespace rtm {

/// What the consumer remembers from the previous hour.
struct ConsumerState {
  double prev_price;        // lambda_{k-1}
  double prev_consumption;  // u_{k-1}
  double prev_demand;       // d_{k-1}
};

/// Price-memory consumption rule:
///
///   u = d_k + (lambda_prev - lambda_k) / (2 * beta)
///
/// May return negative values (sell-back); the closed-loop analysis relies on
/// the rule staying unclamped.
double price_memory_policy(double lambda_k, double lambda_prev, double d_k,
                           double beta);

/// Price+consumption-memory rule. With vt = 1/(2*gamma):
///
///   u = (d_k + vt*(lambda_prev - lambda_k + 2*rho*(d_k - d_prev + u_prev)))
///       / (2*rho*vt + 1)
///
/// For rho == 0 this collapses to price_memory_policy with beta := gamma.
double pc_memory_policy(const ConsumerState& state, double lambda_k, double d_k,
                        double rho, double gamma);

/// Finite-horizon consumption rule with k_to_go >= 2 stages remaining:
///
///   u = d_now - (lambda_now - lambda_prev) / (2 * beta * (k_to_go - 1))
///
/// The price response is spread over the remaining horizon; at k_to_go == 2
/// it coincides with price_memory_policy. The final stage is handled by
/// terminal_clear_policy instead.
double finite_horizon_policy(std::size_t k_to_go, double lambda_now,
                             double lambda_prev, double d_now, double beta);

/// Last-stage rule u = d_now - x_now: consume today's demand plus whatever
/// backlog is outstanding, so the horizon ends with zero backlog.
double terminal_clear_policy(double x_now, double d_now);

/// Static (memoryless) consumption u = vdot_inverse(lambda_k), where
/// vdot_inverse is the inverse marginal utility. The callable may throw for
/// prices outside its domain; a non-finite result is rejected here.
double static_policy(double lambda_k,
                     const std::function<double(double)>& vdot_inverse);

}  // namespace rtm
