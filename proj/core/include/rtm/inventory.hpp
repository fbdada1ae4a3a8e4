#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rtm {

/// Finite-horizon consumption scheduling instance: satisfy the demand
/// sequence over n hours against a realised price path, paying beta*x^2 per
/// hour of backlog x and rho*(u-d)^2 per hour of deviation, with zero backlog
/// at both ends.
struct InventoryProblem {
  std::size_t horizon = 0;
  std::vector<double> demand;  // length == horizon
  double beta = 1.0;
  double rho = 0.0;
  std::vector<double> prices;  // length == horizon

  void validate() const;  // throws std::invalid_argument
};

struct InventorySolution {
  std::vector<double> u;  // length n
  std::vector<double> x;  // length n + 1, x.front() == x.back() == 0
  double total_cost = 0.0;  // sum(lambda_k * u_k) + sum(beta * x_{k+1}^2)
};

/// Closed-form schedule: finite_horizon_policy at every stage with at least
/// two steps remaining, terminal_clear_policy at the last. Only defined for
/// rho == 0. `lambda_prior` supplies the price one step before the horizon
/// starts (the stage-0 rule needs a price difference).
InventorySolution solve_inventory(const InventoryProblem& problem,
                                  double lambda_prior);

/// Closed-form cost-to-go for the rho == 0 problem with k_to_go stages left,
/// current backlog x_now and demand tail of length k_to_go:
///
///   k_to_go == 1:  lambda_now * (d - x_now)
///   k_to_go >= 2:  (k-1) * beta * (x_now - s)^2 + lambda_now * (sum d - x_now)
///                  with s = (lambda_now - lambda_prev) / (2*beta*(k-1))
double inventory_cost_to_go(std::size_t k_to_go, double x_now, double lambda_now,
                            double lambda_prev, std::span<const double> demand_tail,
                            double beta);

}  // namespace rtm
