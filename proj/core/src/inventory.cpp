#include "rtm/inventory.hpp"

#include <cmath>
#include <stdexcept>

#include "rtm/policies.hpp"

namespace rtm {

void InventoryProblem::validate() const {
  if (horizon == 0) throw std::invalid_argument("InventoryProblem: horizon must be >= 1");
  if (demand.size() != horizon || prices.size() != horizon)
    throw std::invalid_argument("InventoryProblem: demand/prices length != horizon");
  if (!std::isfinite(beta) || beta <= 0.0)
    throw std::invalid_argument("InventoryProblem: beta must be > 0");
  if (!std::isfinite(rho) || rho < 0.0)
    throw std::invalid_argument("InventoryProblem: rho must be >= 0");
  for (double v : demand)
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("InventoryProblem: demand must be finite and >= 0");
  for (double v : prices)
    if (!std::isfinite(v))
      throw std::invalid_argument("InventoryProblem: prices must be finite");
}

InventorySolution solve_inventory(const InventoryProblem& problem,
                                  double lambda_prior) {
  problem.validate();
  if (problem.rho != 0.0)
    throw std::invalid_argument("solve_inventory: closed form requires rho == 0");
  if (!std::isfinite(lambda_prior))
    throw std::invalid_argument("solve_inventory: lambda_prior must be finite");

  const std::size_t n = problem.horizon;
  InventorySolution sol;
  sol.u.resize(n);
  sol.x.assign(n + 1, 0.0);

  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t k_to_go = n - t;
    const double lam_prev = (t == 0) ? lambda_prior : problem.prices[t - 1];
    if (k_to_go >= 2) {
      sol.u[t] = finite_horizon_policy(k_to_go, problem.prices[t], lam_prev,
                                       problem.demand[t], problem.beta);
    } else {
      sol.u[t] = terminal_clear_policy(sol.x[t], problem.demand[t]);
    }
    sol.x[t + 1] = sol.x[t] + (sol.u[t] - problem.demand[t]);
  }

  // The terminal rule clears the backlog up to rounding; pin the endpoint.
  if (std::fabs(sol.x[n]) > 1e-9 * (1.0 + std::fabs(sol.x[n - 1])))
    throw std::logic_error("solve_inventory: terminal backlog failed to clear");
  sol.x[n] = 0.0;

  double cost = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    cost += problem.prices[t] * sol.u[t];
    cost += problem.beta * sol.x[t + 1] * sol.x[t + 1];
  }
  sol.total_cost = cost;
  return sol;
}

double inventory_cost_to_go(std::size_t k_to_go, double x_now, double lambda_now,
                            double lambda_prev, std::span<const double> demand_tail,
                            double beta) {
  if (k_to_go == 0) throw std::invalid_argument("inventory_cost_to_go: k_to_go must be >= 1");
  if (demand_tail.size() != k_to_go)
    throw std::invalid_argument("inventory_cost_to_go: demand tail length != k_to_go");
  if (!std::isfinite(beta) || beta <= 0.0)
    throw std::invalid_argument("inventory_cost_to_go: beta must be > 0");

  double tail = 0.0;
  for (double d : demand_tail) tail += d;

  if (k_to_go == 1) return lambda_now * (demand_tail[0] - x_now);

  const double steps = static_cast<double>(k_to_go - 1);
  const double shift = (lambda_now - lambda_prev) / (2.0 * beta * steps);
  const double held = x_now - shift;
  return steps * beta * held * held + lambda_now * (tail - x_now);
}

}  // namespace rtm
