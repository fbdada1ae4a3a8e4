#pragma once

#include <stdexcept>
#include <vector>

#include "rtm/inventory.hpp"
#include "rtm/policies.hpp"

namespace rtm {

/// Discretisation for the backward-induction oracle. Backlog lives on
/// [x_min, 0] with x_steps cells, consumption on [0, u_max] with u_steps
/// cells.
struct DpOracleGrid {
  double x_min = -10.0;
  std::size_t x_steps = 2000;
  double u_max = 10.0;
  std::size_t u_steps = 2000;

  void validate() const;  // x_min < 0, u_max > 0, both step counts >= 100
  double x_cell() const { return -x_min / static_cast<double>(x_steps); }
  double u_cell() const { return u_max / static_cast<double>(u_steps); }
};

struct OracleResult {
  std::vector<double> u;   // greedy consumption along the realised price path
  std::vector<double> x;   // backlog, length n + 1
  double total_cost = 0.0; // evaluated against the realised prices
};

/// Thrown when the optimal backlog walks off the grid (bounds too tight).
class GridEscapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical certainty-equivalent oracle for the inventory problem.
///
/// At stage s the consumer knows the current price and treats every future
/// price as equal to it (martingale belief). The oracle freezes the future
/// prices accordingly, solves the remaining deterministic problem by backward
/// induction on the backlog grid (x <= 0 enforced, terminal backlog pinned to
/// zero, stage values linearly interpolated between nodes), plays the greedy
/// first action, advances the true state with the realised price path, and
/// repeats. The final stage is forced to u = d - x by the terminal
/// constraint, so it is computed exactly rather than on the grid.
///
/// `lambda_prior` mirrors the closed-form solver's signature; the frozen
/// beliefs are formed from current prices only, so it does not influence the
/// oracle's decisions.
OracleResult dp_oracle(const InventoryProblem& problem, const DpOracleGrid& grid,
                       double lambda_prior);

/// Residual of the one-step optimality condition for the
/// price+consumption-memory rule, with V(x) = gamma*x^2 and the current
/// backlog reconstructed from the previous step's condition:
///
///   x_k = (2*rho*(d_prev - u_prev) - lambda_prev) / (2*gamma)
///   residual(u) = lambda_k + 2*rho*(u - d_k) + 2*gamma*(x_k + u - d_k)
///
/// Zero exactly at u = pc_memory_policy(...); linear in u with slope
/// 2*rho + 2*gamma.
double foc_residual(double u_k, const ConsumerState& state, double lambda_k,
                    double d_k, double rho, double gamma);

}  // namespace rtm
