#include "rtm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rtm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Piecewise-linear read of a grid function on [x_min, 0]. Values outside the
// grid and cells with an infinite node read as +inf.
double lerp_value(const std::vector<double>& v, double x, double x_min,
                  double cell) {
  if (x > 0.0 || x < x_min) return kInf;
  const double pos = (x - x_min) / cell;
  const auto i0 = static_cast<std::size_t>(pos);
  if (i0 + 1 >= v.size()) return v.back();
  const double w = pos - static_cast<double>(i0);
  const double a = v[i0];
  const double b = v[i0 + 1];
  if (w == 0.0) return a;
  if (!std::isfinite(a) || !std::isfinite(b)) return kInf;
  return a * (1.0 - w) + b * w;
}

// Cost-to-go tables for stages `from .. n-1` with every price frozen at
// `lam`. Returns the table for stage `from`.
std::vector<double> frozen_cost_to_go(const InventoryProblem& p, std::size_t from,
                                      double lam, const DpOracleGrid& grid) {
  const std::size_t n = p.horizon;
  const std::size_t nx = grid.x_steps + 1;
  const double cell = grid.x_cell();
  std::vector<double> next(nx), cur(nx);

  // Last stage: the terminal constraint forces u = d - x.
  for (std::size_t i = 0; i < nx; ++i) {
    const double x = grid.x_min + static_cast<double>(i) * cell;
    const double u = p.demand[n - 1] - x;
    if (u < 0.0 || u > grid.u_max) {
      next[i] = kInf;
      continue;
    }
    const double dev = u - p.demand[n - 1];
    next[i] = lam * u + p.rho * dev * dev;
  }

  for (std::size_t j = n - 1; j-- > from;) {
    const double dj = p.demand[j];
    const double ucell = grid.u_cell();
    for (std::size_t i = 0; i < nx; ++i) {
      const double x = grid.x_min + static_cast<double>(i) * cell;
      double best = kInf;
      for (std::size_t m = 0; m <= grid.u_steps; ++m) {
        const double u = static_cast<double>(m) * ucell;
        const double xn = x + u - dj;
        if (xn > 0.0) break;  // u only grows from here
        if (xn < grid.x_min) continue;
        const double cont = lerp_value(next, xn, grid.x_min, cell);
        if (!std::isfinite(cont)) continue;
        const double dev = u - dj;
        const double c = lam * u + p.beta * xn * xn + p.rho * dev * dev + cont;
        if (c < best) best = c;
      }
      cur[i] = best;
    }
    std::swap(cur, next);
  }
  return next;
}

}  // namespace

void DpOracleGrid::validate() const {
  if (!std::isfinite(x_min) || x_min >= 0.0)
    throw std::invalid_argument("DpOracleGrid: x_min must be < 0");
  if (!std::isfinite(u_max) || u_max <= 0.0)
    throw std::invalid_argument("DpOracleGrid: u_max must be > 0");
  if (x_steps < 100 || u_steps < 100)
    throw std::invalid_argument("DpOracleGrid: step counts must be >= 100");
}

OracleResult dp_oracle(const InventoryProblem& problem, const DpOracleGrid& grid,
                       double lambda_prior) {
  problem.validate();
  grid.validate();
  (void)lambda_prior;

  const double max_d = *std::max_element(problem.demand.begin(), problem.demand.end());
  if (grid.u_max <= max_d)
    throw std::invalid_argument("dp_oracle: u_max must exceed the peak demand");

  const std::size_t n = problem.horizon;
  OracleResult res;
  res.u.resize(n);
  res.x.assign(n + 1, 0.0);

  const double cell = grid.x_cell();
  const double ucell = grid.u_cell();

  for (std::size_t s = 0; s < n; ++s) {
    const double lam = problem.prices[s];
    const double xs = res.x[s];
    if (xs < grid.x_min + cell)
      throw GridEscapeError("dp_oracle: backlog reached the grid floor");

    double u_star;
    if (s + 1 == n) {
      u_star = problem.demand[s] - xs;  // forced terminal action
      if (u_star < 0.0 || u_star > grid.u_max)
        throw GridEscapeError("dp_oracle: terminal action outside the u grid");
    } else {
      const std::vector<double> cont = frozen_cost_to_go(problem, s + 1, lam, grid);
      double best = kInf;
      double best_u = kInf;
      for (std::size_t m = 0; m <= grid.u_steps; ++m) {
        const double u = static_cast<double>(m) * ucell;
        const double xn = xs + u - problem.demand[s];
        if (xn > 0.0) break;
        if (xn < grid.x_min) continue;
        const double tail = lerp_value(cont, xn, grid.x_min, cell);
        if (!std::isfinite(tail)) continue;
        const double dev = u - problem.demand[s];
        const double c = lam * u + problem.beta * xn * xn +
                         problem.rho * dev * dev + tail;
        if (c < best) {
          best = c;
          best_u = u;
        }
      }
      if (!std::isfinite(best))
        throw GridEscapeError("dp_oracle: no feasible action at stage " +
                              std::to_string(s));
      u_star = best_u;
    }

    res.u[s] = u_star;
    res.x[s + 1] = res.x[s] + (u_star - problem.demand[s]);
  }

  double cost = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    const double dev = res.u[s] - problem.demand[s];
    cost += problem.prices[s] * res.u[s];
    cost += problem.beta * res.x[s + 1] * res.x[s + 1];
    cost += problem.rho * dev * dev;
  }
  res.total_cost = cost;
  return res;
}

double foc_residual(double u_k, const ConsumerState& state, double lambda_k,
                    double d_k, double rho, double gamma) {
  if (!std::isfinite(gamma) || gamma <= 0.0)
    throw std::invalid_argument("foc_residual: gamma must be > 0");
  if (!std::isfinite(rho) || rho < 0.0)
    throw std::invalid_argument("foc_residual: rho must be >= 0");
  const double x_k =
      (2.0 * rho * (state.prev_demand - state.prev_consumption) - state.prev_price) /
      (2.0 * gamma);
  const double x_next = x_k + u_k - d_k;
  return lambda_k + 2.0 * rho * (u_k - d_k) + 2.0 * gamma * x_next;
}

}  // namespace rtm
