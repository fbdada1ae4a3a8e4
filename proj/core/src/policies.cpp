#include "rtm/policies.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rtm {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite value");
}

}  // namespace

double price_memory_policy(double lambda_k, double lambda_prev, double d_k,
                           double beta) {
  require_finite(lambda_k, "price_memory_policy");
  require_finite(lambda_prev, "price_memory_policy");
  require_finite(d_k, "price_memory_policy");
  if (!std::isfinite(beta) || beta <= 0.0)
    throw std::invalid_argument("price_memory_policy: beta must be > 0");
  return d_k + (lambda_prev - lambda_k) / (2.0 * beta);
}

double pc_memory_policy(const ConsumerState& state, double lambda_k, double d_k,
                        double rho, double gamma) {
  require_finite(state.prev_price, "pc_memory_policy");
  require_finite(state.prev_consumption, "pc_memory_policy");
  require_finite(state.prev_demand, "pc_memory_policy");
  require_finite(lambda_k, "pc_memory_policy");
  require_finite(d_k, "pc_memory_policy");
  if (!std::isfinite(gamma) || gamma <= 0.0)
    throw std::invalid_argument("pc_memory_policy: gamma must be > 0");
  if (!std::isfinite(rho) || rho < 0.0)
    throw std::invalid_argument("pc_memory_policy: rho must be >= 0");

  const double vt = 1.0 / (2.0 * gamma);
  const double memory = state.prev_price - lambda_k +
                        2.0 * rho * (d_k - state.prev_demand + state.prev_consumption);
  return (d_k + vt * memory) / (2.0 * rho * vt + 1.0);
}

double finite_horizon_policy(std::size_t k_to_go, double lambda_now,
                             double lambda_prev, double d_now, double beta) {
  if (k_to_go < 2)
    throw std::invalid_argument(
        "finite_horizon_policy: k_to_go must be >= 2 (use terminal_clear_policy)");
  require_finite(lambda_now, "finite_horizon_policy");
  require_finite(lambda_prev, "finite_horizon_policy");
  require_finite(d_now, "finite_horizon_policy");
  if (!std::isfinite(beta) || beta <= 0.0)
    throw std::invalid_argument("finite_horizon_policy: beta must be > 0");
  const double steps = static_cast<double>(k_to_go - 1);
  return d_now - (lambda_now - lambda_prev) / (2.0 * beta * steps);
}

double terminal_clear_policy(double x_now, double d_now) {
  return d_now - x_now;
}

double static_policy(double lambda_k,
                     const std::function<double(double)>& vdot_inverse) {
  if (!vdot_inverse)
    throw std::invalid_argument("static_policy: missing vdot_inverse");
  const double u = vdot_inverse(lambda_k);
  if (!std::isfinite(u))
    throw std::invalid_argument("static_policy: vdot_inverse returned non-finite value");
  return u;
}

}  // namespace rtm
