#include "rtm/market_params.hpp"

#include <cmath>
#include <stdexcept>

namespace rtm {

MarketParams::MarketParams(double alpha, double beta, double gamma, double rho)
    : alpha_(alpha), beta_(beta), gamma_(gamma), rho_(rho) {
  if (!std::isfinite(alpha) || alpha <= 0.0)
    throw std::invalid_argument("MarketParams: alpha must be finite and > 0");
  if (!std::isfinite(beta) || beta <= 0.0)
    throw std::invalid_argument("MarketParams: beta must be finite and > 0");
  if (!std::isfinite(gamma) || gamma <= 0.0)
    throw std::invalid_argument("MarketParams: gamma must be finite and > 0");
  if (!std::isfinite(rho) || rho < 0.0)
    throw std::invalid_argument("MarketParams: rho must be finite and >= 0");
}

}  // namespace rtm
