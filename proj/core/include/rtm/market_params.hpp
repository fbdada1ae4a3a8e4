#pragma once

namespace rtm {

/// Quadratic market primitives shared by the policies, the closed-loop
/// simulator and the stability analysis:
///
///   supply cost        c(x) = alpha * x^2   (marginal cost 2*alpha*x)
///   backlog disutility p(x) = beta  * x^2
///   value function     V(x) = gamma * x^2   (so Vdot^-1 has slope 1/(2*gamma))
///   deviation weight   rho  >= 0            (penalty rho * (u - d)^2)
///
/// Immutable after construction; safe to share across threads.
class MarketParams {
 public:
  MarketParams(double alpha, double beta, double gamma, double rho = 0.0);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  double rho() const { return rho_; }

  /// Ratio of marginal supply-cost curvature to backlog curvature.
  double epsilon() const { return alpha_ / beta_; }
  /// Ratio of marginal supply-cost curvature to value-function curvature.
  double epsilon_tilde() const { return alpha_ / gamma_; }
  /// Slope of the inverse marginal value function.
  double v_tilde() const { return 1.0 / (2.0 * gamma_); }

 private:
  double alpha_;
  double beta_;
  double gamma_;
  double rho_;
};

}  // namespace rtm
