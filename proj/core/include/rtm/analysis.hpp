#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rtm/market_params.hpp"

namespace rtm {

/// Real characteristic roots, ordered x1 <= x2.
struct RootPair {
  double x1;
  double x2;
};

/// Roots of x^2 + e*x - e = 0 (price-memory loop):
///   x = -e/2 +- sqrt(e*(e+4))/2
/// Both magnitudes are below 1 exactly when 0 <= e < 1/2.
RootPair roots_price_memory(double epsilon);

/// Roots of (gamma+rho)*x^2 - (rho-alpha)*x - alpha = 0
/// (price+consumption-memory loop):
///   x = (rho - alpha +- sqrt((rho-alpha)^2 + 4*alpha*(gamma+rho)))
///       / (2*(gamma+rho))
/// The discriminant is positive for all admissible parameters and x2 < 1
/// always; x1 hits -1 at rho = alpha - gamma/2 and is nondecreasing in rho.
RootPair roots_pc_memory(double alpha, double gamma, double rho);

struct StabilityReport {
  RootPair roots;
  double spectral_radius;
  bool stable;  // spectral_radius < 1
  std::string threshold_note;
};

/// Stable iff epsilon < 1/2.
StabilityReport is_stable_price_memory(double epsilon);
/// Stable iff alpha < gamma/2 or rho > alpha - gamma/2.
StabilityReport is_stable_pc_memory(double alpha, double gamma, double rho);

struct FixedPoint {
  double lambda_star;  // 2*alpha*d
  double u_star;       // d
};

/// Constant-demand equilibrium, shared by both memory models.
FixedPoint fixed_point(double alpha, double d);

/// Coefficients of the periodic particular solution
///   b_k = e0 + e1*sin((k-5)pi/6) + e2*cos((k-5)pi/6)
/// of lambda_k + e*lambda_{k-1} - e*lambda_{k-2} = mu + A*sin((k-5)pi/6).
struct SinusoidCoefficients {
  double e0;
  double e1;
  double e2;
};

SinusoidCoefficients sinusoid_particular(double epsilon, double mu,
                                         double amplitude);

/// Solved form lambda_k = c1*x1^k + c2*x2^k + particular(k) for the
/// price-memory recursion. The two constants are fitted to the seed prices,
/// so evaluate(0) and evaluate(1) reproduce them. The repeated-root case
/// (epsilon == 0, both roots zero) degenerates to: seeds verbatim at k = 0, 1
/// and the pure particular part from k = 2 on.
class ClosedFormSolution {
 public:
  struct ConstantPart {
    double level;  // 2*alpha*d
  };
  struct SinusoidPart {
    double e0, e1, e2;
  };

  ClosedFormSolution(RootPair roots, double lambda0, double lambda1,
                     std::variant<ConstantPart, SinusoidPart> particular);

  double x1() const { return roots_.x1; }
  double x2() const { return roots_.x2; }
  double c1() const { return c1_; }
  double c2() const { return c2_; }
  bool degenerate() const { return degenerate_; }
  const std::variant<ConstantPart, SinusoidPart>& particular() const {
    return particular_;
  }

  double particular_at(std::size_t k) const;
  double evaluate(std::size_t k) const;
  /// First n samples with the root powers accumulated iteratively.
  std::vector<double> evaluate_sequence(std::size_t n) const;

 private:
  RootPair roots_;
  double c1_ = 0.0;
  double c2_ = 0.0;
  bool degenerate_ = false;
  double lambda0_;
  double lambda1_;
  std::variant<ConstantPart, SinusoidPart> particular_;
};

ClosedFormSolution closed_form_constant(const MarketParams& params, double d,
                                        double lambda0, double lambda1);
ClosedFormSolution closed_form_variable(const MarketParams& params, double mu,
                                        double amplitude, double lambda0,
                                        double lambda1);

/// Asymptotic periodic price path for the stable (epsilon < 1/2) sinusoid
/// loop: mean mu, attenuated magnitude sqrt(e1^2+e2^2), and the total phase
/// offset pi/3 + arctan((e2 - sqrt3*e1)/(sqrt3*e2 + e1)) relative to the
/// demand sinusoid (negative for epsilon > 0: prices lag demand).
struct LimitingSinusoid {
  double mean;
  double magnitude;
  double phase_shift;

  double evaluate(std::size_t k) const;
};

LimitingSinusoid limiting_sinusoid(double epsilon, double mu, double amplitude);

/// Empirical verdict on a simulated price path: deviations from the reference
/// must contract (last-quarter peak below first-quarter peak) and stay below
/// `bound`. Paths that sit on the reference from the start count as stable.
bool empirically_stable(std::span<const double> prices,
                        const std::function<double(std::size_t)>& reference,
                        double bound = 1e3);

struct EpsilonSweepRow {
  double epsilon;
  bool analytic_stable;
  bool empirical_stable;
  double spectral_radius;
  bool near_boundary;  // within 1e-3 of the epsilon = 1/2 threshold
};

struct RhoSweepRow {
  double alpha;
  double gamma;
  double rho;
  bool analytic_stable;
  bool empirical_stable;
  double spectral_radius;
  bool near_boundary;  // within 1e-3 of rho = alpha - gamma/2
};

/// Analytic predicate vs. a 2000-step (by default) constant-demand run for
/// each grid point. The two verdicts agree away from a 1e-3-wide band around
/// the analytic threshold; rows inside the band carry near_boundary = true.
std::vector<EpsilonSweepRow> stability_sweep_epsilon(
    const std::vector<double>& grid, std::size_t steps = 2000);
std::vector<RhoSweepRow> stability_sweep_rho(double alpha, double gamma,
                                             const std::vector<double>& grid,
                                             std::size_t steps = 2000);

}  // namespace rtm
