#include "rtm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rtm {

namespace {

constexpr double kBoundaryBand = 1e-3;

double sin_phase(std::size_t k) {
  const int h = static_cast<int>(k % 12);
  return std::sin(static_cast<double>(h - 5) * std::numbers::pi / 6.0);
}

double cos_phase(std::size_t k) {
  const int h = static_cast<int>(k % 12);
  return std::cos(static_cast<double>(h - 5) * std::numbers::pi / 6.0);
}

double spectral_radius(RootPair r) {
  return std::max(std::fabs(r.x1), std::fabs(r.x2));
}

}  // namespace

RootPair roots_price_memory(double epsilon) {
  if (!std::isfinite(epsilon) || epsilon < 0.0)
    throw std::invalid_argument("roots_price_memory: epsilon must be >= 0");
  const double disc = epsilon * (epsilon + 4.0);
  if (disc < 0.0) throw std::logic_error("roots_price_memory: negative discriminant");
  const double s = std::sqrt(disc);
  return {-epsilon / 2.0 - s / 2.0, -epsilon / 2.0 + s / 2.0};
}

RootPair roots_pc_memory(double alpha, double gamma, double rho) {
  if (!std::isfinite(alpha) || alpha <= 0.0 || !std::isfinite(gamma) || gamma <= 0.0)
    throw std::invalid_argument("roots_pc_memory: alpha and gamma must be > 0");
  if (!std::isfinite(rho) || rho < 0.0)
    throw std::invalid_argument("roots_pc_memory: rho must be >= 0");
  const double diff = rho - alpha;
  const double disc = diff * diff + 4.0 * alpha * (gamma + rho);
  if (disc < 0.0) throw std::logic_error("roots_pc_memory: negative discriminant");
  const double s = std::sqrt(disc);
  const double den = 2.0 * (gamma + rho);
  return {(diff - s) / den, (diff + s) / den};
}

StabilityReport is_stable_price_memory(double epsilon) {
  const RootPair r = roots_price_memory(epsilon);
  const double radius = spectral_radius(r);
  return {r, radius, radius < 1.0, "stable iff epsilon < 1/2"};
}

StabilityReport is_stable_pc_memory(double alpha, double gamma, double rho) {
  const RootPair r = roots_pc_memory(alpha, gamma, rho);
  const double radius = spectral_radius(r);
  return {r, radius, radius < 1.0,
          "stable iff alpha < gamma/2 or rho > alpha - gamma/2"};
}

FixedPoint fixed_point(double alpha, double d) {
  if (!std::isfinite(alpha) || alpha <= 0.0)
    throw std::invalid_argument("fixed_point: alpha must be > 0");
  if (!std::isfinite(d) || d < 0.0)
    throw std::invalid_argument("fixed_point: d must be >= 0");
  return {2.0 * alpha * d, d};
}

SinusoidCoefficients sinusoid_particular(double epsilon, double mu,
                                         double amplitude) {
  if (!std::isfinite(epsilon) || epsilon < 0.0)
    throw std::invalid_argument("sinusoid_particular: epsilon must be >= 0");
  const double r3 = std::numbers::sqrt3;
  const double den = 1.0 + (r3 - 1.0) * epsilon + (2.0 - r3) * epsilon * epsilon;
  const double e1 = (1.0 + epsilon * (r3 - 1.0) / 2.0) * amplitude / den;
  const double e2 = (epsilon * (1.0 - r3) / 2.0) * amplitude / den;
  return {mu, e1, e2};
}

ClosedFormSolution::ClosedFormSolution(
    RootPair roots, double lambda0, double lambda1,
    std::variant<ConstantPart, SinusoidPart> particular)
    : roots_(roots),
      lambda0_(lambda0),
      lambda1_(lambda1),
      particular_(std::move(particular)) {
  if (roots_.x1 == roots_.x2) {
    // Both roots vanish only at epsilon == 0; any other repeat would mean a
    // zero discriminant, which the admissible parameter range excludes.
    if (roots_.x1 != 0.0)
      throw std::logic_error("ClosedFormSolution: unexpected repeated root");
    degenerate_ = true;
    c1_ = lambda0 - particular_at(0);
    c2_ = lambda1 - particular_at(1);
    return;
  }
  const double r0 = lambda0 - particular_at(0);
  const double r1 = lambda1 - particular_at(1);
  c1_ = (r1 - r0 * roots_.x2) / (roots_.x1 - roots_.x2);
  c2_ = r0 - c1_;
}

double ClosedFormSolution::particular_at(std::size_t k) const {
  if (const auto* c = std::get_if<ConstantPart>(&particular_)) return c->level;
  const auto& s = std::get<SinusoidPart>(particular_);
  return s.e0 + s.e1 * sin_phase(k) + s.e2 * cos_phase(k);
}

double ClosedFormSolution::evaluate(std::size_t k) const {
  if (degenerate_) {
    if (k == 0) return lambda0_;
    if (k == 1) return lambda1_;
    return particular_at(k);
  }
  return c1_ * std::pow(roots_.x1, static_cast<double>(k)) +
         c2_ * std::pow(roots_.x2, static_cast<double>(k)) + particular_at(k);
}

std::vector<double> ClosedFormSolution::evaluate_sequence(std::size_t n) const {
  std::vector<double> out;
  out.reserve(n);
  if (degenerate_) {
    for (std::size_t k = 0; k < n; ++k) out.push_back(evaluate(k));
    return out;
  }
  double p1 = 1.0;
  double p2 = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(c1_ * p1 + c2_ * p2 + particular_at(k));
    p1 *= roots_.x1;
    p2 *= roots_.x2;
  }
  return out;
}

ClosedFormSolution closed_form_constant(const MarketParams& params, double d,
                                        double lambda0, double lambda1) {
  if (!std::isfinite(d) || d < 0.0)
    throw std::invalid_argument("closed_form_constant: d must be >= 0");
  const RootPair r = roots_price_memory(params.epsilon());
  return ClosedFormSolution(
      r, lambda0, lambda1,
      ClosedFormSolution::ConstantPart{2.0 * params.alpha() * d});
}

ClosedFormSolution closed_form_variable(const MarketParams& params, double mu,
                                        double amplitude, double lambda0,
                                        double lambda1) {
  const RootPair r = roots_price_memory(params.epsilon());
  const SinusoidCoefficients c = sinusoid_particular(params.epsilon(), mu, amplitude);
  return ClosedFormSolution(r, lambda0, lambda1,
                            ClosedFormSolution::SinusoidPart{c.e0, c.e1, c.e2});
}

double LimitingSinusoid::evaluate(std::size_t k) const {
  const int h = static_cast<int>(k % 12);
  const double theta = static_cast<double>(h - 5) * std::numbers::pi / 6.0;
  return mean + magnitude * std::sin(theta + phase_shift);
}

LimitingSinusoid limiting_sinusoid(double epsilon, double mu, double amplitude) {
  if (!std::isfinite(epsilon) || epsilon < 0.0 || epsilon >= 0.5)
    throw std::invalid_argument(
        "limiting_sinusoid: requires 0 <= epsilon < 1/2 (no limit otherwise)");
  const SinusoidCoefficients c = sinusoid_particular(epsilon, mu, amplitude);
  const double r3 = std::numbers::sqrt3;
  const double den = r3 * c.e2 + c.e1;
  // The principal arctan branch is only valid while this stays positive; it
  // does for every epsilon in [0, 1/2) with the coefficients above.
  if (amplitude > 0.0 && den <= 0.0)
    throw std::logic_error("limiting_sinusoid: phase fell off the principal branch");
  const double phase =
      (amplitude == 0.0)
          ? 0.0
          : std::numbers::pi / 3.0 + std::atan((c.e2 - r3 * c.e1) / den);
  const double mag = std::sqrt(c.e1 * c.e1 + c.e2 * c.e2);
  return {mu, mag, phase};
}

bool empirically_stable(std::span<const double> prices,
                        const std::function<double(std::size_t)>& reference,
                        double bound) {
  const std::size_t n = prices.size();
  if (n < 8) return false;
  const std::size_t q = n / 4;
  double first = 0.0;
  double last = 0.0;
  double scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dev = std::fabs(prices[k] - reference(k));
    scale = std::max(scale, std::fabs(reference(k)));
    if (k < q) first = std::max(first, dev);
    if (k >= n - q) last = std::max(last, dev);
  }
  // Runs seeded on the attractor never leave it by more than rounding noise.
  const double floor = 1e-9 * (1.0 + scale);
  return last < std::max(first, floor) && last < bound;
}

std::vector<EpsilonSweepRow> stability_sweep_epsilon(
    const std::vector<double>& grid, std::size_t steps) {
  if (steps < 16)
    throw std::invalid_argument("stability_sweep_epsilon: steps too small");
  std::vector<EpsilonSweepRow> rows;
  rows.reserve(grid.size());
  for (double eps : grid) {
    const StabilityReport rep = is_stable_price_memory(eps);
    // Raw recursion with unit forcing: lambda_k = -e*l1 + e*l2 + 1, fixed
    // point 1, seeded one unit off. Keeps the epsilon = 0 edge usable.
    std::vector<double> lam{2.0, 2.0};
    lam.reserve(steps);
    for (std::size_t k = 2; k < steps; ++k) {
      const double next = -eps * lam[k - 1] + eps * lam[k - 2] + 1.0;
      if (!std::isfinite(next) || std::fabs(next) > 1e12) break;
      lam.push_back(next);
    }
    const bool emp = lam.size() == steps &&
                     empirically_stable(lam, [](std::size_t) { return 1.0; });
    rows.push_back({eps, rep.stable, emp, rep.spectral_radius,
                    std::fabs(eps - 0.5) < kBoundaryBand});
  }
  return rows;
}

std::vector<RhoSweepRow> stability_sweep_rho(double alpha, double gamma,
                                             const std::vector<double>& grid,
                                             std::size_t steps) {
  if (steps < 16)
    throw std::invalid_argument("stability_sweep_rho: steps too small");
  std::vector<RhoSweepRow> rows;
  rows.reserve(grid.size());
  const double d = 1.0;
  for (double rho : grid) {
    const StabilityReport rep = is_stable_pc_memory(alpha, gamma, rho);
    const double gr = gamma + rho;
    const double c1 = (rho - alpha) / gr;
    const double c2 = alpha / gr;
    const double forcing = 2.0 * alpha * d - 2.0 * alpha * rho / gr * d;
    const double star = 2.0 * alpha * d;
    std::vector<double> lam{star + 1.0, star + 1.0};
    lam.reserve(steps);
    for (std::size_t k = 2; k < steps; ++k) {
      const double next = c1 * lam[k - 1] + c2 * lam[k - 2] + forcing;
      if (!std::isfinite(next) || std::fabs(next) > 1e12) break;
      lam.push_back(next);
    }
    const bool emp = lam.size() == steps &&
                     empirically_stable(lam, [star](std::size_t) { return star; });
    rows.push_back({alpha, gamma, rho, rep.stable, emp, rep.spectral_radius,
                    std::fabs(rho - (alpha - gamma / 2.0)) < kBoundaryBand});
  }
  return rows;
}

}  // namespace rtm
