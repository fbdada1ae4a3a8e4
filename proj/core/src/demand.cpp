#include "rtm/demand.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rtm {

namespace {

// sin((k - 5) * pi / 6) evaluated on k mod 12 so that d_{k+12} == d_k exactly.
double sinusoid_phase(std::size_t k) {
  const int h = static_cast<int>(k % 12);
  return std::sin(static_cast<double>(h - 5) * std::numbers::pi / 6.0);
}

}  // namespace

std::vector<double> demand_constant(double d, std::size_t n) {
  if (!std::isfinite(d) || d < 0.0)
    throw std::invalid_argument("demand_constant: d must be finite and >= 0");
  if (n == 0) throw std::invalid_argument("demand_constant: n must be >= 1");
  return std::vector<double>(n, d);
}

std::vector<double> demand_sinusoid(double mu, double amplitude, double alpha,
                                    std::size_t n) {
  if (!std::isfinite(mu) || !std::isfinite(amplitude) || amplitude < 0.0)
    throw std::invalid_argument("demand_sinusoid: need finite mu, amplitude >= 0");
  if (mu < amplitude)
    throw std::invalid_argument(
        "demand_sinusoid: mu < amplitude would produce negative demand");
  if (!std::isfinite(alpha) || alpha <= 0.0)
    throw std::invalid_argument("demand_sinusoid: alpha must be > 0");
  if (n == 0) throw std::invalid_argument("demand_sinusoid: n must be >= 1");

  std::vector<double> d(n);
  for (std::size_t k = 0; k < n; ++k)
    d[k] = (mu + amplitude * sinusoid_phase(k)) / (2.0 * alpha);
  return d;
}

DemandProfile::DemandProfile(Constant c) : v_(c) {
  if (!std::isfinite(c.d) || c.d < 0.0)
    throw std::invalid_argument("DemandProfile: constant level must be >= 0");
}

DemandProfile::DemandProfile(Sinusoid s) : v_(s) {
  if (!std::isfinite(s.mu) || !std::isfinite(s.amplitude) || s.amplitude < 0.0 ||
      s.mu < s.amplitude)
    throw std::invalid_argument(
        "DemandProfile: sinusoid requires mu >= amplitude >= 0");
}

DemandProfile::DemandProfile(Custom c) : v_(std::move(c)) {
  const auto& seq = std::get<Custom>(v_).sequence;
  if (seq.empty())
    throw std::invalid_argument("DemandProfile: custom sequence is empty");
  for (double d : seq)
    if (!std::isfinite(d) || d < 0.0)
      throw std::invalid_argument(
          "DemandProfile: custom sequence entries must be finite and >= 0");
}

std::vector<double> DemandProfile::realize(std::size_t n, double alpha) const {
  if (n == 0) throw std::invalid_argument("DemandProfile::realize: n must be >= 1");
  if (const auto* c = std::get_if<Constant>(&v_)) return demand_constant(c->d, n);
  if (const auto* s = std::get_if<Sinusoid>(&v_))
    return demand_sinusoid(s->mu, s->amplitude, alpha, n);
  const auto& seq = std::get<Custom>(v_).sequence;
  if (seq.size() < n)
    throw std::invalid_argument(
        "DemandProfile::realize: custom sequence shorter than horizon");
  return {seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(n)};
}

bool DemandProfile::is_constant() const {
  return std::holds_alternative<Constant>(v_);
}

double DemandProfile::constant_level() const {
  if (const auto* c = std::get_if<Constant>(&v_)) return c->d;
  throw std::logic_error("DemandProfile: not a constant profile");
}

}  // namespace rtm
