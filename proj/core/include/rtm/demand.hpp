#pragma once

#include <cstddef>
#include <variant>
#include <vector>

namespace rtm {

/// Constant hourly demand: n copies of d. Rejects d < 0 and n == 0.
std::vector<double> demand_constant(double d, std::size_t n);

/// 12-hour periodic demand in natural (energy) units:
///
///   d_k = (mu + amplitude * sin((k - 5) * pi / 6)) / (2 * alpha)
///
/// parameterised by the scaled mean mu and amplitude (price units), so that
/// 2*alpha*d_k = mu + A*sin(...). Peaks land at k = 8 (mod 12), troughs at
/// k = 2 (mod 12). The phase is evaluated on k mod 12, which makes the
/// 12-sample periodicity exact in floating point. Rejects mu < amplitude
/// (negative demand) and amplitude < 0.
std::vector<double> demand_sinusoid(double mu, double amplitude, double alpha,
                                    std::size_t n);

/// A demand model: constant level, 12-hour sinusoid, or a caller-supplied
/// sequence. Realised values are always nonnegative energy quantities.
class DemandProfile {
 public:
  struct Constant {
    double d;
  };
  struct Sinusoid {
    double mu;
    double amplitude;
  };
  struct Custom {
    std::vector<double> sequence;
  };

  explicit DemandProfile(Constant c);
  explicit DemandProfile(Sinusoid s);
  explicit DemandProfile(Custom c);

  /// Materialise the first n hours. `alpha` is the supply-cost curvature and
  /// only enters the sinusoid variant (which is specified in price units).
  std::vector<double> realize(std::size_t n, double alpha) const;

  bool is_constant() const;
  /// Level of a Constant profile; throws for the other variants.
  double constant_level() const;

  const std::variant<Constant, Sinusoid, Custom>& value() const { return v_; }

 private:
  std::variant<Constant, Sinusoid, Custom> v_;
};

}  // namespace rtm
