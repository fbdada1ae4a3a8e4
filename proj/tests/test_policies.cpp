#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rtm/policies.hpp"

using namespace rtm;

TEST_CASE("price memory policy matches hand-evaluated points") {
  CHECK(price_memory_policy(3.0, 3.0, 1.0, 4.0) == 1.0);
  CHECK(price_memory_policy(4.0, 3.0, 1.0, 4.0) == doctest::Approx(0.875).epsilon(1e-15));
  CHECK(price_memory_policy(2.0, 3.0, 0.0, 4.0) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK_THROWS_AS(price_memory_policy(1.0, 1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(price_memory_policy(1.0, 1.0, 1.0, -4.0), std::invalid_argument);
}

TEST_CASE("pc memory policy: hand point, fixed point, rejections") {
  // lambda 0 -> 1, u_prev = 1, d constant 1, rho = 0.1, gamma = 4:
  // (1 + (1/8)(-1 + 0.2)) / 1.025 = 0.9/1.025 = 36/41.
  const ConsumerState s{0.0, 1.0, 1.0};
  CHECK(pc_memory_policy(s, 1.0, 1.0, 0.1, 4.0) ==
        doctest::Approx(36.0 / 41.0).epsilon(1e-15));

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> val(0.0, 5.0);
  std::uniform_real_distribution<double> rho_gen(0.0, 3.0);
  std::uniform_real_distribution<double> gamma_gen(0.5, 8.0);
  for (int i = 0; i < 200; ++i) {
    const double d = val(rng);
    const double lam = val(rng);
    const ConsumerState fp{lam, d, d};
    CHECK(pc_memory_policy(fp, lam, d, rho_gen(rng), gamma_gen(rng)) ==
          doctest::Approx(d).epsilon(1e-13));
  }

  CHECK_THROWS_AS(pc_memory_policy(s, 1.0, 1.0, -0.1, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(pc_memory_policy(s, 1.0, 1.0, 0.1, 0.0), std::invalid_argument);
  const ConsumerState bad{std::nan(""), 1.0, 1.0};
  CHECK_THROWS_AS(pc_memory_policy(bad, 1.0, 1.0, 0.1, 4.0), std::invalid_argument);
}

TEST_CASE("pc memory policy reduces to price memory at rho = 0") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> val(-5.0, 5.0);
  std::uniform_real_distribution<double> beta_gen(0.5, 8.0);
  for (int i = 0; i < 1000; ++i) {
    const double lam = val(rng);
    const double lam_prev = val(rng);
    const double d = val(rng);
    const double beta = beta_gen(rng);
    const ConsumerState s{lam_prev, val(rng), val(rng)};
    const double a = pc_memory_policy(s, lam, d, 0.0, beta);
    const double b = price_memory_policy(lam, lam_prev, d, beta);
    CHECK(std::fabs(a - b) <= 1e-15 * std::max(1.0, std::fabs(b)));
  }
}

TEST_CASE("finite horizon policy tapers the price response") {
  CHECK(finite_horizon_policy(2, 4.0, 3.0, 1.0, 4.0) ==
        doctest::Approx(0.875).epsilon(1e-15));
  CHECK(finite_horizon_policy(5, 4.0, 3.0, 1.0, 4.0) ==
        doctest::Approx(0.96875).epsilon(1e-15));
  CHECK(finite_horizon_policy(7, 2.5, 2.5, 3.0, 1.0) == 3.0);
  CHECK_THROWS_AS(finite_horizon_policy(1, 4.0, 3.0, 1.0, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(finite_horizon_policy(0, 4.0, 3.0, 1.0, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(finite_horizon_policy(3, 4.0, 3.0, 1.0, -1.0), std::invalid_argument);

  // Two steps to go coincides with the stationary rule.
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> val(0.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double lam = val(rng);
    const double prev = val(rng);
    const double d = val(rng);
    const double beta = 1.0 + val(rng);
    CHECK(finite_horizon_policy(2, lam, prev, d, beta) ==
          price_memory_policy(lam, prev, d, beta));
  }
}

TEST_CASE("terminal clear policy") {
  CHECK(terminal_clear_policy(0.0, 1.0) == 1.0);
  CHECK(terminal_clear_policy(-0.5, 1.0) == 1.5);
  CHECK(terminal_clear_policy(-2.0, 0.0) == 2.0);
}

TEST_CASE("static policy evaluates the supplied inverse") {
  CHECK(static_policy(1.0, [](double l) { return std::max(0.0, 2.0 - l); }) == 1.0);
  CHECK(static_policy(9.0, [](double) { return 0.7; }) == 0.7);
  // v(u) = u - u^2/2  =>  vdot^-1(l) = 1 - l
  CHECK(static_policy(0.25, [](double l) { return 1.0 - l; }) == 0.75);
  CHECK_THROWS_AS(static_policy(1.0, [](double) { return std::nan(""); }),
                  std::invalid_argument);
  CHECK_THROWS_AS(static_policy(1.0, std::function<double(double)>{}),
                  std::invalid_argument);
}
