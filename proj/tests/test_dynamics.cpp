#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rtm/analysis.hpp"
#include "rtm/simulate.hpp"

using namespace rtm;

namespace {

SimulationConfig fig2_config(double alpha) {
  SimulationConfig c{ConsumptionModel::PriceMemory,
                     MarketParams(alpha, 4.0, 4.0, 0.0),
                     DemandProfile(DemandProfile::Constant{1.0}),
                     3.0,
                     3.0,
                     500};
  return c;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace

TEST_CASE("stable constant-demand loop settles on the fixed point") {
  const auto res = simulate(fig2_config(1.92));
  REQUIRE(res.steps == 500);
  CHECK_FALSE(res.overflowed);
  CHECK(std::fabs(res.trajectory.lambda.back() - 3.84) < 1e-6);
  CHECK(std::fabs(res.trajectory.u.back() - 1.0) < 1e-6);
  CHECK_NOTHROW(validate(res.trajectory));
}

TEST_CASE("unstable constant-demand loop blows past 100 and fails contraction") {
  const auto res = simulate(fig2_config(2.04));
  CHECK(max_abs(res.trajectory.lambda) > 100.0);
  const bool contracting = empirically_stable(
      res.trajectory.lambda, [](std::size_t) { return 4.08; });
  const bool diverged = res.overflowed || !contracting;
  CHECK(diverged);
}

TEST_CASE("runs seeded on the fixed point stay there") {
  auto c = fig2_config(1.92);
  c.lambda0 = c.lambda1 = 3.84;
  const auto res = simulate(c);
  for (double l : res.trajectory.lambda) CHECK(l == doctest::Approx(3.84).epsilon(1e-13));
  for (double u : res.trajectory.u) CHECK(u == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("price-memory backlog telescopes to the price deviation") {
  auto c = fig2_config(1.92);
  c.lambda0 = 2.0;
  c.lambda1 = 3.5;
  const auto res = simulate(c);
  const auto& t = res.trajectory;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const double expect = (c.lambda0 - t.lambda[k]) / (2.0 * c.params.beta());
    CHECK(std::fabs(t.x[k + 1] - expect) <= 1e-12 * std::max(1.0, std::fabs(expect)));
  }
}

TEST_CASE("ex-ante pricing identity") {
  // Constant demand: lambda_{k+1} = 2*alpha*u_k exactly. Both seed prices are
  // exogenous, so the identity starts at k = 1.
  auto c = fig2_config(1.92);
  c.lambda0 = 2.0;
  c.lambda1 = 3.5;
  const auto res = simulate(c);
  const auto& t = res.trajectory;
  for (std::size_t k = 1; k + 1 < t.size(); ++k)
    CHECK(t.lambda[k + 1] ==
          doctest::Approx(2.0 * c.params.alpha() * t.u[k]).epsilon(1e-12));

  // The pc-memory seed u_0 = lambda1/(2*alpha) extends it to k = 0.
  SimulationConfig pc{ConsumptionModel::PriceConsumptionMemory,
                      MarketParams(2.04, 4.0, 4.0, 0.1),
                      DemandProfile(DemandProfile::Constant{1.0}), 1.0, 2.0, 200};
  const auto pres = simulate(pc);
  for (std::size_t k = 0; k + 1 < pres.trajectory.size(); ++k)
    CHECK(pres.trajectory.lambda[k + 1] ==
          doctest::Approx(2.0 * pc.params.alpha() * pres.trajectory.u[k])
              .epsilon(1e-12));

  // Variable demand: the supplier's prediction adds the known demand delta.
  SimulationConfig v{ConsumptionModel::PriceMemory,
                     MarketParams(1.92, 4.0, 4.0, 0.0),
                     DemandProfile(DemandProfile::Sinusoid{3.84, 1.0}),
                     2.0,
                     3.0,
                     200};
  const auto vres = simulate(v);
  const auto& vt = vres.trajectory;
  for (std::size_t k = 1; k + 1 < vt.size(); ++k) {
    const double predicted = vt.u[k] + (vt.d[k + 1] - vt.d[k]);
    CHECK(vt.lambda[k + 1] ==
          doctest::Approx(2.0 * v.params.alpha() * predicted).epsilon(1e-12));
  }
}

TEST_CASE("coupled loop and price-only recursion agree") {
  const MarketParams pm(1.92, 4.0, 4.0, 0.0);
  SUBCASE("price memory, sinusoid demand") {
    SimulationConfig c{ConsumptionModel::PriceMemory, pm,
                       DemandProfile(DemandProfile::Sinusoid{3.84, 1.2}),
                       2.0, 3.0, 500};
    const auto res = simulate(c);
    const auto d = c.demand.realize(500, pm.alpha());
    const auto rec =
        simulate_price_recursion(ConsumptionModel::PriceMemory, pm, d, 2.0, 3.0, 500);
    REQUIRE(rec.size() == res.trajectory.lambda.size());
    for (std::size_t k = 0; k < rec.size(); ++k)
      CHECK(std::fabs(rec[k] - res.trajectory.lambda[k]) <=
            1e-10 * std::max(1.0, std::fabs(rec[k])));
  }
  SUBCASE("price+consumption memory, constant demand") {
    const MarketParams pc(2.04, 4.0, 4.0, 0.1);
    SimulationConfig c{ConsumptionModel::PriceConsumptionMemory, pc,
                       DemandProfile(DemandProfile::Constant{1.0}), 0.0, 0.0, 500};
    const auto res = simulate(c);
    const auto d = c.demand.realize(500, pc.alpha());
    const auto rec = simulate_price_recursion(ConsumptionModel::PriceConsumptionMemory,
                                              pc, d, 0.0, 0.0, 500);
    REQUIRE(rec.size() == res.trajectory.lambda.size());
    for (std::size_t k = 0; k < rec.size(); ++k)
      CHECK(std::fabs(rec[k] - res.trajectory.lambda[k]) <=
            1e-10 * std::max(1.0, std::fabs(rec[k])));
  }
  SUBCASE("price+consumption memory, sinusoid demand") {
    const MarketParams pc(1.8, 4.0, 4.0, 0.3);
    SimulationConfig c{ConsumptionModel::PriceConsumptionMemory, pc,
                       DemandProfile(DemandProfile::Sinusoid{4.0, 1.0}), 1.0, 2.0, 400};
    const auto res = simulate(c);
    const auto d = c.demand.realize(400, pc.alpha());
    const auto rec = simulate_price_recursion(ConsumptionModel::PriceConsumptionMemory,
                                              pc, d, 1.0, 2.0, 400);
    for (std::size_t k = 0; k < rec.size(); ++k)
      CHECK(std::fabs(rec[k] - res.trajectory.lambda[k]) <=
            1e-10 * std::max(1.0, std::fabs(rec[k])));
  }
}

TEST_CASE("price recursion: fixed-point seed and one hand step") {
  const MarketParams p(1.92, 4.0, 4.0, 0.0);
  const std::vector<double> d(10, 1.0);
  SUBCASE("seeded at 2*alpha*d the recursion is constant") {
    const auto lam = simulate_price_recursion(ConsumptionModel::PriceMemory, p, d,
                                              3.84, 3.84, 10);
    for (double l : lam) CHECK(l == doctest::Approx(3.84).epsilon(1e-15));
  }
  SUBCASE("lambda_2 = -0.48*3 + 0.48*3 + 3.84") {
    const auto lam =
        simulate_price_recursion(ConsumptionModel::PriceMemory, p, d, 3.0, 3.0, 3);
    CHECK(lam[2] == doctest::Approx(3.84).epsilon(1e-15));
  }
}

TEST_CASE("static model follows the supplied inverse utility") {
  SimulationConfig c{ConsumptionModel::Static,
                     MarketParams(0.2, 1.0, 1.0, 0.0),
                     DemandProfile(DemandProfile::Constant{0.0}),
                     0.9,
                     0.0,
                     50,
                     [](double l) { return 1.0 - l; }};
  const auto res = simulate(c);
  // Hand recursion: lambda_{k+1} = 0.4*(1 - lambda_k).
  double lam = 0.9;
  for (std::size_t k = 0; k < res.steps; ++k) {
    CHECK(res.trajectory.lambda[k] == doctest::Approx(lam).epsilon(1e-13));
    CHECK(res.trajectory.u[k] == doctest::Approx(1.0 - lam).epsilon(1e-13));
    lam = 0.4 * (1.0 - lam);
  }
  SimulationConfig missing = c;
  missing.vdot_inverse = nullptr;
  CHECK_THROWS_AS(simulate(missing), std::invalid_argument);
}

TEST_CASE("pc-memory loop: stabilisation by the deviation penalty") {
  SimulationConfig stable{ConsumptionModel::PriceConsumptionMemory,
                          MarketParams(2.04, 4.0, 4.0, 0.1),
                          DemandProfile(DemandProfile::Constant{1.0}), 0.0, 0.0, 1500};
  const auto res = simulate(stable);
  REQUIRE_FALSE(res.overflowed);
  CHECK(std::fabs(res.trajectory.lambda.back() - 4.08) < 1e-4);
  CHECK(std::fabs(res.trajectory.u.back() - 1.0) < 1e-4);

  SimulationConfig unstable = stable;
  unstable.params = MarketParams(2.04, 4.0, 4.0, 0.0);
  unstable.horizon = 4000;
  const auto bad = simulate(unstable);
  CHECK(bad.overflowed);
  CHECK(bad.steps < 4000);
  for (double l : bad.trajectory.lambda) CHECK(std::isfinite(l));
}

TEST_CASE("stable runs contract at the dominant root's rate") {
  const auto res = simulate(fig2_config(1.92));
  const auto roots = roots_price_memory(0.48);
  const double radius = std::max(std::fabs(roots.x1), std::fabs(roots.x2));
  const auto& lam = res.trajectory.lambda;
  const double dev_a = std::fabs(lam[399] - 3.84);
  const double dev_b = std::fabs(lam[499] - 3.84);
  REQUIRE(dev_a > 0.0);
  const double fitted = std::pow(dev_b / dev_a, 1.0 / 100.0);
  CHECK(std::fabs(fitted - radius) <= 0.05 * radius);
}

TEST_CASE("recursion rejects the static model and short horizons") {
  const MarketParams p(1.0, 4.0, 4.0, 0.0);
  const std::vector<double> d(10, 1.0);
  CHECK_THROWS_AS(simulate_price_recursion(ConsumptionModel::Static, p, d, 1, 1, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(simulate_price_recursion(ConsumptionModel::PriceMemory, p, d, 1, 1, 1),
                  std::invalid_argument);
  SimulationConfig c{ConsumptionModel::PriceMemory, p,
                     DemandProfile(DemandProfile::Constant{1.0}), 1.0, 1.0, 1};
  CHECK_THROWS_AS(simulate(c), std::invalid_argument);
}
