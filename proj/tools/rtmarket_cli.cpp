// Command-line front end: closed-loop simulation runs, stability reports,
// stability-region sweeps, and the grid-oracle verification of the
// finite-horizon schedule. Emits plot-ready CSV and machine-readable JSON.
//
// Exit codes: 0 success, 1 bad input, 2 divergence detected,
//             3 internal verification failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rtm/analysis.hpp"
#include "rtm/csv.hpp"
#include "rtm/demand.hpp"
#include "rtm/inventory.hpp"
#include "rtm/market_params.hpp"
#include "rtm/oracle.hpp"
#include "rtm/simulate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitDiverged = 2;
constexpr int kExitVerifyFailed = 3;

struct CommonArgs {
  std::string model = "price-memory";
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  double rho = 0.0;
  std::string demand = "constant";
  double d = 1.0;
  double mu = 1.0;
  double amplitude = 0.0;
  std::vector<double> custom_demand;
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  std::size_t horizon = 500;
  double static_a = 1.0;  // Static model: vdot^-1(l) = static_a - static_b * l
  double static_b = 1.0;
  std::string out = ".";
  std::string emit = "both";  // csv | json | both
};

void add_common_options(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--model", a.model, "static | price-memory | pc-memory")
      ->check(CLI::IsMember({"static", "price-memory", "pc-memory"}));
  cmd->add_option("--alpha", a.alpha, "supply cost curvature");
  cmd->add_option("--beta", a.beta, "backlog disutility curvature");
  cmd->add_option("--gamma", a.gamma, "value function curvature");
  cmd->add_option("--rho", a.rho, "deviation penalty weight");
  cmd->add_option("--demand", a.demand, "constant | sinusoid | custom")
      ->check(CLI::IsMember({"constant", "sinusoid", "custom"}));
  cmd->add_option("--d", a.d, "constant demand level");
  cmd->add_option("--mu", a.mu, "sinusoid demand mean (price units)");
  cmd->add_option("--amplitude", a.amplitude, "sinusoid demand amplitude (price units)");
  cmd->add_option("--custom-demand", a.custom_demand, "explicit demand sequence")
      ->delimiter(',');
  cmd->add_option("--lambda0", a.lambda0, "seed price at k = 0");
  cmd->add_option("--lambda1", a.lambda1, "seed price at k = 1");
  cmd->add_option("--horizon", a.horizon, "number of hours to simulate");
  cmd->add_option("--static-a", a.static_a, "static model: intercept of vdot^-1");
  cmd->add_option("--static-b", a.static_b, "static model: slope of vdot^-1");
  cmd->add_option("--out", a.out, "output directory");
  cmd->add_option("--emit", a.emit, "csv | json | both")
      ->check(CLI::IsMember({"csv", "json", "both"}));
  cmd->set_config("--config", "", "INI config file (flags override it)");
}

rtm::ConsumptionModel parse_model(const std::string& m) {
  if (m == "static") return rtm::ConsumptionModel::Static;
  if (m == "price-memory") return rtm::ConsumptionModel::PriceMemory;
  return rtm::ConsumptionModel::PriceConsumptionMemory;
}

rtm::DemandProfile make_demand(const CommonArgs& a) {
  if (a.demand == "constant")
    return rtm::DemandProfile(rtm::DemandProfile::Constant{a.d});
  if (a.demand == "sinusoid")
    return rtm::DemandProfile(rtm::DemandProfile::Sinusoid{a.mu, a.amplitude});
  return rtm::DemandProfile(rtm::DemandProfile::Custom{a.custom_demand});
}

json params_json(const CommonArgs& a, const rtm::MarketParams& p) {
  json demand{{"kind", a.demand},
              {"d", nullptr},
              {"mu", nullptr},
              {"amplitude", nullptr}};
  if (a.demand == "constant") demand["d"] = a.d;
  if (a.demand == "sinusoid") {
    demand["mu"] = a.mu;
    demand["amplitude"] = a.amplitude;
  }
  return json{{"model", a.model},          {"alpha", p.alpha()},
              {"beta", p.beta()},          {"gamma", p.gamma()},
              {"rho", p.rho()},            {"epsilon", p.epsilon()},
              {"epsilon_tilde", p.epsilon_tilde()},
              {"lambda0", a.lambda0},      {"lambda1", a.lambda1},
              {"horizon", a.horizon},      {"demand", demand}};
}

json stability_json(const rtm::StabilityReport& rep) {
  return json{{"roots", {rep.roots.x1, rep.roots.x2}},
              {"spectral_radius", rep.spectral_radius},
              {"stable", rep.stable},
              {"criterion", rep.threshold_note}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

int cmd_simulate(const CommonArgs& a) {
  const rtm::MarketParams params(a.alpha, a.beta, a.gamma, a.rho);
  const rtm::ConsumptionModel model = parse_model(a.model);

  rtm::SimulationConfig cfg{model,     params,    make_demand(a), a.lambda0,
                            a.lambda1, a.horizon, nullptr,        1e12};
  if (model == rtm::ConsumptionModel::Static) {
    const double ia = a.static_a;
    const double ib = a.static_b;
    if (ib <= 0.0)
      throw std::invalid_argument("static model: --static-b must be > 0 (decreasing inverse)");
    cfg.vdot_inverse = [ia, ib](double l) { return ia - ib * l; };
  }

  const rtm::SimulationResult res = rtm::simulate(cfg);
  const auto& traj = res.trajectory;

  // Closed form and stability where the linear theory applies.
  std::optional<rtm::ClosedFormSolution> closed;
  json stability = nullptr;
  json fixed = nullptr;
  json limiting = nullptr;
  std::function<double(std::size_t)> reference;

  if (model == rtm::ConsumptionModel::PriceMemory) {
    stability = stability_json(rtm::is_stable_price_memory(params.epsilon()));
    if (a.demand == "constant") {
      closed = rtm::closed_form_constant(params, a.d, a.lambda0, a.lambda1);
      const auto fp = rtm::fixed_point(params.alpha(), a.d);
      fixed = json{{"lambda", fp.lambda_star}, {"u", fp.u_star}};
      reference = [fp](std::size_t) { return fp.lambda_star; };
    } else if (a.demand == "sinusoid") {
      closed = rtm::closed_form_variable(params, a.mu, a.amplitude, a.lambda0,
                                         a.lambda1);
      if (params.epsilon() < 0.5) {
        const auto lim = rtm::limiting_sinusoid(params.epsilon(), a.mu, a.amplitude);
        limiting = json{{"mean", lim.mean},
                        {"magnitude", lim.magnitude},
                        {"phase_shift", lim.phase_shift}};
        reference = [lim](std::size_t k) { return lim.evaluate(k); };
      }
    }
  } else if (model == rtm::ConsumptionModel::PriceConsumptionMemory) {
    stability = stability_json(
        rtm::is_stable_pc_memory(params.alpha(), params.gamma(), params.rho()));
    if (a.demand == "constant") {
      const auto fp = rtm::fixed_point(params.alpha(), a.d);
      fixed = json{{"lambda", fp.lambda_star}, {"u", fp.u_star}};
      reference = [fp](std::size_t) { return fp.lambda_star; };
    }
  }

  bool diverged = res.overflowed;
  if (!diverged && reference)
    diverged = !rtm::empirically_stable(traj.lambda, reference);

  const fs::path outdir(a.out);
  fs::create_directories(outdir);

  if (a.emit == "csv" || a.emit == "both") {
    std::vector<double> cf_column;
    if (closed) cf_column = closed->evaluate_sequence(traj.size());
    rtm::write_trajectory_csv(outdir / "trajectory.csv", traj,
                              closed ? &cf_column : nullptr);
  }
  if (a.emit == "json" || a.emit == "both") {
    const json summary{{"params", params_json(a, params)},
                       {"stability", stability},
                       {"fixed_point", fixed},
                       {"diverged", diverged},
                       {"overflowed", res.overflowed},
                       {"steps", res.steps},
                       {"limiting_sinusoid", limiting}};
    write_text(outdir / "summary.json", summary.dump(2) + "\n");
  }

  std::cout << (diverged ? "diverged" : "converged") << " after " << res.steps
            << " steps\n";
  return diverged ? kExitDiverged : kExitOk;
}

struct AnalyzeArgs {
  std::string model = "price-memory";
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  double rho = 0.0;
  double epsilon = -1.0;  // >= 0 overrides alpha/beta for price-memory
  double d = 1.0;
  double mu = 0.0;
  double amplitude = -1.0;  // >= 0 switches on the sinusoid analysis
  std::string out;
};

int cmd_analyze(const AnalyzeArgs& a) {
  json report{{"model", a.model},       {"epsilon", nullptr},
              {"epsilon_tilde", nullptr}, {"roots", nullptr},
              {"spectral_radius", nullptr}, {"stable", nullptr},
              {"fixed_point", nullptr},  {"sinusoid_coefficients", nullptr},
              {"limiting_sinusoid", nullptr}};

  double eps = -1.0;
  if (a.model == "price-memory") {
    eps = a.epsilon >= 0.0 ? a.epsilon : a.alpha / a.beta;
    const auto rep = rtm::is_stable_price_memory(eps);
    report["epsilon"] = eps;
    report["roots"] = {rep.roots.x1, rep.roots.x2};
    report["spectral_radius"] = rep.spectral_radius;
    report["stable"] = rep.stable;
  } else if (a.model == "pc-memory") {
    const auto rep = rtm::is_stable_pc_memory(a.alpha, a.gamma, a.rho);
    report["epsilon_tilde"] = a.alpha / a.gamma;
    report["roots"] = {rep.roots.x1, rep.roots.x2};
    report["spectral_radius"] = rep.spectral_radius;
    report["stable"] = rep.stable;
  } else {
    throw std::invalid_argument("analyze: --model must be price-memory or pc-memory");
  }

  if (a.d >= 0.0 && a.alpha > 0.0) {
    const auto fp = rtm::fixed_point(a.alpha, a.d);
    report["fixed_point"] = json{{"lambda", fp.lambda_star}, {"u", fp.u_star}};
  }

  if (a.amplitude >= 0.0 && a.model == "price-memory") {
    const auto c = rtm::sinusoid_particular(eps, a.mu, a.amplitude);
    report["sinusoid_coefficients"] = json{{"e0", c.e0}, {"e1", c.e1}, {"e2", c.e2}};
    if (eps < 0.5) {
      const auto lim = rtm::limiting_sinusoid(eps, a.mu, a.amplitude);
      report["limiting_sinusoid"] = json{{"mean", lim.mean},
                                         {"magnitude", lim.magnitude},
                                         {"phase_shift", lim.phase_shift}};
    }
  }

  const std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (!a.out.empty()) {
    fs::create_directories(fs::path(a.out));
    write_text(fs::path(a.out) / "analysis.json", text);
  }
  return kExitOk;
}

struct SweepArgs {
  std::vector<double> epsilon_grid;
  std::string epsilon_range;  // start:stop:step
  std::vector<double> rho_grid;
  std::string rho_range;
  double alpha = 2.04;
  double gamma = 4.0;
  std::size_t steps = 2000;
  std::string out = ".";
};

std::vector<double> parse_range(const std::string& spec) {
  double start = 0.0, stop = 0.0, step = 0.0;
  char c1 = 0, c2 = 0;
  std::istringstream in(spec);
  in >> start >> c1 >> stop >> c2 >> step;
  if (!in || c1 != ':' || c2 != ':' || step <= 0.0 || stop < start)
    throw std::invalid_argument("bad range spec (want start:stop:step): " + spec);
  std::vector<double> grid;
  for (double v = start; v <= stop + 0.5 * step; v += step) grid.push_back(v);
  if (grid.size() > 1000000) throw std::invalid_argument("sweep grid exceeds 1e6 points");
  return grid;
}

int cmd_sweep(const SweepArgs& a) {
  const bool eps_mode = !a.epsilon_grid.empty() || !a.epsilon_range.empty();
  const bool rho_mode = !a.rho_grid.empty() || !a.rho_range.empty();
  if (eps_mode == rho_mode)
    throw std::invalid_argument("sweep: give exactly one of --epsilon-grid/--epsilon-range "
                                "or --rho-grid/--rho-range");

  fs::create_directories(fs::path(a.out));
  std::ofstream csv(fs::path(a.out) / "sweep.csv");
  if (!csv) throw std::runtime_error("cannot open sweep.csv for writing");

  if (eps_mode) {
    auto grid = a.epsilon_grid;
    if (!a.epsilon_range.empty()) grid = parse_range(a.epsilon_range);
    if (grid.size() > 1000000)
      throw std::invalid_argument("sweep grid exceeds 1e6 points");
    const auto rows = rtm::stability_sweep_epsilon(grid, a.steps);
    csv << "epsilon,analytic_stable,empirical_stable,spectral_radius\n";
    for (const auto& r : rows)
      csv << rtm::format_full(r.epsilon) << ','
          << (r.analytic_stable ? "true" : "false") << ','
          << (r.empirical_stable ? "true" : "false") << ','
          << rtm::format_full(r.spectral_radius) << '\n';
    std::cout << rows.size() << " rows written\n";
  } else {
    auto grid = a.rho_grid;
    if (!a.rho_range.empty()) grid = parse_range(a.rho_range);
    if (grid.size() > 1000000)
      throw std::invalid_argument("sweep grid exceeds 1e6 points");
    const auto rows = rtm::stability_sweep_rho(a.alpha, a.gamma, grid, a.steps);
    csv << "alpha,gamma,rho,analytic_stable,empirical_stable,spectral_radius\n";
    for (const auto& r : rows)
      csv << rtm::format_full(r.alpha) << ',' << rtm::format_full(r.gamma) << ','
          << rtm::format_full(r.rho) << ','
          << (r.analytic_stable ? "true" : "false") << ','
          << (r.empirical_stable ? "true" : "false") << ','
          << rtm::format_full(r.spectral_radius) << '\n';
    std::cout << rows.size() << " rows written\n";
  }
  return kExitOk;
}

struct VerifyArgs {
  std::size_t instances = 50;
  std::size_t max_horizon = 6;
  unsigned seed = 42;
  double x_min = -10.0;
  std::size_t x_steps = 2000;
  double u_max = 16.0;
  std::size_t u_steps = 2000;
  bool constant_prices = false;
  std::string out = ".";
};

int cmd_verify_dp(const VerifyArgs& a) {
  if (a.max_horizon > 8)
    throw std::invalid_argument("verify-dp: horizons above 8 are rejected (oracle cost)");
  const rtm::DpOracleGrid grid{a.x_min, a.x_steps, a.u_max, a.u_steps};
  grid.validate();

  struct Instance {
    rtm::InventoryProblem problem;
    double lambda_prior;
  };
  std::vector<Instance> instances;
  std::mt19937 rng(a.seed);
  std::uniform_real_distribution<double> val(0.0, 5.0);
  std::uniform_real_distribution<double> beta_gen(1.0, 8.0);
  for (std::size_t i = 0; i < a.instances; ++i) {
    Instance inst;
    const std::size_t n = 2 + rng() % (a.max_horizon - 1);
    inst.problem.horizon = n;
    inst.problem.beta = beta_gen(rng);
    inst.problem.rho = 0.0;
    inst.problem.demand.resize(n);
    for (auto& d : inst.problem.demand) d = val(rng);
    if (a.constant_prices) {
      inst.problem.prices.assign(n, val(rng));
    } else {
      inst.problem.prices.resize(n);
      for (auto& p : inst.problem.prices) p = val(rng);
    }
    inst.lambda_prior = inst.problem.prices[0];
    instances.push_back(std::move(inst));
  }

  const double tolerance = 2.0 * grid.u_cell();
  json rows = json::array();
  std::vector<std::future<json>> futures;
  futures.reserve(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    futures.push_back(std::async(std::launch::async, [&, i]() -> json {
      const auto& inst = instances[i];
      json row{{"instance", i},
               {"horizon", inst.problem.horizon},
               {"beta", inst.problem.beta},
               {"max_deviation", nullptr},
               {"conservation_gap", nullptr},
               {"pass", false},
               {"error", nullptr}};
      try {
        const auto exact = rtm::solve_inventory(inst.problem, inst.lambda_prior);
        const auto oracle = rtm::dp_oracle(inst.problem, grid, inst.lambda_prior);
        double dev = 0.0;
        for (std::size_t k = 0; k < inst.problem.horizon; ++k)
          dev = std::max(dev, std::fabs(exact.u[k] - oracle.u[k]));
        double su = 0.0, sd = 0.0;
        for (std::size_t k = 0; k < inst.problem.horizon; ++k) {
          su += exact.u[k];
          sd += inst.problem.demand[k];
        }
        const double gap = std::fabs(su - sd);
        row["max_deviation"] = dev;
        row["conservation_gap"] = gap;
        row["pass"] = dev <= tolerance && gap <= 1e-12 * std::max(1.0, sd);
      } catch (const rtm::GridEscapeError& e) {
        row["error"] = std::string("grid escape: ") + e.what();
      }
      return row;
    }));
  }
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t passed = 0;
  for (auto& f : futures) {
    json row = f.get();
    if (row["pass"].get<bool>()) ++passed;
    rows.push_back(std::move(row));
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const bool all_pass = passed == instances.size();
  const json report{{"instances", instances.size()},
                    {"passed", passed},
                    {"tolerance", tolerance},
                    {"grid", {{"x_min", a.x_min},
                              {"x_steps", a.x_steps},
                              {"u_max", a.u_max},
                              {"u_steps", a.u_steps}}},
                    {"constant_prices", a.constant_prices},
                    {"seconds", elapsed},
                    {"all_pass", all_pass},
                    {"results", rows}};

  fs::create_directories(fs::path(a.out));
  write_text(fs::path(a.out) / "verify_dp.json", report.dump(2) + "\n");
  std::cout << passed << "/" << instances.size() << " instances within "
            << tolerance << " of the oracle\n";
  if (!all_pass && !a.constant_prices)
    std::cout << "note: the closed-form schedule and the certainty-equivalent "
                 "optimum coincide only on constant price paths; rerun with "
                 "--constant-prices for the regime where they must agree\n";
  return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"real-time electricity market dynamics toolkit"};
  app.require_subcommand(1);

  CommonArgs sim_args;
  CLI::App* sim = app.add_subcommand("simulate", "run the closed price/consumption loop");
  add_common_options(sim, sim_args);

  AnalyzeArgs an_args;
  CLI::App* an = app.add_subcommand("analyze", "roots, stability, fixed point, limiting sinusoid");
  an->add_option("--model", an_args.model, "price-memory | pc-memory")
      ->check(CLI::IsMember({"price-memory", "pc-memory"}));
  an->add_option("--alpha", an_args.alpha);
  an->add_option("--beta", an_args.beta);
  an->add_option("--gamma", an_args.gamma);
  an->add_option("--rho", an_args.rho);
  an->add_option("--epsilon", an_args.epsilon, "use this ratio directly (price-memory)");
  an->add_option("--d", an_args.d, "demand level for the fixed point");
  an->add_option("--mu", an_args.mu);
  an->add_option("--amplitude", an_args.amplitude, "enables the sinusoid analysis");
  an->add_option("--out", an_args.out);
  an->set_config("--config");

  SweepArgs sw_args;
  CLI::App* sw = app.add_subcommand("sweep", "stability region map: analytic vs empirical");
  sw->add_option("--epsilon-grid", sw_args.epsilon_grid)->delimiter(',');
  sw->add_option("--epsilon-range", sw_args.epsilon_range, "start:stop:step");
  sw->add_option("--rho-grid", sw_args.rho_grid)->delimiter(',');
  sw->add_option("--rho-range", sw_args.rho_range, "start:stop:step");
  sw->add_option("--alpha", sw_args.alpha);
  sw->add_option("--gamma", sw_args.gamma);
  sw->add_option("--steps", sw_args.steps);
  sw->add_option("--out", sw_args.out);
  sw->set_config("--config");

  VerifyArgs vf_args;
  CLI::App* vf = app.add_subcommand("verify-dp", "grid oracle vs closed-form schedule");
  vf->add_option("--instances", vf_args.instances);
  vf->add_option("--max-horizon", vf_args.max_horizon);
  vf->add_option("--seed", vf_args.seed);
  vf->add_option("--x-min", vf_args.x_min);
  vf->add_option("--x-steps", vf_args.x_steps);
  vf->add_option("--u-max", vf_args.u_max);
  vf->add_option("--u-steps", vf_args.u_steps);
  vf->add_flag("--constant-prices", vf_args.constant_prices,
               "draw one price per instance instead of one per hour");
  vf->add_option("--out", vf_args.out);
  vf->set_config("--config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim_args);
    if (an->parsed()) return cmd_analyze(an_args);
    if (sw->parsed()) return cmd_sweep(sw_args);
    if (vf->parsed()) return cmd_verify_dp(vf_args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitVerifyFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
