#include <cstdint>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sysid/bounds.hpp"
#include "sysid/errors.hpp"
#include "sysid/estimators.hpp"
#include "sysid/experiment.hpp"
#include "sysid/json_io.hpp"
#include "sysid/pac.hpp"
#include "sysid/simulate.hpp"
#include "sysid/trajectory.hpp"

namespace {

using sysid::json;

json inference_to_json(const sysid::InferenceResult& result) {
  return json{{"A", sysid::matrix_to_json(result.A)},
              {"a", sysid::vector_to_json(result.a)},
              {"feasible", result.feasible},
              {"rank", result.rank}};
}

void emit(const json& j, const std::string& output) {
  if (output.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    sysid::save_json_file(output, j);
  }
}

struct SimulateArgs {
  std::string system_file;
  std::string noise_file;
  int steps = 0;
  std::uint64_t seed = 0;
  bool record = false;
  std::string output;
};

int run_simulate(const SimulateArgs& args) {
  const sysid::LinearSystem system =
      sysid::linear_system_from_json(sysid::load_json_file(args.system_file));
  const sysid::NoiseModel noise =
      sysid::noise_model_from_json(sysid::load_json_file(args.noise_file));
  const sysid::Trajectory traj =
      sysid::simulate(system, noise, args.steps, args.seed, args.record);
  sysid::save_trajectory_csv(traj, args.output);
  return 0;
}

struct InferArgs {
  std::string trajectory_file;
  std::string method = "proposed";
  std::string family_file;
  std::string family_kind = "chain";  // chain | full when built from --k/--p
  int k = 0;
  int p = 0;
  std::string output;
};

int run_infer(const InferArgs& args) {
  const sysid::Trajectory traj = sysid::load_trajectory_csv(args.trajectory_file);
  sysid::InferenceResult result;
  if (args.method == "proposed") {
    sysid::IndexFamily family;
    if (!args.family_file.empty()) {
      family = sysid::index_family_from_json(sysid::load_json_file(args.family_file));
    } else if (args.k > 0 && args.p > 0) {
      family = args.family_kind == "full" ? sysid::IndexFamily::full(args.k, args.p)
                                          : sysid::IndexFamily::chain(args.k, args.p);
    } else {
      throw sysid::ConfigError("proposed needs --family or --k with --p");
    }
    result = sysid::proposed_infer(traj, family);
  } else if (args.method == "naive" || args.method == "raw_ols") {
    if (args.k <= 0 || args.p <= 0) {
      throw sysid::ConfigError(args.method + " needs --k and --p");
    }
    result = args.method == "naive" ? sysid::naive_infer(traj, args.k, args.p)
                                    : sysid::raw_ols_infer(traj, args.k, args.p);
  } else {
    throw sysid::ConfigError("unknown method: " + args.method);
  }
  emit(inference_to_json(result), args.output);
  return 0;
}

struct BoundArgs {
  std::string system_file;
  std::string spectral_file;
  std::string noise_file;
  std::string family_file;
  std::string config_file;
  int n = 0;
  int k = 1;
  int p = 0;
  double phi = 0.0;
  double delta = 0.0;
  std::string output;
};

int run_bound(const BoundArgs& args) {
  if (args.p <= args.k) throw sysid::ConfigError("bound needs --p greater than --k");
  const sysid::NoiseModel noise =
      sysid::noise_model_from_json(sysid::load_json_file(args.noise_file));
  const sysid::NoiseVariances var = sysid::variances(noise);

  sysid::Matrix a_matrix;
  sysid::SpectralBounds spectral;
  int n = args.n;
  if (!args.system_file.empty()) {
    const sysid::LinearSystem system =
        sysid::linear_system_from_json(sysid::load_json_file(args.system_file));
    a_matrix = system.A;
    spectral = sysid::exact_spectral_bounds(system.A, args.k, args.p);
    n = system.n();
  } else if (!args.spectral_file.empty()) {
    spectral =
        sysid::spectral_bounds_from_json(sysid::load_json_file(args.spectral_file));
    if (n <= 0) throw sysid::ConfigError("bound with --spectral needs --n");
  } else {
    throw sysid::ConfigError("bound needs --system or --spectral");
  }

  sysid::ComplexityConfig config;
  if (!args.config_file.empty()) {
    config = sysid::complexity_config_from_json(sysid::load_json_file(args.config_file));
  }

  const sysid::BoundSet bounds = sysid::make_bound_set(args.k, args.p, n, var, spectral);
  const sysid::IndexFamily family =
      args.family_file.empty()
          ? sysid::IndexFamily::chain(args.k, args.p)
          : sysid::index_family_from_json(sysid::load_json_file(args.family_file));
  sysid::ConditionInputs inputs = sysid::condition_inputs(bounds, family);
  if (a_matrix.size() > 0) {
    sysid::attach_exact_inputs(inputs, a_matrix, bounds, family);
  }

  json out{{"k", args.k},
           {"p", args.p},
           {"n", n},
           {"f1", bounds.f1},
           {"f2", bounds.f2},
           {"g_factor", bounds.g_factor},
           {"f_sum", inputs.f_sum},
           {"p_bound", inputs.p_bound},
           {"cv_norm", inputs.cv_norm},
           {"block_count", inputs.block_count},
           {"spectral", sysid::to_json(spectral)}};
  if (inputs.pi_upsilon_norm) out["pi_upsilon_norm"] = *inputs.pi_upsilon_norm;
  if (inputs.gamma_min) out["gamma_min"] = *inputs.gamma_min;
  if (args.phi > 0.0 && args.delta > 0.0) {
    const long l = sysid::l_up(config, n, args.phi, args.delta, bounds.f2);
    out["l_up"] = l;
    out["m_lo"] = sysid::m_lo(config, n, args.phi, args.delta, bounds.f2, l);
    out["report"] = sysid::to_json(sysid::check_conditions(
        inputs, config, args.phi, args.delta, static_cast<double>(l)));
  }
  emit(out, args.output);
  return 0;
}

struct PacArgs {
  std::string request_file;
  std::string noise_file;
  std::string system_file;
  std::string spectral_file;
  std::string config_file;
  std::string limits_file;
  int n = 0;
  std::string output;
};

int run_pac_cmd(const PacArgs& args) {
  const sysid::PacRequest request =
      sysid::pac_request_from_json(sysid::load_json_file(args.request_file));
  const sysid::NoiseModel noise =
      sysid::noise_model_from_json(sysid::load_json_file(args.noise_file));
  const sysid::NoiseVariances var = sysid::variances(noise);

  sysid::PacLimits limits;
  if (!args.limits_file.empty()) {
    limits = sysid::pac_limits_from_json(sysid::load_json_file(args.limits_file));
  }
  sysid::ComplexityConfig config;
  if (!args.config_file.empty()) {
    config = sysid::complexity_config_from_json(sysid::load_json_file(args.config_file));
  }

  sysid::SpectralBounds spectral;
  int n = args.n;
  if (!args.system_file.empty()) {
    const sysid::LinearSystem system =
        sysid::linear_system_from_json(sysid::load_json_file(args.system_file));
    spectral = sysid::exact_spectral_bounds(
        system.A, request.k, static_cast<int>(limits.max_horizon));
    n = system.n();
  } else if (!args.spectral_file.empty()) {
    spectral =
        sysid::spectral_bounds_from_json(sysid::load_json_file(args.spectral_file));
    if (n <= 0) throw sysid::ConfigError("pac with --spectral needs --n");
  } else {
    throw sysid::ConfigError("pac needs --system or --spectral");
  }

  const sysid::PacOutcome outcome =
      sysid::run_pac(request, n, var, spectral, config, limits);
  emit(sysid::to_json(outcome), args.output);
  return 0;
}

struct ExperimentArgs {
  std::string preset;
  std::string spec_file;
  int trials = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 1;
  std::string output_dir = ".";
};

int run_experiment_cmd(const ExperimentArgs& args) {
  if ((args.preset.empty()) == (args.spec_file.empty())) {
    throw sysid::ConfigError("experiment needs exactly one of --preset or --spec");
  }

  if (args.preset == "horizon_demo_small" || args.preset == "horizon_demo_unit") {
    sysid::PacDemoSpec spec =
        sysid::horizon_demo_spec(args.preset == "horizon_demo_small");
    if (args.trials > 0) spec.trials = args.trials;
    if (args.seed_set) spec.master_seed = args.seed;
    const sysid::PacDemoResult result = sysid::run_pac_demo(spec, args.threads);
    const std::string path = args.output_dir + "/" + args.preset + ".json";
    sysid::save_json_file(path, sysid::to_json(result));
    std::cout << path << '\n';
    return 0;
  }

  sysid::ExperimentSpec spec;
  if (!args.preset.empty()) {
    if (args.preset == "count_sweep") {
      spec = sysid::count_sweep_spec();
    } else if (args.preset == "redundancy_sweep") {
      spec = sysid::redundancy_sweep_spec();
    } else if (args.preset == "horizon_sweep_small") {
      spec = sysid::horizon_sweep_spec(true);
    } else if (args.preset == "horizon_sweep_unit") {
      spec = sysid::horizon_sweep_spec(false);
    } else {
      throw sysid::ConfigError("unknown preset: " + args.preset);
    }
  } else {
    spec = sysid::experiment_spec_from_json(sysid::load_json_file(args.spec_file));
  }
  if (args.trials > 0) spec.trials = args.trials;
  if (args.seed_set) spec.master_seed = args.seed;

  const std::vector<sysid::SweepPoint> rows = sysid::run_experiment(spec, args.threads);
  const std::string path = args.output_dir + "/" + spec.name + ".csv";
  sysid::write_sweep_csv(path, rows);
  std::cout << path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-window inference for noisy linear dynamical systems"};
  app.require_subcommand(1);
  std::function<int()> action;

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "roll out a trajectory to CSV");
  simulate->add_option("--system", sim.system_file, "system JSON file")->required();
  simulate->add_option("--noise", sim.noise_file, "noise model JSON file")->required();
  simulate->add_option("--steps", sim.steps, "number of observations")->required();
  simulate->add_option("--seed", sim.seed, "RNG seed");
  simulate->add_flag("--record", sim.record, "include states and noises in the CSV");
  simulate->add_option("--output", sim.output, "output CSV path")->required();
  simulate->callback([&] { action = [&] { return run_simulate(sim); }; });

  InferArgs inf;
  auto* infer = app.add_subcommand("infer", "estimate (A, a) from a trajectory CSV");
  infer->add_option("--trajectory", inf.trajectory_file, "trajectory CSV")->required();
  infer->add_option("--method", inf.method, "proposed | naive | raw_ols");
  infer->add_option("--family", inf.family_file, "index family JSON (proposed)");
  infer->add_option("--family-kind", inf.family_kind,
                    "chain | full when using --k/--p with proposed");
  infer->add_option("--k", inf.k, "window start");
  infer->add_option("--p", inf.p, "window end");
  infer->add_option("--output", inf.output, "output JSON path (default stdout)");
  infer->callback([&] { action = [&] { return run_infer(inf); }; });

  BoundArgs bnd;
  auto* bound = app.add_subcommand("bound", "sample-complexity quantities and checks");
  bound->add_option("--system", bnd.system_file, "system JSON (exact route)");
  bound->add_option("--spectral", bnd.spectral_file, "spectral envelope JSON");
  bound->add_option("--noise", bnd.noise_file, "noise model JSON")->required();
  bound->add_option("--family", bnd.family_file, "index family JSON (default chain)");
  bound->add_option("--config", bnd.config_file, "complexity config JSON");
  bound->add_option("--n", bnd.n, "state dimension (with --spectral)");
  bound->add_option("--k", bnd.k, "window start");
  bound->add_option("--p", bnd.p, "window end")->required();
  bound->add_option("--phi", bnd.phi, "error radius; enables l_up and the report");
  bound->add_option("--delta", bnd.delta, "failure probability");
  bound->add_option("--output", bnd.output, "output JSON path (default stdout)");
  bound->callback([&] { action = [&] { return run_bound(bnd); }; });

  PacArgs pac;
  auto* pac_cmd = app.add_subcommand("pac", "verification workflow for a request");
  pac_cmd->add_option("--request", pac.request_file, "pac request JSON")->required();
  pac_cmd->add_option("--noise", pac.noise_file, "noise model JSON")->required();
  pac_cmd->add_option("--system", pac.system_file, "system JSON (exact envelopes)");
  pac_cmd->add_option("--spectral", pac.spectral_file, "spectral envelope JSON");
  pac_cmd->add_option("--config", pac.config_file, "complexity config JSON");
  pac_cmd->add_option("--limits", pac.limits_file, "workflow limits JSON");
  pac_cmd->add_option("--n", pac.n, "state dimension (with --spectral)");
  pac_cmd->add_option("--output", pac.output, "output JSON path (default stdout)");
  pac_cmd->callback([&] { action = [&] { return run_pac_cmd(pac); }; });

  ExperimentArgs exp;
  auto* experiment = app.add_subcommand("experiment", "run a Monte Carlo sweep");
  experiment->add_option("--preset", exp.preset,
                         "count_sweep | redundancy_sweep | horizon_sweep_small | "
                         "horizon_sweep_unit | horizon_demo_small | horizon_demo_unit");
  experiment->add_option("--spec", exp.spec_file, "experiment spec JSON");
  experiment->add_option("--trials", exp.trials, "override trial count");
  auto* seed_opt = experiment->add_option("--seed", exp.seed, "override master seed");
  experiment->add_option("--threads", exp.threads, "worker thread count");
  experiment->add_option("--output-dir", exp.output_dir, "directory for result files");
  experiment->callback([&] {
    exp.seed_set = seed_opt->count() > 0;
    action = [&] { return run_experiment_cmd(exp); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return action();
  } catch (const sysid::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const sysid::NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
