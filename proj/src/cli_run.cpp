#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "quenchbat/analysis.hpp"
#include "quenchbat/cli.hpp"
#include "quenchbat/csv.hpp"
#include "quenchbat/engine.hpp"
#include "quenchbat/errors.hpp"
#include "quenchbat/kernels.hpp"
#include "quenchbat/model_zoo.hpp"
#include "quenchbat/parallel.hpp"
#include "quenchbat/version.hpp"

namespace quenchbat::cli {

namespace {

const char* command_str(Command c) {
  switch (c) {
    case Command::kCurve: return "curve";
    case Command::kSweep: return "sweep";
    case Command::kPower: return "power";
    case Command::kScaling: return "scaling";
    case Command::kKinks: return "kinks";
    case Command::kRecurrence: return "recurrence";
  }
  return "curve";
}

// A point in parameter space, independent of the sampled axis, so sweeps
// can move one phase while the other stays put.
struct ModelParams {
  ModelKind kind;
  IsingParams ising;
  XYParams xy;
  ClusterIsingParams cluster;
  SshParams ssh;
  bool ssh_protocol;
  SshProtocolParams protocol;
  double protocol_delta1;
};

ModelParams base_params(const RunConfig& c) {
  return ModelParams{c.model,         c.ising,    c.xy, c.cluster, c.ssh, c.ssh_protocol,
                     c.protocol, c.protocol_delta1};
}

double* param_slot(ModelParams& m, const std::string& name) {
  switch (m.kind) {
    case ModelKind::kIsing:
      if (name == "h") return &m.ising.h;
      break;
    case ModelKind::kXy:
      if (name == "gamma") return &m.xy.gamma;
      if (name == "h") return &m.xy.h;
      break;
    case ModelKind::kCluster:
      if (name == "lambda") return &m.cluster.lambda;
      break;
    case ModelKind::kSsh:
      if (m.ssh_protocol) {
        if (name == "delta1") return &m.protocol_delta1;
      } else {
        if (name == "J1") return &m.ssh.j1;
        if (name == "J1p") return &m.ssh.j1p;
        if (name == "J2") return &m.ssh.j2;
        if (name == "J3") return &m.ssh.j3;
        if (name == "J3p") return &m.ssh.j3p;
      }
      break;
  }
  return nullptr;
}

void apply_param(ModelParams& m, const std::string& name, double value, bool additive) {
  double* slot = param_slot(m, name);
  if (slot == nullptr) throw ConfigError("quench.param", "unknown parameter '" + name + "'");
  *slot = additive ? *slot + value : value;
}

NambuModel build_nambu(const ModelParams& m) {
  switch (m.kind) {
    case ModelKind::kIsing: return build_ising(m.ising);
    case ModelKind::kXy: return build_xy(m.xy);
    default: return build_cluster_ising(m.cluster);
  }
}

DVectorModel build_dvec(const ModelParams& m) {
  if (m.ssh_protocol) return ssh_protocol_phase(m.protocol, m.protocol_delta1);
  return build_ssh(m.ssh);
}

struct CommandOutput {
  std::string csv_name;
  std::string csv_content;
  nlohmann::json results;
};

template <class BuildFn>
CommandOutput execute(const RunConfig& c, BuildFn build, int workers) {
  ThermalSpec thermal{c.beta, c.mu};
  EngineOptions opt{workers};
  ModelParams base = base_params(c);
  ModelParams quenched = base;
  if (!c.quench_param.empty()) {
    apply_param(quenched, c.quench_param, c.quench_amount, /*additive=*/true);
  }

  BzGrid grid = c.finite_grid
                    ? BzGrid::finite(static_cast<int>(c.grid_modes),
                                     c.integer_offset ? GridOffset::kInteger
                                                      : GridOffset::kHalfInteger)
                    : BzGrid::thermodynamic(c.grid_rel_tol);

  using ModelT = decltype(build(base));
  auto make_spec = [&](const ModelParams& a, const ModelParams& b, double tau) {
    return QuenchSpec<ModelT>{build(a), build(b), tau};
  };
  const double kInf = std::numeric_limits<double>::infinity();

  CommandOutput out;
  switch (c.command) {
    case Command::kCurve: {
      std::vector<double> taus;
      if (!c.tau_values.empty()) {
        taus = c.tau_values;
      } else if (c.tau_range.log_spacing) {
        taus = log_spaced_tau(c.tau_range.from, c.tau_range.to, c.tau_range.count);
      } else {
        taus.resize(c.tau_range.count);
        double step =
            (c.tau_range.to - c.tau_range.from) / static_cast<double>(c.tau_range.count - 1);
        for (std::size_t i = 0; i < c.tau_range.count; ++i) {
          taus[i] = c.tau_range.from + static_cast<double>(i) * step;
        }
        taus.back() = c.tau_range.to;
      }
      EnergyCurve curve = energy_curve(make_spec(base, quenched, 0.0), grid, thermal, taus, opt);
      std::size_t imax = 0;
      for (std::size_t i = 1; i < curve.energy.size(); ++i) {
        if (curve.energy[i] > curve.energy[imax]) imax = i;
      }
      out.csv_name = "curve.csv";
      out.csv_content = csv::two_columns("tau", "energy_per_site", curve.tau, curve.energy);
      out.results = {{"samples", curve.tau.size()},
                     {"e_max", curve.energy[imax]},
                     {"tau_at_max", curve.tau[imax]}};
      break;
    }
    case Command::kSweep:
    case Command::kKinks: {
      SweepAxis axis = SweepAxis::uniform(c.sweep_from, c.sweep_to, c.sweep_step);
      auto at = [&](double value) {
        ModelParams a = base;
        ModelParams b = quenched;
        switch (c.sweep_target) {
          case SweepTarget::kInitial:
            apply_param(a, c.sweep_param, value, /*additive=*/false);
            break;
          case SweepTarget::kFinal:
            apply_param(b, c.sweep_param, value, /*additive=*/false);
            break;
          case SweepTarget::kBoth:
            apply_param(a, c.sweep_param, value, /*additive=*/false);
            b = a;
            apply_param(b, c.quench_param, c.quench_amount, /*additive=*/true);
            break;
        }
        return make_spec(a, b, c.tau_value);
      };
      SweepResult sweep = sweep_stored_energy(std::function<QuenchSpec<ModelT>(double)>(at),
                                              axis.values, grid, thermal, opt);
      out.csv_name = "sweep.csv";
      out.csv_content = csv::two_columns("param", "value_per_site", sweep.param, sweep.energy);
      out.results = {{"samples", sweep.param.size()}};
      if (c.command == Command::kKinks) {
        const std::vector<double>& e = sweep.energy;
        nlohmann::json arr = nlohmann::json::array();
        for (std::size_t idx : detect_kinks(e, c.kink_threshold)) {
          double mag = std::abs(e[idx + 1] - 2.0 * e[idx] + e[idx - 1]);
          arr.push_back({{"index", idx}, {"param", sweep.param[idx]}, {"magnitude", mag}});
        }
        out.results["kinks"] = arr;
      }
      break;
    }
    case Command::kPower: {
      MaxPower mp = max_power(make_spec(base, quenched, kInf), grid, thermal, opt);
      out.csv_name = "power.csv";
      out.csv_content = csv::two_columns("tau_star", "p_max", {mp.tau}, {mp.power});
      out.results = {{"tau_star", mp.tau}, {"p_max", mp.power}};
      break;
    }
    case Command::kScaling: {
      PowerScaling ps =
          power_scaling(make_spec(base, quenched, kInf), c.scaling_n_list, thermal, opt);
      std::vector<double> per_site(ps.n.size());
      for (std::size_t i = 0; i < ps.n.size(); ++i) per_site[i] = ps.total_power[i] / ps.n[i];
      out.csv_name = "scaling.csv";
      out.csv_content = csv::two_columns("N", "p_max", ps.n, per_site);
      out.results = {{"fit",
                      {{"slope", ps.fit.slope},
                       {"intercept", ps.fit.intercept},
                       {"max_residual", ps.fit.max_residual},
                       {"r_squared", ps.fit.r_squared}}}};
      break;
    }
    case Command::kRecurrence: {
      RecurrenceReport rep = recurrence_profile(
          make_spec(base, quenched, kInf), c.grid_modes, thermal, c.recurrence_tau_max,
          c.recurrence_dt, c.recurrence_window, c.recurrence_onset_factor, opt);
      ModelT initial = build(base);
      BzGrid rg = BzGrid::finite(static_cast<int>(c.grid_modes));
      double capacity = 0.0;
      for (int j = 0; j < rg.modes(); ++j) capacity += 2.0 * initial(rg.momentum(j)).root();
      capacity /= static_cast<double>(rg.modes());
      out.csv_name = "curve.csv";
      out.csv_content = csv::two_columns("tau", "energy_per_site", rep.curve.tau,
                                         rep.curve.energy);
      out.results = {{"plateau_value", rep.plateau_value},
                     {"plateau_variance", rep.plateau_variance},
                     {"plateau_tau", rep.curve.tau[rep.plateau_begin]},
                     {"e_max", rep.e_max},
                     {"tau_at_max", rep.tau_at_max},
                     {"capacity", capacity}};
      out.results["onset_tau"] =
          rep.onset_tau ? nlohmann::json(*rep.onset_tau) : nlohmann::json(nullptr);
      break;
    }
  }
  return out;
}

}  // namespace

RunOutputs run(const RunConfig& config, const std::string& out_dir, int workers,
               std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  int resolved = resolve_workers(workers);

  CommandOutput cmd;
  if (config.model == ModelKind::kSsh) {
    cmd = execute(config, &build_dvec, resolved);
  } else {
    cmd = execute(config, &build_nambu, resolved);
  }

  std::filesystem::path dir(out_dir.empty() ? config.output_dir : out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
  std::string csv_path = (dir / cmd.csv_name).string();
  csv::write_file(csv_path, cmd.csv_content);

  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  nlohmann::json manifest;
  manifest["tool"] = "quenchbat";
  manifest["version"] = kVersion;
  manifest["command"] = command_str(config.command);
  manifest["kernel"] = kernels::active_kernels().name;
  manifest["workers"] = resolved;
  manifest["seed"] = seed;
  manifest["grid"] = config.finite_grid
                         ? (config.integer_offset ? "integer" : "half_integer")
                         : "thermodynamic";
  manifest["wall_time_s"] = wall;
  manifest["outputs"] = nlohmann::json::array({cmd.csv_name});
  manifest["results"] = cmd.results;
  manifest["config_ini"] = canonical_ini(config);

  std::string manifest_path = (dir / "manifest.json").string();
  csv::write_file(manifest_path, manifest.dump(2) + "\n");

  RunOutputs outs;
  outs.files.push_back(csv_path);
  outs.files.push_back(manifest_path);
  return outs;
}

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Stored energy in double-quenched free-fermion chains"};
  std::string config_path;
  std::string out_dir;
  int workers = 0;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "Run configuration (INI)")->required();
  app.add_option("--out", out_dir, "Output directory (overrides [output] dir)");
  app.add_option("--workers", workers, "Worker threads (0 = auto)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", seed, "Seed recorded in the manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    RunConfig config = load_config(config_path);
    RunOutputs outs = run(config, out_dir, workers, seed);
    for (const auto& f : outs.files) std::cout << f << '\n';
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

}  // namespace quenchbat::cli
